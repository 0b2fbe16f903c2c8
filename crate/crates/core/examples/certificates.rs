//! JSON certificates for a homomorphism and a wreath length computation.

use wreathlab::catalog::{cyclic, symmetric3};
use wreathlab::cert::{envelope, to_json, HomCertificate};
use wreathlab::hom::verify_homomorphism;
use wreathlab::invariants::wl_bounds;
use wreathlab::Limits;

fn main() -> wreathlab::Result<()> {
    let limits = Limits::default();
    let (c6, c3) = (cyclic(6)?, cyclic(3)?);
    let h = verify_homomorphism(&c6, &c3, c3.generators().to_vec(), &limits)?;
    print!(
        "{}",
        to_json(&envelope("homomorphism", 0, HomCertificate::from(&h)))
    );
    print!(
        "{}",
        to_json(&envelope(
            "wreath-length",
            0,
            wl_bounds(&symmetric3(), &limits)?
        ))
    );
    Ok(())
}
