//! Check candidate generator images with the graph criterion.

use wreathlab::catalog::{cyclic, dihedral, symmetric3};
use wreathlab::hom::verify_homomorphism;
use wreathlab::{Limits, Perm};

fn main() -> wreathlab::Result<()> {
    let limits = Limits::default();
    let (c4, c2) = (cyclic(4)?, cyclic(2)?);
    let h = verify_homomorphism(&c4, &c2, c2.generators().to_vec(), &limits)?;
    println!(
        "C4 -> C2: verified {}, kernel {:?}",
        h.is_verified(),
        h.kernel_order()
    );

    let s3 = symmetric3();
    let bad = verify_homomorphism(&c4, &s3, vec![s3.generators()[0].clone()], &limits)?;
    println!(
        "C4 -> S3 sending the generator to a 3-cycle: verified {}",
        bad.is_verified()
    );

    let d4 = dihedral(4)?;
    let sign = |p: &Perm| {
        if p.order() == 2 {
            c2.generators()[0].clone()
        } else {
            c2.identity()
        }
    };
    let images: Vec<Perm> = d4.generators().iter().map(sign).collect();
    let h = verify_homomorphism(&d4, &c2, images, &limits)?;
    println!(
        "D4 -> C2 by generator parity: verified {}, surjective {}",
        h.is_verified(),
        h.is_surjective()
    );
    Ok(())
}
