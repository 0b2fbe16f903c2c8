//! Project a regular wreath product onto the product of the abelianizations.

use wreathlab::expr::parse_group;
use wreathlab::functorial::abelianization_projection;
use wreathlab::Limits;

fn main() -> wreathlab::Result<()> {
    let limits = Limits::default();
    for (h, g) in [
        ("C2", "C2"),
        ("C4", "C2"),
        ("C3", "C2"),
        ("S3", "C2"),
        ("A4", "C3"),
    ] {
        let (hg, gg) = (parse_group(h, &limits)?, parse_group(g, &limits)?);
        let p = abelianization_projection(&hg, &gg, &limits)?;
        println!(
            "{h} wr {g}: order {:>4}, image {}, kernel {:?}, kernel is the commutator subgroup: {}",
            p.wreath.order(),
            p.image_invariants,
            p.hom.kernel_order(),
            p.kernel_is_commutator
        );
    }
    Ok(())
}
