//! Generate groups from permutations and from the expression language.

use wreathlab::expr::parse_group;
use wreathlab::{FiniteGroup, Limits, Perm};

fn main() -> wreathlab::Result<()> {
    let limits = Limits::default();
    let r = Perm::from_images(&[1, 2, 3, 0])?;
    let s = Perm::from_images(&[0, 3, 2, 1])?;
    let d4 = FiniteGroup::generate(4, vec![r, s], "D4")?;
    println!(
        "{}: order {}, exponent {}",
        d4.label(),
        d4.order(),
        d4.exponent()
    );

    for src in ["S3", "C2 * C4", "Q8", "A4", "wr(C3,C2;desc)", "E"] {
        let g = parse_group(src, &limits)?;
        println!(
            "{src:>16}: order {:>3}, degree {:>2}, abelian {}",
            g.order(),
            g.degree(),
            g.is_abelian()
        );
    }
    match parse_group("C1", &limits) {
        Ok(_) => println!("C1 accepted"),
        Err(e) => println!("C1 rejected: {e}"),
    }
    Ok(())
}
