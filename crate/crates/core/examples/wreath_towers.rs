//! Build descending and ascending cyclic towers and check their derived length.

use wreathlab::subgroup::derived_length;
use wreathlab::wreath::{build_tower, TowerSpec};
use wreathlab::Limits;

fn main() -> wreathlab::Result<()> {
    let limits = Limits::default();
    for orders in [
        &[2u64, 2][..],
        &[3, 2],
        &[2, 3],
        &[4, 2],
        &[2, 2, 2],
        &[3, 2, 2],
    ] {
        for spec in [TowerSpec::descending(orders), TowerSpec::ascending(orders)] {
            let t = build_tower(&spec, &limits)?;
            let dl = derived_length(t.carrier(), &limits)?;
            println!(
                "{spec:<22} order {:>6} degree {:>3} dl {dl}",
                t.carrier().order(),
                t.carrier().degree()
            );
        }
    }
    let huge = TowerSpec::descending(&[2, 2, 2, 2]);
    println!("{huge}: projected order {:?}", huge.projected_order());
    if let Err(e) = build_tower(&huge, &limits) {
        println!("refused before allocation: {e}");
    }
    Ok(())
}
