//! Wreath length certificates and the wl = dg characterization.

use wreathlab::expr::parse_group;
use wreathlab::invariants::{check_wl_eq_dg_characterization, wl_bounds};
use wreathlab::Limits;

fn main() -> wreathlab::Result<()> {
    let limits = Limits::default();
    for src in [
        "C6",
        "S3",
        "D4",
        "Q8",
        "A4",
        "C2 * C2 * C2",
        "wr(C3,C2)",
        "Q8 * C3",
    ] {
        let g = parse_group(src, &limits)?;
        let cert = wl_bounds(&g, &limits)?;
        let ch = check_wl_eq_dg_characterization(&g, &cert, &limits)?;
        let witness = cert.upper.as_ref().map(|w| w.spec.to_string());
        println!(
            "{src:>12}: wl {:?} (lower {}, witness {}), dg {:?}, wl = dg {:?}, p-tower {:?}",
            cert.exact,
            cert.lower,
            witness.unwrap_or_else(|| "-".into()),
            cert.dg,
            ch.wl_equals_dg,
            ch.witness.map(|w| (w.prime, w.tower.spec.orders))
        );
    }
    Ok(())
}
