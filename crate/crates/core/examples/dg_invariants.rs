//! dg, dg_p, abelianization invariants and derived length.

use wreathlab::abelian::{abelianization_invariants, dg, dg_brute, dg_p};
use wreathlab::arith::prime_divisors;
use wreathlab::expr::parse_group;
use wreathlab::subgroup::derived_length;
use wreathlab::Limits;

fn main() -> wreathlab::Result<()> {
    let limits = Limits::default();
    for src in [
        "C12",
        "C2 * C2 * C2",
        "S3",
        "D4",
        "Q8",
        "A4",
        "wr(C2,C2;desc)",
        "wr(S3,C2)",
    ] {
        let g = parse_group(src, &limits)?;
        let per_prime: Vec<String> = prime_divisors(g.order() as u64)
            .into_iter()
            .map(|p| dg_p(&g, p, &limits).map(|d| format!("{p}:{d}")))
            .collect::<wreathlab::Result<_>>()?;
        println!(
            "{src:>16}: ab {}, dg {} (by normal generation {}), dg_p {}, dl {}",
            abelianization_invariants(&g, &limits)?,
            dg(&g, &limits)?,
            dg_brute(&g, &limits)?,
            per_prime.join(" "),
            derived_length(&g, &limits)?
        );
    }
    Ok(())
}
