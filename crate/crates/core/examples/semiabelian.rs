//! Semiabelian verdicts with chains that can be re-validated.

use wreathlab::expr::parse_group;
use wreathlab::invariants::{is_semiabelian, validate_chain};
use wreathlab::Limits;

fn main() -> wreathlab::Result<()> {
    let limits = Limits::default();
    for src in ["C2 * C4", "S3", "Q8", "D5", "A4", "wr(C3,C2)"] {
        let g = parse_group(src, &limits)?;
        let cert = is_semiabelian(&g, &limits)?;
        validate_chain(&g, &cert)?;
        let steps: Vec<String> = cert
            .chain
            .iter()
            .map(|s| format!("{} = {}.{}", s.group_order, s.a_order, s.h_order))
            .collect();
        println!(
            "{src:>10}: {:?}, chain [{}]",
            cert.verdict,
            steps.join(", ")
        );
    }
    Ok(())
}
