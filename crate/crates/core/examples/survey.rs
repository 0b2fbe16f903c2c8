//! Invariant table for the catalog, as TSV.

use wreathlab::invariants::{survey_catalog, to_tsv};
use wreathlab::Limits;

fn main() -> wreathlab::Result<()> {
    let max_order = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(12);
    let rows = survey_catalog(max_order, &Limits::default())?;
    print!("{}", to_tsv(&rows));
    Ok(())
}
