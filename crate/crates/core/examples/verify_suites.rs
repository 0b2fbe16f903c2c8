//! Run a property suite with tightened caps and count skipped checks.

use wreathlab::verify::{run_suite, Status, Suite};
use wreathlab::Limits;

fn main() {
    for cap in [1 << 20, 4096] {
        let limits = Limits {
            element_cap: cap,
            ..Limits::default()
        };
        let rep = run_suite(Suite::Towers, &limits, 1);
        println!(
            "element cap {cap}: {} passed, {} failed, {} skipped",
            rep.passed, rep.failed, rep.skipped
        );
        for c in rep
            .checks
            .iter()
            .filter(|c| c.status == Status::Skip)
            .take(3)
        {
            println!("  skipped {}: {}", c.name, c.detail);
        }
    }
}
