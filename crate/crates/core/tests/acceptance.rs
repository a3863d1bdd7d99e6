//! One line per acceptance criterion; exits non-zero if any fails.
//! `ACCEPTANCE_FILTER` selects a group, id or number.

use illumination::scenarios::acceptance::{run_criteria, Suite};

fn main() {
    // `cargo test` passes harness flags such as `--nocapture`; a bare
    // argument is taken as a filter.
    let filter = std::env::var("ACCEPTANCE_FILTER")
        .ok()
        .or_else(|| std::env::args().skip(1).find(|a| !a.starts_with('-')));
    let suite = Suite::new();
    let mut failed = 0;
    let outcomes = run_criteria(&suite, filter.as_deref());
    for o in &outcomes {
        println!("{}", o.line());
        if !o.passed {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed", outcomes.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
