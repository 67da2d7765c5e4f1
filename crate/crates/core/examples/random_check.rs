//! Runs a few seeded agreement suites, as `pawngame check` does.

use pawngame::check::run_suite;

fn main() -> pawngame::Result<()> {
    for suite in ["alg1", "gog", "eta", "dfs", "gadgets"] {
        let rep = run_suite(suite, 1, 25)?;
        println!(
            "{suite}: {} cases, {} checks, {} mismatches",
            rep.cases,
            rep.checks,
            rep.mismatches.len()
        );
    }
    Ok(())
}
