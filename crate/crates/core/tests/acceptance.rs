//! Runs outside libtest so the per-criterion lines always reach the console.

use std::process::ExitCode;

use ird_core::acceptance::{run_suite, SuiteOptions};

fn main() -> ExitCode {
    let outcomes = run_suite(&SuiteOptions::default());
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed = outcomes.iter().filter(|o| !o.passed && o.known_gap().is_none()).count();
    println!(
        "acceptance: {} of {} criteria pass, {failed} unexpected failures",
        outcomes.iter().filter(|o| o.passed).count(),
        outcomes.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
