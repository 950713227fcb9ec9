//! One line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;

use laplaceforge::validation::{default_sampler_sweep_summary, run_criterion, ALL_CRITERIA};

fn main() -> ExitCode {
    let mut failed = Vec::new();
    for id in ALL_CRITERIA {
        let r = run_criterion(id).expect("known criterion");
        println!("{r}");
        if !r.passed {
            failed.push(id);
        }
    }
    match default_sampler_sweep_summary() {
        Ok(s) => println!("info: {s}"),
        Err(e) => println!("info: default sampler sweep failed: {e}"),
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", ALL_CRITERIA.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
