//! The eight acceptance criteria, full suite, seed 7. One PASS/FAIL line per
//! criterion; the process fails if any criterion fails.

use std::process::ExitCode;

use qborel::acceptance::{run_suite, Suite};

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    if args.iter().any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    println!("running acceptance criteria (full suite, seed 7)");
    let reports = run_suite(Suite::Full, 7, |r| println!("{}", r.line()));
    let failed = reports.iter().filter(|r| !r.passed).count();
    println!("acceptance: {} passed, {} failed", reports.len() - failed, failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
