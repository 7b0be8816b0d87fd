//! End-to-end acceptance run: one line per criterion, non-zero exit on any
//! failure.

use std::process::ExitCode;

use semigrid::selftest::{run_all, SelftestConfig};

fn main() -> ExitCode {
    let results = run_all(&SelftestConfig::full());
    for r in &results {
        println!("{r}");
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
