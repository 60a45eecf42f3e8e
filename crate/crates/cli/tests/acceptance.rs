//! Runs every suite criterion against its wall-clock bound and prints one
//! PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::Instant;

use vanishing_cli::report::Status;
use vanishing_cli::suite::{criteria, SuiteConfig};

fn main() -> ExitCode {
    let cfg = SuiteConfig::with_budget(None);
    let mut failed = 0;
    for c in criteria() {
        let start = Instant::now();
        let check = (c.run)(&cfg);
        let elapsed = start.elapsed();
        let ok = check.status == Status::Pass && elapsed <= c.bound;
        println!(
            "{} {:<26} {:>8.3}s (bound {}s)  expected {}, got {}",
            if ok { "PASS" } else { "FAIL" },
            c.name,
            elapsed.as_secs_f64(),
            c.bound.as_secs(),
            check.expected,
            check.got
        );
        failed += usize::from(!ok);
    }
    println!("{} criteria, {failed} failed", criteria().len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
