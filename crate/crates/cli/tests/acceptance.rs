//! Acceptance gate: every verification suite at its default grid, one line
//! per criterion.

use std::process::ExitCode;
use std::time::Duration;

use shv_cli::verify::{run_suite, Suite, SuiteOptions};

fn budget(suite: Suite) -> Option<Duration> {
    match suite {
        Suite::RoundtripLine => Some(Duration::from_secs(10)),
        Suite::TensorJordan => Some(Duration::from_secs(5)),
        _ => None,
    }
}

fn main() -> ExitCode {
    let opts = SuiteOptions::default();
    let mut failed = 0;
    for (i, suite) in Suite::ALL.into_iter().enumerate() {
        let report = run_suite(suite, &opts);
        let within = budget(suite).map_or(true, |b| report.wall_ms <= b.as_millis());
        let ok = report.passed() && within;
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {:>2} {:<15} {}  {} cases, {} failures, {} ms{}",
            i + 1,
            suite.name(),
            if ok { "PASS" } else { "FAIL" },
            report.cases,
            report.failures.len(),
            report.wall_ms,
            match budget(suite) {
                Some(b) if !within => format!(" (over the {} s budget)", b.as_secs()),
                Some(b) => format!(" (budget {} s)", b.as_secs()),
                None => String::new(),
            }
        );
        for f in report.failures.iter().take(5) {
            println!("    {}: {}", f.case, f.detail);
        }
    }
    println!("{} of {} criteria passed", Suite::ALL.len() - failed, Suite::ALL.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
