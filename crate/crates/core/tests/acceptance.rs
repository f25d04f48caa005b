//! End-to-end acceptance run: every criterion over every preset it applies
//! to, at horizon 40 and a scan budget of 100000 letters. Prints one line
//! per criterion and exits nonzero if any fails.

use std::process::ExitCode;

use subshift::verify::{acceptance, VerifyConfig};

fn main() -> ExitCode {
    let config = VerifyConfig::default();
    assert_eq!((config.horizon, config.scan_budget), (40, 100_000));
    let results = acceptance(&config).expect("acceptance run");
    assert_eq!(results.len(), 10);
    println!("\nrunning acceptance criteria");
    for r in &results {
        println!(
            "criterion {:>2} {}: {}",
            r.id,
            if r.passed { "PASS" } else { "FAIL" },
            r.name
        );
    }
    let failed: Vec<_> = results.iter().filter(|r| !r.passed).collect();
    for r in &failed {
        println!("criterion {} measured: {}", r.id, r.measured);
    }
    println!("acceptance: {} passed, {} failed\n", results.len() - failed.len(), failed.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
