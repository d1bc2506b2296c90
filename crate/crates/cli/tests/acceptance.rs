//! One line per acceptance criterion, then a single verdict.

use ttdeform::numkit::Precision;
use ttdeform_cli::report::Environment;
use ttdeform_cli::suites::{criterion_suites, run_suite};

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for n in 1..=10 {
        let suites = criterion_suites(n).expect("criteria 1..=10 are mapped");
        let mut pass = true;
        let mut worst: Vec<String> = Vec::new();
        for s in suites {
            let report = run_suite(s, Environment::new(Precision::Binary64)).expect("suite exists");
            pass &= report.pass;
            for r in report.records.iter().filter(|r| !r.pass) {
                worst.push(format!("{} (residual {:e} vs {:e})", r.identity, r.residual, r.threshold));
            }
        }
        let verdict = if pass { "PASS" } else { "FAIL" };
        println!("criterion {n:>2} [{}]: {verdict}", suites.join(", "));
        for w in &worst {
            println!("    failed: {w}");
        }
        if !pass {
            failed.push(n);
        }
    }
    assert!(failed.is_empty(), "criteria failed: {failed:?}");
}
