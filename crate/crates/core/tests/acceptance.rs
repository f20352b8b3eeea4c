//! Acceptance gate: every validation case must pass at its stated
//! tolerance, with the full Monte Carlo budget and the default seed.
//!
//! Run with `--nocapture` to see the per-case table on success; on
//! failure the table is printed automatically.

use sdqc_eval::validate::{run_all, ValidateOptions};

#[test]
fn default_budget_is_the_full_one() {
    let opts = ValidateOptions::default();
    assert_eq!(opts.mc_trials, 10_000_000);
    assert_eq!(opts.seed, 42);
}

#[test]
fn every_reference_value_reproduces() {
    let cases = run_all(&ValidateOptions::default()).expect("validation suite runs");
    assert!(!cases.is_empty());

    let mut failed = 0usize;
    for case in &cases {
        let status = if case.passed { "PASS" } else { "FAIL" };
        println!(
            "{status} {:<40} expected {} got {} ({})",
            case.id, case.expected, case.actual, case.tolerance
        );
        if !case.passed {
            failed += 1;
        }
    }
    println!("{} of {} cases passed", cases.len() - failed, cases.len());
    assert_eq!(failed, 0, "{failed} validation cases failed");
}

#[test]
fn seed_and_trials_are_honoured() {
    let a = run_all(&ValidateOptions {
        mc_trials: 100_000,
        seed: 7,
    })
    .unwrap();
    let b = run_all(&ValidateOptions {
        mc_trials: 100_000,
        seed: 7,
    })
    .unwrap();
    let mc_a = a.iter().find(|c| c.id == "loss.monte_carlo").unwrap();
    let mc_b = b.iter().find(|c| c.id == "loss.monte_carlo").unwrap();
    assert_eq!(mc_a.actual, mc_b.actual);
    assert!(mc_a.description.contains("100000"));
}
