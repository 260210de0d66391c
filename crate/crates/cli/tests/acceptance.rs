//! Acceptance gate: one test per verification criterion. Every check the
//! suites run must pass, at the stated exactness and within the stated time
//! budgets. Each test prints a single pass/fail line (visible with
//! `cargo test -p engel-cli --test acceptance -- --nocapture`).

use engel_cli::report::SuiteReport;
use engel_cli::suites::{oracle_group_count, run_suite, Suite};
use std::time::{Duration, Instant};

fn run(suite: Suite, filter: &str) -> (SuiteReport, Duration) {
    let t0 = Instant::now();
    let report = run_suite(suite, filter, None).expect("suite runs");
    (report, t0.elapsed())
}

fn gate(criterion: &str, report: &SuiteReport, elapsed: Duration, budget: Duration) {
    let ok = report.pass && elapsed <= budget;
    println!(
        "{criterion}: {} — {} checks in {:.1?} (budget {:.0?})",
        if ok { "PASS" } else { "FAIL" },
        report.checks.len(),
        elapsed,
        budget
    );
    for c in &report.checks {
        assert!(
            c.pass,
            "{criterion}: check `{}` failed (expected {}, observed {})",
            c.name, c.expected, c.observed
        );
    }
    assert!(!report.checks.is_empty(), "{criterion}: no checks executed");
    assert!(
        elapsed <= budget,
        "{criterion}: over budget ({elapsed:?} > {budget:?})"
    );
}

#[test]
fn criterion_01_psl2_7_counts() {
    let (report, elapsed) = run(Suite::Paper, "psl27");
    assert_eq!(report.checks.len(), 3);
    gate("criterion 1 (PSL2(7): 37 / 9 / SC)", &report, elapsed, Duration::from_secs(5));
}

#[test]
fn criterion_02_psl3_4_counts() {
    let (report, elapsed) = run(Suite::Paper, "psl34");
    assert_eq!(report.checks.len(), 3);
    gate(
        "criterion 2 (PSL3(4): 3257 / 961 / SC)",
        &report,
        elapsed,
        Duration::from_secs(600),
    );
}

#[test]
fn criterion_03_psu4_2_counts() {
    let (report, elapsed) = run(Suite::Paper, "psu42");
    assert_eq!(report.checks.len(), 3);
    gate(
        "criterion 3 (PSU4(2): 1297 / SC)",
        &report,
        elapsed,
        Duration::from_secs(600),
    );
}

#[test]
fn criterion_04_threshold_matrix() {
    let (report, elapsed) = run(Suite::Paper, "tired.");
    // 11 values of q with Gamma_2 and Gamma_3, plus the q = 13 ladder and
    // its sink argument
    assert_eq!(report.checks.len(), 11 * 2 + 3 + 1);
    gate(
        "criterion 4 (PSL2(q) threshold matrix)",
        &report,
        elapsed,
        Duration::from_secs(900),
    );
}

#[test]
fn criterion_05_psl2_even_cumulative() {
    let (report, elapsed) = run(Suite::Paper, "psl2even");
    assert_eq!(report.checks.len(), 6);
    gate(
        "criterion 5 (PSL2(even): not SC, weak diameter <= 10)",
        &report,
        elapsed,
        Duration::from_secs(300),
    );
}

#[test]
fn criterion_06_suzuki_certificates() {
    let (report, elapsed) = run(Suite::Paper, "sz8");
    // sz8.nc-certificate, sz8.gamma-not-sc, autsz8.nc-certificate
    assert_eq!(report.checks.len(), 3);
    gate(
        "criterion 6 (Sz(8) and Aut(Sz(8)) disconnection)",
        &report,
        elapsed,
        Duration::from_secs(1800),
    );
}

#[test]
fn criterion_07_pgl2_and_extensions() {
    let (report, elapsed) = run(Suite::Paper, "pgl2.");
    assert_eq!(report.checks.len(), 3);
    gate("criterion 7a (PGL2(q) Gamma_2)", &report, elapsed, Duration::from_secs(300));
    let (report2, elapsed2) = run(Suite::Paper, "psigmal29");
    assert_eq!(report2.checks.len(), 1);
    gate(
        "criterion 7b (PSigmaL2(9) Gamma_2)",
        &report2,
        elapsed2,
        Duration::from_secs(300),
    );
}

#[test]
fn criterion_08_witness_suite() {
    let (report, elapsed) = run(Suite::Witness, "");
    assert!(report.checks.len() >= 35);
    gate("criterion 8 (witness suite)", &report, elapsed, Duration::from_secs(600));
}

#[test]
fn criterion_09_lemma3_iff() {
    let (report, elapsed) = run(Suite::Witness, "lemma3");
    assert_eq!(report.checks.len(), 4);
    gate(
        "criterion 9 (2-element commutator orders)",
        &report,
        elapsed,
        Duration::from_secs(300),
    );
}

#[test]
fn criterion_10_delta_suite() {
    let (report, elapsed) = run(Suite::Delta, "");
    assert!(report.checks.len() >= 5);
    gate("criterion 10 (delta instances)", &report, elapsed, Duration::from_secs(600));
}

#[test]
fn criterion_11_property_suites() {
    let (report, elapsed) = run(Suite::Properties, "prop.");
    assert!(report.checks.len() >= 5);
    gate("criterion 11 (property suites)", &report, elapsed, Duration::from_secs(600));
}

#[test]
fn criterion_12_oracle_cross_validation() {
    assert!(
        oracle_group_count() >= 20,
        "the oracle suite must cover at least 20 groups"
    );
    let (report, elapsed) = run(Suite::Properties, "oracle.");
    assert!(report.checks.len() >= 20);
    gate(
        "criterion 12 (oracle cross-validation)",
        &report,
        elapsed,
        Duration::from_secs(1800),
    );
}
