//! Acceptance suite: every global correctness criterion, exact equality
//! throughout, one printed pass/fail line per criterion (run with
//! `cargo test -p thetaquad-cli --test acceptance -- --nocapture` to see
//! them), plus falsification controls proving that broken inputs fail.

use thetaquad_cli::resolve_threads;
use thetaquad_cli::suites::{
    base_relations, closed_forms, conjecture_scan, oracle_equivalence, product_subsequences,
    square_corrected_identity, theorem_catalog, theta_identities, CriterionResult,
};
use thetaquad_core::catalog::{parse_rule, Assignment, Param};
use thetaquad_core::qseries::QSeries;
use thetaquad_core::verify::{verify_rule, Method, ReportStatus, TableCache};

fn check(result: CriterionResult) {
    println!("{}", result.line());
    assert!(result.passed, "{}", result.line());
}

fn threads() -> usize {
    resolve_threads(None)
}

#[test]
fn criterion_1_oracle_equivalence() {
    check(oracle_equivalence(threads()));
}

#[test]
fn criterion_2_base_relations() {
    check(base_relations(threads()));
}

#[test]
fn criterion_3_theta_identities() {
    check(theta_identities());
}

#[test]
fn criterion_4_theorem_catalog() {
    check(theorem_catalog(threads()));
}

#[test]
fn criterion_5_closed_forms() {
    check(closed_forms(threads()));
}

#[test]
fn criterion_6_square_corrected_identity() {
    check(square_corrected_identity());
}

#[test]
fn criterion_7_product_subsequences() {
    check(product_subsequences());
}

#[test]
fn criterion_8_conjecture_scan() {
    check(conjecture_scan(threads()));
}

// Criterion 9: falsification controls. Each deliberately broken input must
// fail with a counterexample at small n; a harness that cannot reject these
// would prove nothing by passing everything above.

#[test]
fn criterion_9a_perturbed_rule_fails() {
    let bad = parse_rule(
        "rule control: forall a b | odd(a), odd(b) :: t(a,2a,2a,2b; n) == 1/2 N(a,a,4a,2b; 8n+5a+2b+1)",
    )
    .unwrap();
    let mut cache = TableCache::new();
    let assignment = Assignment::with(&[(Param::A, 1), (Param::B, 1)]);
    let report = verify_rule(&bad, &assignment, 0, 100, Method::Series, &mut cache).unwrap();
    let first = match &report.status {
        ReportStatus::Fail => report.counterexamples[0].n,
        other => panic!("control did not fail: {other:?}"),
    };
    println!("PASS  falsification-control (perturbed rule): first counterexample at n={first}");
    assert!(first <= 10);
}

#[test]
fn criterion_9b_perturbed_series_identity_fails() {
    let trunc = 100;
    let psi = QSeries::psi(1, trunc);
    let lhs = psi.mul(&psi);
    let mut one_q = vec![0i64; trunc + 1];
    one_q[1] = 1;
    let rhs = QSeries::phi(1, trunc)
        .mul(&QSeries::psi(2, trunc))
        .add(&QSeries::from_coeffs(one_q));
    let mismatch = lhs
        .first_mismatch(&rhs, trunc)
        .expect("control must mismatch");
    println!(
        "PASS  falsification-control (perturbed series): mismatch at index {}",
        mismatch.index
    );
    assert_eq!(mismatch.index, 1);
}

#[test]
fn criterion_9c_sign_flipped_theta_identity_fails() {
    // the psi(q)psi(q^7) three-term split with its middle sign flipped
    let trunc = 120;
    let lhs = QSeries::psi(1, trunc).mul(&QSeries::psi(7, trunc));
    let rhs = QSeries::psi(8, trunc)
        .mul(&QSeries::phi(28, trunc))
        .sub(
            &QSeries::psi(2, trunc - 1)
                .mul(&QSeries::psi(14, trunc - 1))
                .shift(1),
        )
        .add(
            &QSeries::phi(4, trunc - 6)
                .mul(&QSeries::psi(56, trunc - 6))
                .shift(6),
        );
    let mismatch = lhs
        .first_mismatch(&rhs, trunc)
        .expect("control must mismatch");
    println!(
        "PASS  falsification-control (flipped theta identity): mismatch at index {}",
        mismatch.index
    );
    assert!(mismatch.index <= 20);
}

#[test]
fn criterion_9d_corrupted_conjecture_fails() {
    let bad = parse_rule(
        "#[status: conjecture]\nrule control: | n >= 1, n ≡ 0,1,5 (mod 7) :: t(1,2,2,7; n) == 2 N(1,2,2,7; 2n+5)",
    )
    .unwrap();
    let mut cache = TableCache::new();
    let report = verify_rule(&bad, &Assignment::new(), 0, 100, Method::Series, &mut cache).unwrap();
    let first = match &report.status {
        ReportStatus::Fail => report.counterexamples[0].n,
        other => panic!("control did not fail: {other:?}"),
    };
    println!(
        "PASS  falsification-control (corrupted conjecture): first counterexample at n={first}"
    );
    assert!(first <= 20);
}
