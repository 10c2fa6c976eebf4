//! Fast sanity pass over every theorem-status rule: small parameter grid,
//! short n range, series method. The full acceptance grid lives in the CLI
//! crate; this catches a mis-transcribed rule immediately.

use thetaquad_core::catalog::{builtin_catalog, Status};
use thetaquad_core::verify::{
    admissible_assignments, verify_rule, Method, ReportStatus, TableCache,
};

#[test]
fn every_theorem_rule_holds_on_small_grid() {
    let mut cache = TableCache::new();
    let mut failures = Vec::new();
    let mut checked = 0usize;
    for rule in builtin_catalog() {
        if rule.status != Status::Theorem {
            continue;
        }
        for assignment in admissible_assignments(&rule, 3) {
            let report =
                verify_rule(&rule, &assignment, 0, 48, Method::Series, &mut cache).unwrap();
            checked += 1;
            if let ReportStatus::Fail = report.status {
                failures.push(format!(
                    "{} [{}]: {:?}",
                    rule.id,
                    assignment,
                    &report.counterexamples[..report.counterexamples.len().min(3)]
                ));
            }
        }
    }
    assert!(
        checked > 200,
        "grid should cover many instances, got {checked}"
    );
    assert!(
        failures.is_empty(),
        "failing rules:\n{}",
        failures.join("\n")
    );
}
