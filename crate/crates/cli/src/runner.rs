//! Deterministic parallel execution of verification tasks.
//!
//! Tasks are generated in a canonical order (rule id, then assignment,
//! lexicographically); workers run them in parallel with one table cache per
//! worker, and results are collected back in task order, so output never
//! depends on the parallelism degree. Only `elapsed_ms` is wall-clock.

use rayon::prelude::*;
use std::time::Instant;

use thetaquad_core::catalog::{Assignment, IdentityRule};
use thetaquad_core::verify::{
    admissible_assignments, verify_rule, Method, TableCache, VerifyReport,
};

/// One rule instance to verify.
#[derive(Clone)]
pub struct Task {
    pub rule: IdentityRule,
    pub assignment: Assignment,
    pub n_lo: u64,
    pub n_hi: u64,
    pub method: Method,
}

/// Expands a set of rules into tasks over every admissible assignment with
/// parameters bounded by `max_param`.
pub fn grid_tasks(
    rules: &[IdentityRule],
    max_param: u64,
    n_lo: u64,
    n_hi: u64,
    method: Method,
) -> Vec<Task> {
    let mut tasks = Vec::new();
    for rule in rules {
        for assignment in admissible_assignments(rule, max_param) {
            tasks.push(Task {
                rule: rule.clone(),
                assignment,
                n_lo,
                n_hi,
                method,
            });
        }
    }
    tasks
}

/// Runs tasks on `threads` workers and returns reports in task order.
/// Inadmissible tasks cannot arise from [`grid_tasks`]; if a caller builds
/// one by hand the error is surfaced in the report's skip reason.
pub fn run_tasks(tasks: Vec<Task>, threads: usize) -> Vec<VerifyReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| {
        tasks
            .into_par_iter()
            .map_init(TableCache::new, |cache, task| {
                let start = Instant::now();
                let mut report = match verify_rule(
                    &task.rule,
                    &task.assignment,
                    task.n_lo,
                    task.n_hi,
                    task.method,
                    cache,
                ) {
                    Ok(report) => report,
                    Err(err) => VerifyReport {
                        rule_id: task.rule.id.clone(),
                        params: task.assignment.pairs(),
                        equation: String::new(),
                        n_lo: task.n_lo,
                        n_hi: task.n_hi,
                        method: task.method,
                        status: thetaquad_core::verify::ReportStatus::Skipped(format!(
                            "not run: {err}"
                        )),
                        counterexamples: Vec::new(),
                        elapsed_ms: 0,
                    },
                };
                report.elapsed_ms = start.elapsed().as_millis() as u64;
                report
            })
            .collect()
    })
}
