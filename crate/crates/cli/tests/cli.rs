//! End-to-end behavior of the `thetaquad` binary.

use std::process::{Command, Output};

fn thetaquad(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thetaquad"))
        .args(args)
        .env_remove("THETAQUAD_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn count_prints_exact_value() {
    let out = thetaquad(&["count", "--form", "t(1,1,6,24)", "--n", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "32");
    let series = thetaquad(&[
        "count",
        "--form",
        "t(1,1,6,24)",
        "--n",
        "3",
        "--method",
        "series",
    ]);
    assert_eq!(stdout(&series).trim(), "32");
}

#[test]
fn count_negative_n_is_zero() {
    let out = thetaquad(&["count", "--form", "N(1,2,3)", "--n", "-5"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "0");
}

#[test]
fn series_dumps_csv() {
    let out = thetaquad(&["series", "--form", "N(1,1,1)", "--n-max", "9"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,count"));
    assert_eq!(lines.next(), Some("0,1"));
    assert_eq!(lines.next(), Some("1,6"));
    assert_eq!(text.lines().last(), Some("9,30"));
}

#[test]
fn verify_passes_with_exit_zero() {
    let out = thetaquad(&[
        "verify", "--rule", "thm2.1", "--a", "1", "--b", "1", "--n-max", "100",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(stdout(&out).contains("PASS"));
}

#[test]
fn verify_grid_sweeps_admissible_assignments() {
    let out = thetaquad(&[
        "verify",
        "--rule",
        "thm2.3",
        "--max-param",
        "3",
        "--n-max",
        "40",
    ]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out).lines().filter(|l| l.contains("PASS")).count(),
        4
    );
}

#[test]
fn unknown_rule_is_usage_error() {
    let out = thetaquad(&["verify", "--rule", "thm9.99", "--n-max", "10"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_bundle_is_usage_error() {
    let out = thetaquad(&["suite", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scan_emits_json_report() {
    let out = thetaquad(&[
        "scan", "--rule", "conj5.19", "--n-max", "200", "--format", "json",
    ]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    let reports = parsed.as_array().unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0]["rule_id"], "conj5.19");
    assert_eq!(reports[0]["status"], "pass");
    assert_eq!(reports[0]["counterexamples"], serde_json::json!([]));
}

#[test]
fn scan_csv_has_one_row_per_branch() {
    let out = thetaquad(&[
        "scan", "--rule", "conj5.1", "--n-max", "100", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("rule_id,params,n_lo,n_hi,method,status,counterexamples,elapsed_ms"));
    assert_eq!(
        text.lines().count(),
        4,
        "header plus three branches:\n{text}"
    );
}

fn normalize_elapsed(text: &str) -> String {
    // elapsed_ms is wall-clock, the only field allowed to differ
    let mut out = String::new();
    for line in text.lines() {
        if let Some(idx) = line.find("\"elapsed_ms\"") {
            out.push_str(&line[..idx]);
            out.push_str("\"elapsed_ms\": 0");
        } else {
            out.push_str(line);
        }
        out.push('\n');
    }
    out
}

#[test]
fn json_output_is_deterministic_across_thread_counts() {
    let one = thetaquad(&[
        "scan",
        "--rule",
        "all",
        "--n-max",
        "60",
        "--format",
        "json",
        "--threads",
        "1",
    ]);
    let many = thetaquad(&[
        "scan",
        "--rule",
        "all",
        "--n-max",
        "60",
        "--format",
        "json",
        "--threads",
        "8",
    ]);
    assert!(one.status.success() && many.status.success());
    assert_eq!(
        normalize_elapsed(&stdout(&one)),
        normalize_elapsed(&stdout(&many))
    );
}

#[test]
fn env_var_sets_parallelism() {
    let out = Command::new(env!("CARGO_BIN_EXE_thetaquad"))
        .args(["scan", "--rule", "conj5.20", "--n-max", "50"])
        .env("THETAQUAD_THREADS", "2")
        .output()
        .expect("binary runs");
    assert!(out.status.success());
}

#[test]
fn parse_validates_rule_files() {
    let dir = std::env::temp_dir().join("thetaquad-parse-test");
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.rules");
    std::fs::write(&good, "rule mine: t(1,1; n) == t(1,1; n)\n").unwrap();
    let out = thetaquad(&["parse", "--file", good.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("parsed 1 rules"));
    assert!(stdout(&out).contains("mine"));

    let bad = dir.join("bad.rules");
    std::fs::write(&bad, "rule broken: t(a,; n) ==\n").unwrap();
    let out = thetaquad(&["parse", "--file", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn user_rule_file_feeds_verify() {
    let dir = std::env::temp_dir().join("thetaquad-rules-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("user.rules");
    // a valid consequence of the catalog: the identity written directly
    std::fs::write(
        &path,
        "rule user.link: | n >= 1 :: t(1,1,6,24; 2n+1) == t(2,3,3,8; 2n+3)\n",
    )
    .unwrap();
    let out = thetaquad(&[
        "verify",
        "--rule",
        "user.link",
        "--n-max",
        "80",
        "--rules",
        path.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(stdout(&out).contains("PASS"));
}

#[test]
fn failing_verify_exits_one_with_counterexample() {
    let dir = std::env::temp_dir().join("thetaquad-fail-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("wrong.rules");
    std::fs::write(&path, "rule wrong: t(1,1; n) == 2 t(1,1; n)\n").unwrap();
    let out = thetaquad(&[
        "verify",
        "--rule",
        "wrong",
        "--n-max",
        "10",
        "--rules",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
    assert!(stdout(&out).contains("lhs="));
}

#[test]
fn suite_bundle_exit_code_is_conjunction() {
    let out = thetaquad(&["suite", "theta-identities"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("PASS"));
}

#[test]
fn inadmissible_explicit_assignment_is_a_config_error() {
    let out = thetaquad(&[
        "verify", "--rule", "thm2.1", "--a", "2", "--b", "1", "--n-max", "10",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("odd"));
}
