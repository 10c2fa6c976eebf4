//! Report rendering: stable JSON, CSV, and paper-notation text.
//!
//! JSON field names and ordering are fixed (`rule_id`, `params`, `n_lo`,
//! `n_hi`, `method`, `status`, `counterexamples`, `elapsed_ms`, plus
//! `reason` on skipped reports); counterexamples are sorted by `n` at the
//! source, so identical inputs render identically apart from the measured
//! `elapsed_ms`.

use serde::Serialize;
use thetaquad_core::verify::{ReportStatus, VerifyReport};

#[derive(Serialize)]
struct CounterexampleJson {
    n: u64,
    lhs: i64,
    rhs: i64,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    rule_id: &'a str,
    params: serde_json::Map<String, serde_json::Value>,
    n_lo: u64,
    n_hi: u64,
    method: &'a str,
    status: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<&'a str>,
    counterexamples: Vec<CounterexampleJson>,
    elapsed_ms: u64,
}

fn to_json_struct(report: &VerifyReport) -> ReportJson<'_> {
    let mut params = serde_json::Map::new();
    for (p, v) in &report.params {
        params.insert(p.name().to_string(), serde_json::Value::from(*v));
    }
    let (status, reason) = match &report.status {
        ReportStatus::Pass => ("pass", None),
        ReportStatus::Fail => ("fail", None),
        ReportStatus::Skipped(reason) => ("skipped", Some(reason.as_str())),
    };
    ReportJson {
        rule_id: &report.rule_id,
        params,
        n_lo: report.n_lo,
        n_hi: report.n_hi,
        method: report.method.name(),
        status,
        reason,
        counterexamples: report
            .counterexamples
            .iter()
            .map(|c| CounterexampleJson {
                n: c.n,
                lhs: c.lhs,
                rhs: c.rhs,
            })
            .collect(),
        elapsed_ms: report.elapsed_ms,
    }
}

/// JSON array of reports, pretty-printed, trailing newline.
pub fn to_json(reports: &[VerifyReport]) -> String {
    let rows: Vec<ReportJson> = reports.iter().map(to_json_struct).collect();
    let mut out = serde_json::to_string_pretty(&rows).expect("reports serialize");
    out.push('\n');
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn params_text(report: &VerifyReport) -> String {
    report
        .params
        .iter()
        .map(|(p, v)| format!("{}={v}", p.name()))
        .collect::<Vec<_>>()
        .join(" ")
}

/// CSV with one row per rule instance.
pub fn to_csv(reports: &[VerifyReport]) -> String {
    let mut out =
        String::from("rule_id,params,n_lo,n_hi,method,status,counterexamples,elapsed_ms\n");
    for report in reports {
        let status = match &report.status {
            ReportStatus::Pass => "pass".to_string(),
            ReportStatus::Fail => "fail".to_string(),
            ReportStatus::Skipped(reason) => format!("skipped: {reason}"),
        };
        let cxs = report
            .counterexamples
            .iter()
            .map(|c| format!("n={} lhs={} rhs={}", c.n, c.lhs, c.rhs))
            .collect::<Vec<_>>()
            .join("; ");
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            csv_field(&report.rule_id),
            csv_field(&params_text(report)),
            report.n_lo,
            report.n_hi,
            report.method.name(),
            csv_field(&status),
            csv_field(&cxs),
            report.elapsed_ms
        ));
    }
    out
}

/// Human-readable lines in the notation used throughout: one line per
/// instance, counterexamples indented beneath failing ones.
pub fn to_text(reports: &[VerifyReport]) -> String {
    let mut out = String::new();
    for report in reports {
        let params = params_text(report);
        let params = if params.is_empty() {
            String::new()
        } else {
            format!(" [{params}]")
        };
        let status = match &report.status {
            ReportStatus::Pass => "PASS".to_string(),
            ReportStatus::Fail => "FAIL".to_string(),
            ReportStatus::Skipped(reason) => format!("SKIP ({reason})"),
        };
        out.push_str(&format!(
            "{}{params}  n={}..{}  {}  {status}  ({} ms)\n",
            report.rule_id,
            report.n_lo,
            report.n_hi,
            report.method.name(),
            report.elapsed_ms
        ));
        if !report.equation.is_empty() {
            out.push_str(&format!("    {}\n", report.equation));
        }
        for c in &report.counterexamples {
            out.push_str(&format!("    n={}: lhs={} rhs={}\n", c.n, c.lhs, c.rhs));
        }
    }
    out
}

/// Renders in the requested format: `json`, `csv` or `text`.
pub fn render(reports: &[VerifyReport], format: &str) -> Result<String, String> {
    match format {
        "json" => Ok(to_json(reports)),
        "csv" => Ok(to_csv(reports)),
        "text" => Ok(to_text(reports)),
        other => Err(format!(
            "unknown format '{other}' (expected text, json or csv)"
        )),
    }
}

/// True when any report found a counterexample.
pub fn any_failed(reports: &[VerifyReport]) -> bool {
    reports
        .iter()
        .any(|r| matches!(r.status, ReportStatus::Fail))
}

#[cfg(test)]
mod tests {
    use super::*;
    use thetaquad_core::catalog::Param;
    use thetaquad_core::verify::{Counterexample, Method};

    fn sample_report() -> VerifyReport {
        VerifyReport {
            rule_id: "thm2.1".to_string(),
            params: vec![(Param::A, 1), (Param::B, 3)],
            equation: "t(1,2,2,6; n) == 1/2 N(1,1,4,6; 8n+11)".to_string(),
            n_lo: 0,
            n_hi: 100,
            method: Method::Series,
            status: ReportStatus::Fail,
            counterexamples: vec![Counterexample {
                n: 5,
                lhs: 40,
                rhs: 44,
            }],
            elapsed_ms: 7,
        }
    }

    #[test]
    fn json_rendering_is_pinned() {
        let expected = r#"[
  {
    "rule_id": "thm2.1",
    "params": {
      "a": 1,
      "b": 3
    },
    "n_lo": 0,
    "n_hi": 100,
    "method": "series",
    "status": "fail",
    "counterexamples": [
      {
        "n": 5,
        "lhs": 40,
        "rhs": 44
      }
    ],
    "elapsed_ms": 7
  }
]
"#;
        assert_eq!(to_json(&[sample_report()]), expected);
    }

    #[test]
    fn csv_rendering_is_pinned() {
        let expected = "rule_id,params,n_lo,n_hi,method,status,counterexamples,elapsed_ms\n\
                        thm2.1,a=1 b=3,0,100,series,fail,n=5 lhs=40 rhs=44,7\n";
        assert_eq!(to_csv(&[sample_report()]), expected);
    }

    #[test]
    fn skipped_reports_carry_reason_in_json() {
        let mut report = sample_report();
        report.status = ReportStatus::Skipped("no admissible n".to_string());
        report.counterexamples.clear();
        let json = to_json(&[report]);
        assert!(json.contains("\"status\": \"skipped\""));
        assert!(json.contains("\"reason\": \"no admissible n\""));
    }
}
