//! `thetaquad` — exact counting and identity verification for diagonal
//! quadratic forms and triangular-number forms.
//!
//! Exit codes: 0 on success/pass, 1 when any check found a counterexample,
//! 2 on usage or configuration errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use thetaquad_cli::output::{any_failed, render};
use thetaquad_cli::runner::{grid_tasks, run_tasks, Task};
use thetaquad_cli::suites::{run_bundle, BUNDLES};
use thetaquad_cli::{parse_form, resolve_threads};
use thetaquad_core::catalog::{
    builtin_catalog, parse_rules, Assignment, IdentityRule, Param, Status,
};
use thetaquad_core::counting::{count_enum, count_series};
use thetaquad_core::verify::Method;

#[derive(Parser)]
#[command(
    name = "thetaquad",
    version,
    about = "Exact representation counts and identity verification for quadratic and triangular-number forms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one count, e.g. `count --form "t(1,1,6,24)" --n 3`
    Count {
        /// Form in t(...)/N(...) notation
        #[arg(long)]
        form: String,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        /// Counting backend: enum or series
        #[arg(long, default_value = "enum")]
        method: String,
    },
    /// Dump the count table for a form as CSV (columns n,count)
    Series {
        #[arg(long)]
        form: String,
        #[arg(long)]
        n_max: usize,
        /// Write to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a catalog rule over an n range
    Verify {
        /// Rule id, e.g. thm2.1
        #[arg(long)]
        rule: String,
        /// Value for parameter a (omit all four to sweep the grid)
        #[arg(long)]
        a: Option<u64>,
        #[arg(long)]
        b: Option<u64>,
        #[arg(long)]
        c: Option<u64>,
        #[arg(long)]
        d: Option<u64>,
        /// Grid bound when no explicit parameters are given
        #[arg(long, default_value_t = 5)]
        max_param: u64,
        #[arg(long, default_value_t = 0)]
        n_min: u64,
        #[arg(long, default_value_t = 100)]
        n_max: u64,
        #[arg(long, default_value = "series")]
        method: String,
        /// Output format: text, json or csv
        #[arg(long, default_value = "text")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
        /// Additional rule files to search, in the catalog grammar
        #[arg(long)]
        rules: Vec<PathBuf>,
    },
    /// Scan conjectures for counterexamples
    Scan {
        /// Conjecture id (conj5.19), branch prefix (conj5.2), or `all`
        #[arg(long, default_value = "all")]
        rule: String,
        #[arg(long, default_value_t = 1000)]
        n_max: u64,
        #[arg(long, default_value = "text")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        rules: Vec<PathBuf>,
    },
    /// Run a named verification bundle
    Suite {
        /// One of: theta-identities, ach-bch, theorems, closed-forms,
        /// conjectures, oracle, all
        bundle: Option<String>,
        /// Shorthand for the `all` bundle
        #[arg(long)]
        all: bool,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Validate a rule file and list the rules it defines
    Parse {
        #[arg(long)]
        file: PathBuf,
    },
}

fn parse_method(s: &str) -> Result<Method, String> {
    match s {
        "series" => Ok(Method::Series),
        "enum" => Ok(Method::Enum),
        other => Err(format!(
            "unknown method '{other}' (expected series or enum)"
        )),
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Builtin rules plus any user-supplied rule files.
fn load_rules(extra: &[PathBuf]) -> Result<Vec<IdentityRule>, String> {
    let mut rules = builtin_catalog();
    for path in extra {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let parsed = parse_rules(&text).map_err(|e| format!("{}:{e}", path.display()))?;
        rules.extend(parsed);
    }
    Ok(rules)
}

fn explicit_assignment(
    rule: &IdentityRule,
    values: [Option<u64>; 4],
) -> Result<Assignment, String> {
    let mut assignment = Assignment::new();
    for (p, v) in [Param::A, Param::B, Param::C, Param::D]
        .into_iter()
        .zip(values)
    {
        if let Some(v) = v {
            if !rule.params.contains(&p) {
                return Err(format!("rule {} takes no parameter {}", rule.id, p.name()));
            }
            assignment.set(p, v);
        }
    }
    for p in &rule.params {
        if assignment.get(*p).is_none() {
            return Err(format!("rule {} needs --{}", rule.id, p.name()));
        }
    }
    Ok(assignment)
}

fn run() -> Result<ExitCode, String> {
    match Cli::parse().command {
        Command::Count { form, n, method } => {
            let spec = parse_form(&form)?;
            let value = match parse_method(&method)? {
                Method::Enum => count_enum(&spec, n),
                Method::Series => {
                    if n < 0 {
                        0
                    } else {
                        count_series(&spec, n as usize)[n as usize]
                    }
                }
            };
            println!("{value}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Series { form, n_max, out } => {
            let spec = parse_form(&form)?;
            let table = count_series(&spec, n_max);
            let mut text = String::from("n,count\n");
            for (n, value) in table.iter().enumerate() {
                text.push_str(&format!("{n},{value}\n"));
            }
            emit(&text, out.as_ref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            rule,
            a,
            b,
            c,
            d,
            max_param,
            n_min,
            n_max,
            method,
            format,
            out,
            threads,
            rules,
        } => {
            let all_rules = load_rules(&rules)?;
            let target = all_rules
                .iter()
                .find(|r| r.id == rule)
                .ok_or_else(|| format!("unknown rule id '{rule}'"))?
                .clone();
            let method = parse_method(&method)?;
            let tasks = if [a, b, c, d].iter().any(Option::is_some) {
                let assignment = explicit_assignment(&target, [a, b, c, d])?;
                thetaquad_core::catalog::instantiate(&target, &assignment)
                    .map_err(|e| format!("rule {}: {e}", target.id))?;
                vec![Task {
                    rule: target,
                    assignment,
                    n_lo: n_min,
                    n_hi: n_max,
                    method,
                }]
            } else {
                grid_tasks(&[target], max_param, n_min, n_max, method)
            };
            if tasks.is_empty() {
                return Err(format!(
                    "no admissible parameter assignments for '{rule}' with parameters <= {max_param}"
                ));
            }
            let reports = run_tasks(tasks, resolve_threads(threads));
            emit(&render(&reports, &format)?, out.as_ref())?;
            Ok(if any_failed(&reports) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Scan {
            rule,
            n_max,
            format,
            out,
            threads,
            rules,
        } => {
            let all_rules = load_rules(&rules)?;
            let matching: Vec<IdentityRule> = all_rules
                .into_iter()
                .filter(|r| r.status == Status::Conjecture)
                .filter(|r| rule == "all" || r.id == rule || r.id.starts_with(&format!("{rule}.")))
                .collect();
            if matching.is_empty() {
                return Err(format!("no conjecture rules match '{rule}'"));
            }
            let tasks = grid_tasks(&matching, 1, 0, n_max, Method::Series);
            let reports = run_tasks(tasks, resolve_threads(threads));
            emit(&render(&reports, &format)?, out.as_ref())?;
            Ok(if any_failed(&reports) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Suite {
            bundle,
            all,
            threads,
        } => {
            let name = match (bundle, all) {
                (Some(name), false) => name,
                (None, true) => "all".to_string(),
                (Some(name), true) if name == "all" => name,
                (None, false) => {
                    return Err(format!(
                        "pick a bundle ({}) or pass --all",
                        BUNDLES.join(", ")
                    ))
                }
                (Some(_), true) => {
                    return Err("pass either a bundle name or --all, not both".to_string())
                }
            };
            let results = run_bundle(&name, resolve_threads(threads))?;
            let mut failed = false;
            for result in &results {
                println!("{}", result.line());
                failed |= !result.passed;
            }
            Ok(if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Parse { file } => {
            let text =
                std::fs::read_to_string(&file).map_err(|e| format!("{}: {e}", file.display()))?;
            let rules = parse_rules(&text).map_err(|e| format!("{}:{e}", file.display()))?;
            println!("parsed {} rules", rules.len());
            for rule in &rules {
                println!("{}", rule.id);
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
