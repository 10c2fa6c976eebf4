//! Library side of the `thetaquad` command-line tool: parallel verification
//! runs, report rendering, and the named suite bundles. The binary in
//! `main.rs` is a thin argument layer over these functions, and the
//! acceptance test target drives the same bundles.

pub mod output;
pub mod runner;
pub mod suites;

use thetaquad_core::counting::{FormKind, FormSpec};

/// Parses a form given in the tool's notation: `t(1,1,6,24)` for a
/// triangular-number form, `N(1,2,3)` for a quadratic form.
pub fn parse_form(text: &str) -> Result<FormSpec, String> {
    let text = text.trim();
    let (kind, rest) = match text.split_at_checked(1) {
        Some(("t", rest)) => (FormKind::Triangular, rest),
        Some(("N", rest)) => (FormKind::Square, rest),
        _ => return Err(format!("form must start with 't' or 'N': {text}")),
    };
    let inner = rest
        .trim()
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| format!("form needs parenthesized coefficients: {text}"))?;
    let coeffs: Vec<u64> = inner
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<u64>()
                .map_err(|_| format!("bad coefficient '{}' in {text}", part.trim()))
        })
        .collect::<Result<_, _>>()?;
    if coeffs.is_empty() || coeffs.contains(&0) {
        return Err(format!("coefficients must be positive integers: {text}"));
    }
    Ok(FormSpec::new(&coeffs, kind))
}

/// Thread-count resolution: explicit flag, then the `THETAQUAD_THREADS`
/// environment variable, then the machine's available parallelism.
pub fn resolve_threads(flag: Option<usize>) -> usize {
    if let Some(n) = flag {
        return n.max(1);
    }
    if let Ok(value) = std::env::var("THETAQUAD_THREADS") {
        if let Ok(n) = value.parse::<usize>() {
            return n.max(1);
        }
    }
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_form_accepts_both_kinds() {
        let t = parse_form("t(1,1,6,24)").unwrap();
        assert_eq!(t.kind(), FormKind::Triangular);
        assert_eq!(t.coeffs(), &[1, 1, 6, 24]);
        let n = parse_form("N( 1, 2 ,3 )").unwrap();
        assert_eq!(n.kind(), FormKind::Square);
        assert_eq!(n.coeffs(), &[1, 2, 3]);
    }

    #[test]
    fn parse_form_rejects_garbage() {
        assert!(parse_form("x(1)").is_err());
        assert!(parse_form("t(1,0)").is_err());
        assert!(parse_form("t(1,2").is_err());
    }
}
