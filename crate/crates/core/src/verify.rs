//! The verification engine.
//!
//! [`verify_rule`] checks one catalog rule for one parameter assignment over
//! an `n` range, by either of two independent methods: `Series` reads every
//! count off a theta-product table, `Enum` counts lattice points. Rational
//! rule coefficients are cross-multiplied so every comparison is an exact
//! integer equality. A failing `n` is re-verified by pointwise enumeration
//! before it is reported — a false counterexample claim would be worse than
//! a missed one.
//!
//! The module also carries the pieces that do not fit the linear rule shape:
//! the closed-form evaluators for `t(1,1,6,24)`, `t(2,3,3,8)` and
//! `t(1,1,6,8)` ([`ClosedForms`]), the square-corrected three-variable check
//! ([`thm2_7_check`]), the two series-level product identities of
//! [`lemma5_1_check`], the theta-function identity suite, and the conjecture
//! scanner ([`scan_conjecture`]).

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::arith::{
    a_coeff_table, decomp23, g1, kronecker, perfect_sqrt, r3, sigma, twisted_divisor_sum,
};
use crate::catalog::{
    builtin_catalog, instantiate, Assignment, ConcreteRule, IdentityRule, InstantiateError, Param,
    Status,
};
use crate::counting::{count_enum, count_series, enum_table, FormSpec};
use crate::qseries::{Mismatch, QSeries};

/// Which counting backend a verification run uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Series,
    Enum,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Series => "series",
            Method::Enum => "enum",
        }
    }
}

/// Outcome of one rule instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReportStatus {
    Pass,
    Fail,
    /// No check ran; the reason is human-readable.
    Skipped(String),
}

/// One failing `n` with the exact (cross-multiplied) side values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub n: u64,
    pub lhs: i64,
    pub rhs: i64,
}

/// Result of verifying one rule instance over an `n` range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub rule_id: String,
    pub params: Vec<(Param, u64)>,
    /// The instantiated relation in counting notation, for reading reports
    /// alongside the catalog.
    pub equation: String,
    pub n_lo: u64,
    pub n_hi: u64,
    pub method: Method,
    pub status: ReportStatus,
    pub counterexamples: Vec<Counterexample>,
    /// Wall-clock duration, filled in by drivers that can measure time.
    pub elapsed_ms: u64,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        !matches!(self.status, ReportStatus::Fail)
    }
}

/// Why a verification request could not run at all.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyError {
    Inadmissible(InstantiateError),
    UnknownRule(String),
    ConditionViolated(String),
}

impl core::fmt::Display for VerifyError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            VerifyError::Inadmissible(e) => write!(f, "inadmissible assignment: {e}"),
            VerifyError::UnknownRule(id) => write!(f, "unknown rule id '{id}'"),
            VerifyError::ConditionViolated(msg) => write!(f, "condition violated: {msg}"),
        }
    }
}

impl From<InstantiateError> for VerifyError {
    fn from(e: InstantiateError) -> Self {
        VerifyError::Inadmissible(e)
    }
}

/// Bulk count tables keyed by canonical form and method. One table per
/// distinct product serves every rule, assignment and `n` that needs it.
#[derive(Default)]
pub struct TableCache {
    tables: BTreeMap<(FormSpec, bool), Vec<u64>>,
}

impl TableCache {
    pub fn new() -> Self {
        TableCache::default()
    }

    fn table(&mut self, spec: &FormSpec, min_len: usize, method: Method) -> &[u64] {
        let key = (spec.canonical(), matches!(method, Method::Series));
        let entry = self.tables.entry(key).or_default();
        if entry.len() < min_len {
            *entry = match method {
                Method::Series => count_series(spec, min_len - 1),
                Method::Enum => enum_table(spec, min_len - 1),
            };
        }
        entry
    }
}

/// Verifies `rule` under `assignment` for all admissible `n` in
/// `n_lo..=n_hi`. Parameter conditions are checked up front (an assignment
/// that violates them is an error, not a report); conditions on `n` simply
/// filter the range, and a range left empty is reported as skipped.
pub fn verify_rule(
    rule: &IdentityRule,
    assignment: &Assignment,
    n_lo: u64,
    n_hi: u64,
    method: Method,
    cache: &mut TableCache,
) -> Result<VerifyReport, VerifyError> {
    let concrete = instantiate(rule, assignment)?;
    Ok(verify_concrete(
        &concrete, assignment, n_lo, n_hi, method, cache,
    ))
}

fn side_value(
    side: &[(crate::catalog::Rational, crate::catalog::ConcreteTerm)],
    n: u64,
    denom_lcm: i64,
    mut count: impl FnMut(&crate::catalog::ConcreteTerm, i64) -> u64,
) -> i128 {
    side.iter()
        .map(|(rat, term)| {
            let arg = term.argument(n);
            let c = if arg < 0 { 0 } else { count(term, arg) };
            (denom_lcm / rat.den) as i128 * rat.num as i128 * c as i128
        })
        .sum()
}

/// Core checking loop over a concrete (parameter-free) rule instance.
pub fn verify_concrete(
    concrete: &ConcreteRule,
    assignment: &Assignment,
    n_lo: u64,
    n_hi: u64,
    method: Method,
    cache: &mut TableCache,
) -> VerifyReport {
    let admissible: Vec<u64> = (n_lo..=n_hi)
        .filter(|&n| concrete.residual.iter().all(|c| c.holds(n)))
        .collect();

    let mut report = VerifyReport {
        rule_id: concrete.id.clone(),
        params: assignment.pairs(),
        equation: concrete.equation(),
        n_lo,
        n_hi,
        method,
        status: ReportStatus::Pass,
        counterexamples: Vec::new(),
        elapsed_ms: 0,
    };

    let Some(&n_top) = admissible.last() else {
        report.status =
            ReportStatus::Skipped("no n in range satisfies the residual conditions".to_string());
        return report;
    };

    // warm the cache so each distinct form is tabulated exactly once
    for side in &concrete.sides {
        for (_, term) in side {
            let needed = term.argument(n_top).max(0) as usize + 1;
            cache.table(&term.spec, needed, method);
        }
    }

    for &n in &admissible {
        let values: Vec<i128> = concrete
            .sides
            .iter()
            .map(|side| {
                side_value(side, n, concrete.denom_lcm, |term, arg| {
                    cache.table(&term.spec, arg as usize + 1, method)[arg as usize]
                })
            })
            .collect();
        for pair in values.windows(2) {
            if pair[0] != pair[1] {
                record_counterexample(concrete, n, &mut report);
                break;
            }
        }
    }

    if !report.counterexamples.is_empty() {
        report.status = ReportStatus::Fail;
    }
    report
}

/// A mismatch seen through bulk tables is only reported after pointwise
/// enumeration reproduces it; disagreement between the two would mean the
/// engine itself is broken, and panics.
fn record_counterexample(concrete: &ConcreteRule, n: u64, report: &mut VerifyReport) {
    let values: Vec<i128> = concrete
        .sides
        .iter()
        .map(|side| {
            side_value(side, n, concrete.denom_lcm, |term, arg| {
                count_enum(&term.spec, arg)
            })
        })
        .collect();
    for pair in values.windows(2) {
        if pair[0] != pair[1] {
            report.counterexamples.push(Counterexample {
                n,
                lhs: i64::try_from(pair[0]).expect("side value fits i64"),
                rhs: i64::try_from(pair[1]).expect("side value fits i64"),
            });
            return;
        }
    }
    panic!(
        "rule {}: bulk tables disagree with enumeration at n={n}; table construction is buggy",
        concrete.id
    );
}

/// All assignments of `1..=max_param` to the rule's parameters that satisfy
/// its parameter conditions, in lexicographic order.
pub fn admissible_assignments(rule: &IdentityRule, max_param: u64) -> Vec<Assignment> {
    let k = rule.params.len();
    let mut out = Vec::new();
    let mut values = alloc::vec![1u64; k];
    loop {
        let mut assignment = Assignment::new();
        for (i, p) in rule.params.iter().enumerate() {
            assignment.set(*p, values[i]);
        }
        if instantiate(rule, &assignment).is_ok() {
            out.push(assignment);
        }
        // odometer increment
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if values[i] < max_param {
                values[i] += 1;
                for v in &mut values[i + 1..] {
                    *v = 1;
                }
                break;
            }
        }
        if k == 0 {
            return out;
        }
    }
}

/// Runs the scanner for a conjecture id (`conj5.19`), an id prefix covering
/// its branches (`conj5.2`), or `all`. Conjectures are concrete, so each
/// matching rule yields one report; a pass only ever means "verified up to
/// `n_max`".
pub fn scan_conjecture(
    id: &str,
    n_max: u64,
    cache: &mut TableCache,
) -> Result<Vec<VerifyReport>, VerifyError> {
    let catalog = builtin_catalog();
    let matching: Vec<&IdentityRule> = catalog
        .iter()
        .filter(|r| r.status == Status::Conjecture)
        .filter(|r| id == "all" || r.id == id || r.id.starts_with(&alloc::format!("{id}.")))
        .collect();
    if matching.is_empty() {
        return Err(VerifyError::UnknownRule(id.to_string()));
    }
    let mut reports = Vec::with_capacity(matching.len());
    for rule in matching {
        reports.push(verify_rule(
            rule,
            &Assignment::new(),
            0,
            n_max,
            Method::Series,
            cache,
        )?);
    }
    Ok(reports)
}

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

/// Which path produced a closed-form value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalSource {
    /// The divisor-sum formula for the argument's residue class.
    Formula,
    /// Direct enumeration; used for the few small arguments the formulas do
    /// not reach.
    Enumeration,
}

/// Evaluators for the three fully determined counts. The eta-type
/// coefficients `a(n)` are tabulated once at construction.
pub struct ClosedForms {
    a: Vec<i64>,
}

impl ClosedForms {
    /// Ready for arguments up to `n_max`.
    pub fn new(n_max: u64) -> Self {
        ClosedForms {
            a: a_coeff_table(n_max as usize + 8),
        }
    }

    fn a_at(&self, n: u64) -> i64 {
        self.a[n as usize]
    }

    /// `t(1,1,6,24; n)` for `n >= 1`.
    pub fn t_1_1_6_24(&self, n: u64) -> (u64, EvalSource) {
        assert!(n >= 1);
        match n % 4 {
            1 | 3 => {
                // n = 2m+1, m >= 1: 4(sigma(n1) - (-1)^m a(2m+5)), 2m+5 = 3^beta n1
                if n == 1 {
                    return enum_fallback(&[1, 1, 6, 24], n);
                }
                let m = (n - 1) / 2;
                let n1 = strip3(n + 4).1;
                let v = 4 * (sigma(n1) as i64 - sign_pow(m) * self.a_at(n + 4));
                formula(v)
            }
            0 => {
                // n = 4m: 2^(alpha+4) sigma(n1), m+1 = 2^alpha 3^beta n1
                let d = decomp23(n / 4 + 1);
                formula((1i64 << (d.alpha + 4)) * sigma(d.n1) as i64)
            }
            _ => {
                // n = 4m-2: 8(sigma(n1) - a(2m+1)), 2m+1 = (n+4)/2 = 3^beta n1
                let arg = (n + 4) / 2;
                let n1 = strip3(arg).1;
                formula(8 * (sigma(n1) as i64 - self.a_at(arg)))
            }
        }
    }

    /// `t(2,3,3,8; n)` for `n >= 1`.
    pub fn t_2_3_3_8(&self, n: u64) -> (u64, EvalSource) {
        assert!(n >= 1);
        match n % 4 {
            1 | 3 => {
                // n = 2m+3, m >= 1: 4(sigma(n1) - (-1)^m a(2m+5)), 2m+5 = 3^beta n1
                if n <= 3 {
                    return enum_fallback(&[2, 3, 3, 8], n);
                }
                let m = (n - 3) / 2;
                let n1 = strip3(n + 2).1;
                let v = 4 * (sigma(n1) as i64 - sign_pow(m) * self.a_at(n + 2));
                formula(v)
            }
            2 => {
                // n = 4m+2, m >= 1: 2^(alpha+4) sigma(n1), m+1 = 2^alpha 3^beta n1
                if n == 2 {
                    return enum_fallback(&[2, 3, 3, 8], n);
                }
                let d = decomp23((n + 2) / 4);
                formula((1i64 << (d.alpha + 4)) * sigma(d.n1) as i64)
            }
            _ => {
                // n = 4m: 8(sigma(n1) + a(2m+1)), 2m+1 = n/2 + 1 = 3^beta n1
                let arg = n / 2 + 1;
                let n1 = strip3(arg).1;
                formula(8 * (sigma(n1) as i64 + self.a_at(arg)))
            }
        }
    }

    /// `t(1,1,6,8; n)` for `n >= 1`; both branches are total.
    pub fn t_1_1_6_8(&self, n: u64) -> (u64, EvalSource) {
        assert!(n >= 1);
        if n.is_multiple_of(2) {
            // n = 2m: 2^(alpha+2) (3^(beta+1) (3/n1) + (-1)^(alpha+beta+(n1-1)/2)) S(n1)
            // with m+1 = 2^alpha 3^beta n1 and S the 3-twisted divisor sum
            let d = decomp23(n / 2 + 1);
            let chi = kronecker(3, d.n1 as i64) as i64;
            let sign = sign_pow(d.alpha as u64 + d.beta as u64 + (d.n1 - 1) / 2);
            let v = (1i64 << (d.alpha + 2))
                * (3i64.pow(d.beta + 1) * chi + sign)
                * twisted_divisor_sum(d.n1);
            formula(v)
        } else {
            // n = 2m+1: 2 (3^(beta+1) (3/n1) + (-1)^m) S(n1) - 4 g1(2m+3)
            // with 2m+3 = n+2 = 3^beta n1
            let m = (n - 1) / 2;
            let arg = n + 2;
            let (beta, n1) = strip3(arg);
            let chi = kronecker(3, n1 as i64) as i64;
            let v = 2 * (3i64.pow(beta + 1) * chi + sign_pow(m)) * twisted_divisor_sum(n1)
                - 4 * g1(arg);
            formula(v)
        }
    }
}

fn formula(v: i64) -> (u64, EvalSource) {
    assert!(v >= 0, "closed form produced a negative count: {v}");
    (v as u64, EvalSource::Formula)
}

fn enum_fallback(coeffs: &[u64], n: u64) -> (u64, EvalSource) {
    (
        count_enum(&FormSpec::triangular(coeffs), n as i64),
        EvalSource::Enumeration,
    )
}

/// `(beta, n1)` with `n = 3^beta * n1` and `3` not dividing `n1`.
fn strip3(n: u64) -> (u32, u64) {
    let mut beta = 0;
    let mut n1 = n;
    while n1.is_multiple_of(3) {
        n1 /= 3;
        beta += 1;
    }
    (beta, n1)
}

fn sign_pow(e: u64) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

// ---------------------------------------------------------------------------
// The square-corrected identity for t(1,4,4; n)
// ---------------------------------------------------------------------------

/// Checks, for one `n`, all three exact statements tying `t(1,4,4; n)` to
/// `N(1,4,4; 8n+9)` and to `r3(8n+9)`:
///
/// ```text
/// 6 t(1,4,4;n) - r3(8n+9)    = 6 c(n)
/// 2 t(1,4,4;n) - N(1,4,4;8n+9) = 2 c(n)
/// r3(8n+9) = 3 N(1,4,4;8n+9)
/// ```
///
/// where `c(n) = (-1)^((m+1)/2) m` when `8n+9 = m^2` and 0 otherwise.
pub fn thm2_7_check(n: u64) -> bool {
    let arg = 8 * n + 9;
    let t = count_enum(&FormSpec::triangular(&[1, 4, 4]), n as i64) as i64;
    let r = r3(arg) as i64;
    let n_count = count_enum(&FormSpec::square(&[1, 4, 4]), arg as i64) as i64;
    let correction = match perfect_sqrt(arg) {
        Some(m) => {
            let sign = if m.div_ceil(2) % 2 == 0 { 1 } else { -1 };
            sign * m as i64
        }
        None => 0,
    };
    6 * t - r == 6 * correction && 2 * t - n_count == 2 * correction && r == 3 * n_count
}

// ---------------------------------------------------------------------------
// Series-level product identities
// ---------------------------------------------------------------------------

/// Checks the two product identities behind the `8n + 5a` and `8n + a + 2b`
/// subsequences of `N(a,a,a,2b; .)` for `ab = 3 (mod 4)`:
///
/// ```text
/// sum N(a,a,a,2b; 8n+5a)    q^n = 24 phi(q^b) psi(q^a) psi(q^2a)^2
/// sum N(a,a,a,2b; 8n+a+2b)  q^n = 12 phi(q^a)^2 psi(q^a) psi(q^2b)
/// ```
///
/// both compared coefficientwise up to `trunc`. The left-hand sides are read
/// off the full `phi(q^a)^3 phi(q^2b)` product by arithmetic extraction.
pub fn lemma5_1_check(a: u64, b: u64, trunc: usize) -> Result<bool, VerifyError> {
    if (a * b) % 4 != 3 {
        return Err(VerifyError::ConditionViolated(alloc::format!(
            "a*b ≡ 3 (mod 4) required, got a={a} b={b}"
        )));
    }
    let offset = (5 * a).max(a + 2 * b) as usize;
    let big = 8 * trunc + offset;
    let phi_a = QSeries::phi(a, big);
    let product = phi_a.mul(&phi_a).mul(&phi_a).mul(&QSeries::phi(2 * b, big));

    let lhs1 = product.extract(8, (5 * a) as usize);
    let psi_2a = QSeries::psi(2 * a, trunc);
    let rhs1 = QSeries::phi(b, trunc)
        .mul(&QSeries::psi(a, trunc))
        .mul(&psi_2a)
        .mul(&psi_2a)
        .scale(24);

    let lhs2 = product.extract(8, (a + 2 * b) as usize);
    let phi_a_small = QSeries::phi(a, trunc);
    let rhs2 = phi_a_small
        .mul(&phi_a_small)
        .mul(&QSeries::psi(a, trunc))
        .mul(&QSeries::psi(2 * b, trunc))
        .scale(12);

    Ok(lhs1.series_equal(&rhs1, trunc) && lhs2.series_equal(&rhs2, trunc))
}

// ---------------------------------------------------------------------------
// Theta identity suite
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Theta {
    Phi,
    Psi,
}

/// `coefficient * q^power * product of theta factors`.
type ThetaTerm = (i64, usize, &'static [(Theta, u64)]);

/// One displayed identity: chained sides, each a sum of theta terms.
struct ThetaIdentity {
    name: &'static str,
    sides: &'static [&'static [ThetaTerm]],
}

use Theta::{Phi, Psi};

static THETA_IDENTITIES: &[ThetaIdentity] = &[
    ThetaIdentity {
        name: "eq1.5",
        sides: &[
            &[(1, 0, &[(Psi, 1), (Psi, 1)])],
            &[(1, 0, &[(Phi, 1), (Psi, 2)])],
        ],
    },
    ThetaIdentity {
        name: "eq1.6",
        sides: &[
            &[(1, 0, &[(Phi, 1)])],
            &[(1, 0, &[(Phi, 4)]), (2, 1, &[(Psi, 8)])],
            &[
                (1, 0, &[(Phi, 16)]),
                (2, 4, &[(Psi, 32)]),
                (2, 1, &[(Psi, 8)]),
            ],
        ],
    },
    ThetaIdentity {
        name: "eq1.7",
        sides: &[
            &[(1, 0, &[(Phi, 1), (Phi, 1)])],
            &[(1, 0, &[(Phi, 2), (Phi, 2)]), (4, 1, &[(Psi, 4), (Psi, 4)])],
            &[
                (1, 0, &[(Phi, 4), (Phi, 4)]),
                (4, 2, &[(Psi, 8), (Psi, 8)]),
                (4, 1, &[(Psi, 4), (Psi, 4)]),
            ],
        ],
    },
    ThetaIdentity {
        name: "eq1.8",
        sides: &[
            &[(1, 0, &[(Psi, 1), (Psi, 3)])],
            &[
                (1, 0, &[(Phi, 6), (Psi, 4)]),
                (1, 1, &[(Phi, 2), (Psi, 12)]),
            ],
        ],
    },
    ThetaIdentity {
        name: "eq1.9",
        sides: &[
            &[(1, 0, &[(Phi, 1), (Phi, 1)])],
            &[
                (1, 0, &[(Phi, 8), (Phi, 8)]),
                (4, 4, &[(Psi, 16), (Psi, 16)]),
                (4, 2, &[(Psi, 8), (Psi, 8)]),
                (4, 1, &[(Phi, 16), (Psi, 8)]),
                (8, 5, &[(Psi, 8), (Psi, 32)]),
            ],
        ],
    },
    ThetaIdentity {
        name: "eq1.10",
        sides: &[
            &[(1, 0, &[(Phi, 1), (Phi, 3)])],
            &[
                (1, 0, &[(Phi, 16), (Phi, 48)]),
                (4, 16, &[(Psi, 32), (Psi, 96)]),
                (2, 1, &[(Phi, 48), (Psi, 8)]),
                (2, 3, &[(Phi, 16), (Psi, 24)]),
                (6, 4, &[(Psi, 8), (Psi, 24)]),
                (4, 13, &[(Psi, 8), (Psi, 96)]),
                (4, 7, &[(Psi, 24), (Psi, 32)]),
            ],
        ],
    },
    ThetaIdentity {
        name: "eq3.20",
        sides: &[
            &[(1, 0, &[(Psi, 1), (Psi, 7)])],
            &[
                (1, 0, &[(Psi, 8), (Phi, 28)]),
                (1, 1, &[(Psi, 2), (Psi, 14)]),
                (1, 6, &[(Phi, 4), (Psi, 56)]),
            ],
        ],
    },
    ThetaIdentity {
        name: "eq3.21",
        sides: &[
            &[(1, 0, &[(Psi, 2), (Psi, 14)])],
            &[
                (1, 0, &[(Psi, 16), (Phi, 56)]),
                (1, 2, &[(Psi, 4), (Psi, 28)]),
                (1, 12, &[(Phi, 8), (Psi, 112)]),
            ],
        ],
    },
    ThetaIdentity {
        name: "eq3.22",
        sides: &[
            &[(1, 0, &[(Psi, 1), (Psi, 7)])],
            &[
                (1, 0, &[(Psi, 8), (Phi, 28)]),
                (1, 6, &[(Phi, 4), (Psi, 56)]),
                (1, 1, &[(Psi, 16), (Phi, 56)]),
                (1, 3, &[(Psi, 4), (Psi, 28)]),
                (1, 13, &[(Phi, 8), (Psi, 112)]),
            ],
        ],
    },
    ThetaIdentity {
        name: "eq3.25",
        sides: &[
            &[(1, 0, &[(Psi, 3), (Psi, 5)])],
            &[
                (1, 0, &[(Phi, 60), (Psi, 8)]),
                (1, 3, &[(Psi, 2), (Psi, 30)]),
                (1, 14, &[(Phi, 4), (Psi, 120)]),
            ],
        ],
    },
    ThetaIdentity {
        name: "eq3.26",
        sides: &[
            &[(1, 0, &[(Psi, 1), (Psi, 15)])],
            &[
                (1, 0, &[(Psi, 6), (Psi, 10)]),
                (1, 1, &[(Phi, 20), (Psi, 24)]),
                (1, 3, &[(Phi, 12), (Psi, 40)]),
            ],
        ],
    },
    ThetaIdentity {
        name: "eq3.27",
        sides: &[
            &[(1, 0, &[(Psi, 3), (Psi, 5)])],
            &[
                (1, 0, &[(Phi, 60), (Psi, 8)]),
                (1, 14, &[(Phi, 4), (Psi, 120)]),
                (1, 3, &[(Psi, 12), (Psi, 20)]),
                (1, 5, &[(Phi, 40), (Psi, 48)]),
                (1, 9, &[(Phi, 24), (Psi, 80)]),
            ],
        ],
    },
    ThetaIdentity {
        name: "eq3.28",
        sides: &[
            &[(1, 0, &[(Psi, 1), (Psi, 15)])],
            &[
                (1, 0, &[(Phi, 120), (Psi, 16)]),
                (1, 28, &[(Phi, 8), (Psi, 240)]),
                (1, 6, &[(Psi, 4), (Psi, 60)]),
                (1, 1, &[(Phi, 20), (Psi, 24)]),
                (1, 3, &[(Phi, 12), (Psi, 40)]),
            ],
        ],
    },
];

fn theta_term(trunc: usize, coef: i64, power: usize, factors: &[(Theta, u64)]) -> QSeries {
    if power > trunc {
        return QSeries::zero(trunc);
    }
    let inner = trunc - power;
    let mut product = QSeries::one(inner);
    for &(kind, scale) in factors {
        let factor = match kind {
            Phi => QSeries::phi(scale, inner),
            Psi => QSeries::psi(scale, inner),
        };
        product = product.mul(&factor);
    }
    let mut coeffs = alloc::vec![0i64; trunc + 1];
    for (i, &c) in product.coeffs().iter().enumerate() {
        coeffs[i + power] = c.checked_mul(coef).expect("theta term overflow");
    }
    QSeries::from_coeffs(coeffs)
}

fn theta_side(trunc: usize, side: &[ThetaTerm]) -> QSeries {
    let mut acc = QSeries::zero(trunc);
    for &(coef, power, factors) in side {
        acc = acc.add(&theta_term(trunc, coef, power, factors));
    }
    acc
}

/// Outcome of one series identity comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub ok: bool,
    pub mismatch: Option<Mismatch>,
}

/// Checks the thirteen displayed theta-function identities coefficientwise
/// up to `trunc`, reporting each by name.
pub fn theta_identity_suite(trunc: usize) -> Vec<IdentityCheck> {
    assert!(trunc >= 1);
    THETA_IDENTITIES
        .iter()
        .map(|identity| {
            let sides: Vec<QSeries> = identity
                .sides
                .iter()
                .map(|side| theta_side(trunc, side))
                .collect();
            let mut mismatch = None;
            for pair in sides.windows(2) {
                mismatch = pair[0].first_mismatch(&pair[1], trunc);
                if mismatch.is_some() {
                    break;
                }
            }
            IdentityCheck {
                name: identity.name,
                ok: mismatch.is_none(),
                mismatch,
            }
        })
        .collect()
}
