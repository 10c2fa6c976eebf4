//! The identity catalog: a small rule language, its parser and printer, and
//! the built-in list of every `t`/`N` relation this crate knows how to check.
//!
//! A rule relates linear combinations of counting terms under side
//! conditions, for example
//!
//! ```text
//! #[status: theorem]
//! #[source: Theorem 2.1]
//! rule thm2.1: forall a b | odd(a), odd(b) ::
//!     t(a,2a,2a,2b; n) == 1/2 N(a,a,4a,2b; 8n+5a+2b)
//! ```
//!
//! Rules may chain more than two sides (`lhs == mid == rhs`), carry rational
//! coefficients (checked by cross-multiplication, never by division), and
//! mix parameter conditions (resolved when a rule is instantiated) with
//! residual conditions on `n` (kept as predicates and applied per `n`).
//!
//! The built-in catalog text lives in `docs/catalog.rules` at the repository
//! root and is embedded verbatim; [`builtin_catalog`] parses it. Rule ids
//! (`thm2.1`, `eq3.12`, `conj5.7`, ...) are the catalog's stable numbering
//! and never change.

mod parse;

pub use parse::{parse_rule, parse_rules, ParseError};

use alloc::string::String;
use alloc::vec::Vec;

use crate::arith::{factorize, gcd, kronecker};
use crate::counting::{FormKind, FormSpec};

/// Rule parameters. Most rules use one or two; `remark5.1*` uses all four.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Param {
    A,
    B,
    C,
    D,
}

pub const PARAMS: [Param; 4] = [Param::A, Param::B, Param::C, Param::D];

impl Param {
    pub fn index(self) -> usize {
        match self {
            Param::A => 0,
            Param::B => 1,
            Param::C => 2,
            Param::D => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Param::A => "a",
            Param::B => "b",
            Param::C => "c",
            Param::D => "d",
        }
    }

    pub fn from_name(s: &str) -> Option<Param> {
        match s {
            "a" => Some(Param::A),
            "b" => Some(Param::B),
            "c" => Some(Param::C),
            "d" => Some(Param::D),
            _ => None,
        }
    }
}

/// `(n_coef*n + constant + sum coef[p]*p) / div`, the one shape every
/// coefficient slot and argument map in the catalog needs. Coefficient slots
/// have `n_coef = 0`; the divisor is 1 except where a statement divides a
/// parameter sum (and then instantiation checks exact divisibility).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinForm {
    pub n_coef: i64,
    pub constant: i64,
    pub params: [i64; 4],
    pub div: i64,
}

impl LinForm {
    pub fn constant(c: i64) -> Self {
        LinForm {
            n_coef: 0,
            constant: c,
            params: [0; 4],
            div: 1,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.n_coef == 0 && self.constant == 0 && self.params == [0; 4]
    }

    fn param_part(&self, assignment: &Assignment) -> Result<i64, InstantiateError> {
        let mut v = self.constant;
        for p in PARAMS {
            let c = self.params[p.index()];
            if c != 0 {
                let value = assignment.get(p).ok_or(InstantiateError::MissingParam(p))? as i64;
                v += c * value;
            }
        }
        Ok(v)
    }

    /// Evaluates with `n` left symbolic, returning `(n_scale, offset)` after
    /// dividing through by `div`.
    fn eval_affine(&self, assignment: &Assignment) -> Result<(i64, i64), InstantiateError> {
        let raw = self.param_part(assignment)?;
        if self.n_coef % self.div != 0 || raw % self.div != 0 {
            return Err(InstantiateError::NonIntegerForm {
                form: alloc::format!("{self}"),
            });
        }
        Ok((self.n_coef / self.div, raw / self.div))
    }
}

impl core::fmt::Display for LinForm {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let mut wrote = false;
        let mut write_term = |f: &mut core::fmt::Formatter<'_>,
                              coef: i64,
                              symbol: Option<&str>|
         -> core::fmt::Result {
            if coef == 0 {
                return Ok(());
            }
            if wrote {
                write!(f, "{}", if coef < 0 { "-" } else { "+" })?;
            } else if coef < 0 {
                write!(f, "-")?;
            }
            wrote = true;
            let mag = coef.unsigned_abs();
            match symbol {
                Some(s) => {
                    if mag != 1 {
                        write!(f, "{mag}")?;
                    }
                    write!(f, "{s}")
                }
                None => write!(f, "{mag}"),
            }
        };
        if self.div != 1 {
            write!(f, "(")?;
        }
        write_term(f, self.n_coef, Some("n"))?;
        for p in PARAMS {
            write_term(f, self.params[p.index()], Some(p.name()))?;
        }
        write_term(f, self.constant, None)?;
        if !wrote {
            write!(f, "0")?;
        }
        if self.div != 1 {
            write!(f, ")/{}", self.div)?;
        }
        Ok(())
    }
}

/// Which counter a term refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TermKind {
    /// Triangular-number count `t(...)`.
    T,
    /// Square count `N(...)`.
    N,
}

impl TermKind {
    pub fn form_kind(self) -> FormKind {
        match self {
            TermKind::T => FormKind::Triangular,
            TermKind::N => FormKind::Square,
        }
    }
}

/// One `t(...)` or `N(...)` reference inside a rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermRef {
    pub kind: TermKind,
    pub coeff_forms: Vec<LinForm>,
    pub arg: LinForm,
}

/// Reduced rational with positive denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rational {
    pub num: i64,
    pub den: i64,
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den > 0, "rational denominator must be positive");
        let g = gcd(num.unsigned_abs(), den as u64) as i64;
        Rational {
            num: num / g,
            den: den / g,
        }
    }

    pub fn one() -> Self {
        Rational { num: 1, den: 1 }
    }
}

/// A linear combination of terms: one side of a rule.
pub type Sum = Vec<(Rational, TermRef)>;

/// A side condition. Parameter conditions are decided at instantiation;
/// `NCong`, `NMin` and `LegendreExists` stay residual and gate each `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cond {
    Odd(Param),
    Coprime(Param, Param),
    ParamCong {
        form: LinForm,
        modulus: u64,
        residues: Vec<u64>,
        negated: bool,
    },
    ProductCong {
        x: Param,
        y: Param,
        modulus: u64,
        residues: Vec<u64>,
        negated: bool,
    },
    /// `(n - shift) mod modulus` lies in `residues`.
    NCong {
        modulus: u64,
        residues: Vec<u64>,
        shift: LinForm,
    },
    NMin(u64),
    /// Some odd prime `p | divisor` has `kronecker(outer*(n_coef*n + param_coef*outer), p) = -1`.
    LegendreExists {
        divisor: Param,
        outer: Param,
        n_coef: i64,
        param_coef: i64,
    },
}

/// Proven statement or open conjecture; scanners refuse to call a conjecture
/// anything stronger than "verified up to the scanned bound".
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Theorem,
    Conjecture,
}

/// A parsed identity, as stored in the catalog.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityRule {
    pub id: String,
    pub params: Vec<Param>,
    pub conds: Vec<Cond>,
    /// Two or more sides; verification checks consecutive pairs.
    pub sides: Vec<Sum>,
    pub status: Status,
    pub source: String,
    pub note: Option<String>,
}

impl IdentityRule {
    /// Canonical text form; parsing it back yields a structurally equal rule.
    pub fn print(&self) -> String {
        parse::print_rule(self)
    }
}

/// Values for the parameters a rule uses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Assignment {
    values: [Option<u64>; 4],
}

impl Assignment {
    pub fn new() -> Self {
        Assignment::default()
    }

    pub fn with(pairs: &[(Param, u64)]) -> Self {
        let mut a = Assignment::new();
        for &(p, v) in pairs {
            a.set(p, v);
        }
        a
    }

    pub fn set(&mut self, p: Param, v: u64) {
        assert!(v >= 1, "parameters are positive integers");
        self.values[p.index()] = Some(v);
    }

    pub fn get(&self, p: Param) -> Option<u64> {
        self.values[p.index()]
    }

    /// The assigned pairs in parameter order.
    pub fn pairs(&self) -> Vec<(Param, u64)> {
        PARAMS
            .iter()
            .filter_map(|&p| self.values[p.index()].map(|v| (p, v)))
            .collect()
    }
}

impl core::fmt::Display for Assignment {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let pairs = self.pairs();
        for (i, (p, v)) in pairs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}={}", p.name(), v)?;
        }
        Ok(())
    }
}

/// Why an assignment cannot instantiate a rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstantiateError {
    MissingParam(Param),
    CondViolated(String),
    NonPositiveCoefficient { term: String, value: i64 },
    NonIntegerForm { form: String },
    BadArgScale { form: String },
}

impl core::fmt::Display for InstantiateError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            InstantiateError::MissingParam(p) => {
                write!(f, "assignment does not cover parameter {}", p.name())
            }
            InstantiateError::CondViolated(c) => write!(f, "condition violated: {c}"),
            InstantiateError::NonPositiveCoefficient { term, value } => {
                write!(
                    f,
                    "coefficient form {term} evaluates to non-positive {value}"
                )
            }
            InstantiateError::NonIntegerForm { form } => {
                write!(f, "form {form} does not evaluate to an integer")
            }
            InstantiateError::BadArgScale { form } => {
                write!(f, "argument map {form} needs a positive n-scale")
            }
        }
    }
}

/// A term with parameters substituted: count `spec` at `n_scale*n + offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcreteTerm {
    pub kind: TermKind,
    pub spec: FormSpec,
    pub n_scale: u64,
    pub offset: i64,
}

impl ConcreteTerm {
    /// The argument this term evaluates its count at, for a given `n`.
    pub fn argument(&self, n: u64) -> i64 {
        (self.n_scale * n) as i64 + self.offset
    }
}

impl core::fmt::Display for ConcreteTerm {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self.kind {
            TermKind::T => write!(f, "t(")?,
            TermKind::N => write!(f, "N(")?,
        }
        for (i, a) in self.spec.coeffs().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "; ")?;
        if self.n_scale != 1 {
            write!(f, "{}", self.n_scale)?;
        }
        write!(f, "n")?;
        match self.offset.cmp(&0) {
            core::cmp::Ordering::Greater => write!(f, "+{}", self.offset)?,
            core::cmp::Ordering::Less => write!(f, "{}", self.offset)?,
            core::cmp::Ordering::Equal => {}
        }
        write!(f, ")")
    }
}

/// A residual condition on `n`, everything parameter-level already resolved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResidualCond {
    NCong {
        modulus: u64,
        residues: Vec<u64>,
        shift: i64,
    },
    NMin(u64),
    Legendre {
        odd_primes: Vec<u64>,
        outer: i64,
        n_coef: i64,
        offset: i64,
    },
}

impl ResidualCond {
    pub fn holds(&self, n: u64) -> bool {
        match self {
            ResidualCond::NCong {
                modulus,
                residues,
                shift,
            } => {
                let r = (n as i64 - shift).rem_euclid(*modulus as i64) as u64;
                residues.contains(&r)
            }
            ResidualCond::NMin(min) => n >= *min,
            ResidualCond::Legendre {
                odd_primes,
                outer,
                n_coef,
                offset,
            } => {
                let value = outer * (n_coef * n as i64 + offset);
                odd_primes.iter().any(|&p| kronecker(value, p as i64) == -1)
            }
        }
    }
}

/// A rule instance over `n` only: concrete terms, residual conditions, and
/// the common denominator used for exact cross-multiplied comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcreteRule {
    pub id: String,
    pub sides: Vec<Vec<(Rational, ConcreteTerm)>>,
    pub residual: Vec<ResidualCond>,
    pub denom_lcm: i64,
}

impl ConcreteRule {
    /// True when some `n <= n_hi` satisfies every residual condition.
    pub fn any_admissible_n(&self, n_lo: u64, n_hi: u64) -> bool {
        (n_lo..=n_hi).any(|n| self.residual.iter().all(|c| c.holds(n)))
    }

    /// The instantiated equation in counting notation, e.g.
    /// `t(1,2,2,2; n) == 1/2 N(1,1,4,2; 8n+7)`.
    pub fn equation(&self) -> String {
        use core::fmt::Write;
        let mut out = String::new();
        for (i, side) in self.sides.iter().enumerate() {
            if i > 0 {
                out.push_str(" == ");
            }
            for (j, (rat, term)) in side.iter().enumerate() {
                let mut rat = *rat;
                if j > 0 {
                    out.push_str(if rat.num < 0 { " - " } else { " + " });
                    rat.num = rat.num.abs();
                } else if rat.num < 0 {
                    out.push_str("- ");
                    rat.num = rat.num.abs();
                }
                if rat.den != 1 {
                    let _ = write!(out, "{}/{} ", rat.num, rat.den);
                } else if rat.num != 1 {
                    let _ = write!(out, "{} ", rat.num);
                }
                let _ = write!(out, "{term}");
            }
        }
        out
    }
}

fn lcm_i64(a: i64, b: i64) -> i64 {
    a / gcd(a.unsigned_abs(), b.unsigned_abs()) as i64 * b
}

/// Substitutes `assignment` into `rule`. Parameter conditions are checked
/// here; conditions that mention `n` are carried over as residuals.
pub fn instantiate(
    rule: &IdentityRule,
    assignment: &Assignment,
) -> Result<ConcreteRule, InstantiateError> {
    for p in &rule.params {
        if assignment.get(*p).is_none() {
            return Err(InstantiateError::MissingParam(*p));
        }
    }

    let mut residual = Vec::new();
    for cond in &rule.conds {
        match cond {
            Cond::Odd(p) => {
                let v = assignment
                    .get(*p)
                    .ok_or(InstantiateError::MissingParam(*p))?;
                if v % 2 == 0 {
                    return Err(InstantiateError::CondViolated(alloc::format!(
                        "odd({}) with {}={v}",
                        p.name(),
                        p.name()
                    )));
                }
            }
            Cond::Coprime(x, y) => {
                let vx = assignment
                    .get(*x)
                    .ok_or(InstantiateError::MissingParam(*x))?;
                let vy = assignment
                    .get(*y)
                    .ok_or(InstantiateError::MissingParam(*y))?;
                if gcd(vx, vy) != 1 {
                    return Err(InstantiateError::CondViolated(alloc::format!(
                        "gcd({},{})=1 with values ({vx},{vy})",
                        x.name(),
                        y.name()
                    )));
                }
            }
            Cond::ParamCong {
                form,
                modulus,
                residues,
                negated,
            } => {
                let raw = form.param_part(assignment)?;
                if form.div != 1 {
                    return Err(InstantiateError::NonIntegerForm {
                        form: alloc::format!("{form}"),
                    });
                }
                let r = raw.rem_euclid(*modulus as i64) as u64;
                let inside = residues.contains(&r);
                if inside == *negated {
                    return Err(InstantiateError::CondViolated(alloc::format!(
                        "{form} {} {residues:?} (mod {modulus})",
                        if *negated { "!≡" } else { "≡" }
                    )));
                }
            }
            Cond::ProductCong {
                x,
                y,
                modulus,
                residues,
                negated,
            } => {
                let vx = assignment
                    .get(*x)
                    .ok_or(InstantiateError::MissingParam(*x))?;
                let vy = assignment
                    .get(*y)
                    .ok_or(InstantiateError::MissingParam(*y))?;
                let r = (vx * vy) % modulus;
                let inside = residues.contains(&r);
                if inside == *negated {
                    return Err(InstantiateError::CondViolated(alloc::format!(
                        "{}*{} {} {residues:?} (mod {modulus})",
                        x.name(),
                        y.name(),
                        if *negated { "!≡" } else { "≡" }
                    )));
                }
            }
            Cond::NCong {
                modulus,
                residues,
                shift,
            } => {
                let (n_scale, offset) = shift.eval_affine(assignment)?;
                if n_scale != 0 {
                    return Err(InstantiateError::NonIntegerForm {
                        form: alloc::format!("{shift}"),
                    });
                }
                residual.push(ResidualCond::NCong {
                    modulus: *modulus,
                    residues: residues.clone(),
                    shift: offset,
                });
            }
            Cond::NMin(min) => residual.push(ResidualCond::NMin(*min)),
            Cond::LegendreExists {
                divisor,
                outer,
                n_coef,
                param_coef,
            } => {
                let dv = assignment
                    .get(*divisor)
                    .ok_or(InstantiateError::MissingParam(*divisor))?;
                let ov = assignment
                    .get(*outer)
                    .ok_or(InstantiateError::MissingParam(*outer))?;
                let odd_primes: Vec<u64> = factorize(dv)
                    .factors
                    .iter()
                    .map(|&(p, _)| p)
                    .filter(|&p| p != 2)
                    .collect();
                residual.push(ResidualCond::Legendre {
                    odd_primes,
                    outer: ov as i64,
                    n_coef: *n_coef,
                    offset: param_coef * ov as i64,
                });
            }
        }
    }

    let mut denom_lcm = 1i64;
    let mut sides = Vec::with_capacity(rule.sides.len());
    for side in &rule.sides {
        let mut concrete = Vec::with_capacity(side.len());
        for (rat, term) in side {
            denom_lcm = lcm_i64(denom_lcm, rat.den);
            let mut coeffs = Vec::with_capacity(term.coeff_forms.len());
            for form in &term.coeff_forms {
                let (n_scale, value) = form.eval_affine(assignment)?;
                debug_assert_eq!(n_scale, 0, "parser rejects n in coefficient slots");
                if value <= 0 {
                    return Err(InstantiateError::NonPositiveCoefficient {
                        term: alloc::format!("{form}"),
                        value,
                    });
                }
                coeffs.push(value as u64);
            }
            let (n_scale, offset) = term.arg.eval_affine(assignment)?;
            if n_scale < 1 {
                return Err(InstantiateError::BadArgScale {
                    form: alloc::format!("{}", term.arg),
                });
            }
            concrete.push((
                *rat,
                ConcreteTerm {
                    kind: term.kind,
                    spec: FormSpec::new(&coeffs, term.kind.form_kind()),
                    n_scale: n_scale as u64,
                    offset,
                },
            ));
        }
        sides.push(concrete);
    }

    Ok(ConcreteRule {
        id: rule.id.clone(),
        sides,
        residual,
        denom_lcm,
    })
}

/// The complete built-in catalog, parsed from the embedded rule file
/// (`docs/catalog.rules`). Rule count and ids are stable.
pub fn builtin_catalog() -> Vec<IdentityRule> {
    parse_rules(builtin_rules_text()).expect("built-in catalog must parse")
}

/// The raw text of the built-in rule file.
pub fn builtin_rules_text() -> &'static str {
    include_str!("../../../../docs/catalog.rules")
}
