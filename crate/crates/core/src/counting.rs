//! The two independent counters behind every identity check.
//!
//! For a form `a1*v(x1) + ... + ak*v(xk)` — where `v(x) = x^2` for
//! [`FormKind::Square`] and `v(x) = x(x-1)/2` for [`FormKind::Triangular`] —
//! the representation count of `n` can be computed two ways with disjoint
//! failure modes:
//!
//! - [`count_enum`] / [`enum_table`] enumerate lattice points directly;
//! - [`count_series`] reads coefficients off the theta-function product
//!   `phi(q^a1)...phi(q^ak)` (squares) or `2^k psi(q^a1)...psi(q^ak)`
//!   (triangular numbers).
//!
//! Counts of negative `n` are 0 by convention, which keeps transformed
//! arguments like `2n - 2` total.
//!
//! Note on the triangular convention: `x(x-1)/2` and `x(x+1)/2` produce the
//! same counts over all integers `x` (substitute `x <-> 1 - x`), so either
//! reading of a "triangular number" gives the same `t`. Each triangular value
//! has exactly two preimages, whence `t(spec; 0) = 2^k`.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{isqrt, perfect_sqrt};
use crate::qseries::QSeries;

/// Whether the form sums squares or triangular numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FormKind {
    Square,
    Triangular,
}

/// A counting problem: coefficients `(a1, ..., ak)` plus the kind of form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormSpec {
    coeffs: Vec<u64>,
    kind: FormKind,
}

impl FormSpec {
    pub fn new(coeffs: &[u64], kind: FormKind) -> Self {
        assert!(!coeffs.is_empty(), "a form needs at least one coefficient");
        assert!(
            coeffs.iter().all(|&a| a >= 1),
            "form coefficients must be positive"
        );
        FormSpec {
            coeffs: coeffs.to_vec(),
            kind,
        }
    }

    pub fn square(coeffs: &[u64]) -> Self {
        FormSpec::new(coeffs, FormKind::Square)
    }

    pub fn triangular(coeffs: &[u64]) -> Self {
        FormSpec::new(coeffs, FormKind::Triangular)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    /// Key with sorted coefficients; counts are invariant under reordering,
    /// so this is what table caches index by.
    pub fn canonical(&self) -> FormSpec {
        let mut coeffs = self.coeffs.clone();
        coeffs.sort_unstable();
        FormSpec {
            coeffs,
            kind: self.kind,
        }
    }
}

impl core::fmt::Display for FormSpec {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let symbol = match self.kind {
            FormKind::Square => 'N',
            FormKind::Triangular => 't',
        };
        write!(f, "{symbol}(")?;
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// How many integer solutions the last coordinate `a * v(x) = rem` has.
fn last_coordinate_ways(a: u64, rem: u64, kind: FormKind) -> u64 {
    if !rem.is_multiple_of(a) {
        return 0;
    }
    let v = rem / a;
    match kind {
        FormKind::Square => match perfect_sqrt(v) {
            Some(0) => 1,
            Some(_) => 2,
            None => 0,
        },
        // v is triangular iff 8v + 1 is a square; every triangular value
        // (including 0) has exactly two preimages x.
        FormKind::Triangular => match perfect_sqrt(8 * v + 1) {
            Some(_) => 2,
            None => 0,
        },
    }
}

fn enum_rec(coeffs: &[u64], rem: u64, kind: FormKind) -> u64 {
    let a = coeffs[0];
    if coeffs.len() == 1 {
        return last_coordinate_ways(a, rem, kind);
    }
    let rest = &coeffs[1..];
    let mut total = 0u64;
    match kind {
        FormKind::Square => {
            let xmax = isqrt(rem / a);
            for x in 0..=xmax {
                let used = a * x * x;
                if used > rem {
                    break;
                }
                let ways = if x == 0 { 1 } else { 2 };
                total += ways * enum_rec(rest, rem - used, kind);
            }
        }
        FormKind::Triangular => {
            let mut m = 0u64;
            loop {
                let used = a * (m * (m + 1) / 2);
                if used > rem {
                    break;
                }
                total += 2 * enum_rec(rest, rem - used, kind);
                m += 1;
            }
        }
    }
    total
}

/// Representation count of `n` by direct enumeration. Negative `n` counts 0.
pub fn count_enum(spec: &FormSpec, n: i64) -> u64 {
    if n < 0 {
        return 0;
    }
    enum_rec(&spec.coeffs, n as u64, spec.kind)
}

fn sweep_rec(coeffs: &[u64], kind: FormKind, base: u64, mult: u64, table: &mut [u64]) {
    let a = coeffs[0];
    let n_max = (table.len() - 1) as u64;
    if coeffs.len() == 1 {
        match kind {
            FormKind::Square => {
                table[base as usize] += mult;
                let mut x = 1u64;
                while base + a * x * x <= n_max {
                    table[(base + a * x * x) as usize] += 2 * mult;
                    x += 1;
                }
            }
            FormKind::Triangular => {
                let mut m = 0u64;
                while base + a * (m * (m + 1) / 2) <= n_max {
                    table[(base + a * (m * (m + 1) / 2)) as usize] += 2 * mult;
                    m += 1;
                }
            }
        }
        return;
    }
    let rest = &coeffs[1..];
    match kind {
        FormKind::Square => {
            let mut x = 0u64;
            while base + a * x * x <= n_max {
                let ways = if x == 0 { 1 } else { 2 };
                sweep_rec(rest, kind, base + a * x * x, mult * ways, table);
                x += 1;
            }
        }
        FormKind::Triangular => {
            let mut m = 0u64;
            while base + a * (m * (m + 1) / 2) <= n_max {
                sweep_rec(rest, kind, base + a * (m * (m + 1) / 2), 2 * mult, table);
                m += 1;
            }
        }
    }
}

/// Counts for every `n = 0..=n_max` in one enumeration sweep. Same method
/// family as [`count_enum`] (lattice enumeration, no series arithmetic) but
/// amortizes the traversal across the whole range.
pub fn enum_table(spec: &FormSpec, n_max: usize) -> Vec<u64> {
    let mut table = vec![0u64; n_max + 1];
    sweep_rec(&spec.coeffs, spec.kind, 0, 1, &mut table);
    table
}

/// Counts for every `n = 0..=n_max` read off the theta-product generating
/// function.
pub fn count_series(spec: &FormSpec, n_max: usize) -> Vec<u64> {
    let mut product = match spec.kind {
        FormKind::Square => QSeries::phi(spec.coeffs[0], n_max),
        FormKind::Triangular => QSeries::psi(spec.coeffs[0], n_max),
    };
    for &a in &spec.coeffs[1..] {
        let factor = match spec.kind {
            FormKind::Square => QSeries::phi(a, n_max),
            FormKind::Triangular => QSeries::psi(a, n_max),
        };
        product = product.mul(&factor);
    }
    let scale = match spec.kind {
        FormKind::Square => 1i64,
        FormKind::Triangular => 1i64 << spec.coeffs.len(),
    };
    product
        .coeffs()
        .iter()
        .map(|&c| {
            let v = c.checked_mul(scale).expect("count overflow");
            debug_assert!(v >= 0);
            v as u64
        })
        .collect()
}

/// The combinatorial constant built from how many coefficients equal 1, 2
/// and 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CapConstant {
    pub i1: u64,
    pub i2: u64,
    pub i3: u64,
    pub value: u64,
}

/// `C(a1,...,ak) = i1(i1-1)(i1-2)(i1-3)/24 + i1(i1-1)i2/2 + i1*i3` where
/// `ij` counts the coefficients equal to `j`.
pub fn cap_constant(coeffs: &[u64]) -> CapConstant {
    let count = |v: u64| coeffs.iter().filter(|&&a| a == v).count() as u64;
    let (i1, i2, i3) = (count(1), count(2), count(3));
    let quartic = if i1 >= 4 {
        i1 * (i1 - 1) * (i1 - 2) * (i1 - 3) / 24
    } else {
        0
    };
    let pair = if i1 >= 2 { i1 * (i1 - 1) * i2 / 2 } else { 0 };
    CapConstant {
        i1,
        i2,
        i3,
        value: quartic + pair + i1 * i3,
    }
}

/// Checks `t(a1..ak; n) * (2 + C) = 2 * N(a1..ak; 8n + a1 + ... + ak)` for a
/// composition with coefficient sum at most 7, both sides by enumeration.
pub fn ach_relation(coeffs: &[u64], n: u64) -> bool {
    let total: u64 = coeffs.iter().sum();
    assert!(
        total <= 7,
        "relation requires coefficient sum <= 7, got {total}"
    );
    let c = cap_constant(coeffs).value;
    let t = count_enum(&FormSpec::triangular(coeffs), n as i64);
    let n_count = count_enum(&FormSpec::square(coeffs), (8 * n + total) as i64);
    t * (2 + c) == 2 * n_count
}

/// Checks `t(a1..ak; n) * (2 + C) = 2 * (N(8n+8) - N(2n+2))` for a
/// composition with coefficient sum exactly 8, both sides by enumeration.
pub fn bch_relation(coeffs: &[u64], n: u64) -> bool {
    let total: u64 = coeffs.iter().sum();
    assert!(
        total == 8,
        "relation requires coefficient sum 8, got {total}"
    );
    let c = cap_constant(coeffs).value;
    let t = count_enum(&FormSpec::triangular(coeffs), n as i64);
    let hi = count_enum(&FormSpec::square(coeffs), (8 * n + 8) as i64);
    let lo = count_enum(&FormSpec::square(coeffs), (2 * n + 2) as i64);
    t * (2 + c) == 2 * (hi - lo)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangular_zero_is_two_to_the_k() {
        let spec = FormSpec::triangular(&[1, 2, 3, 4]);
        assert_eq!(count_enum(&spec, 0), 16);
    }

    #[test]
    fn square_enum_examples() {
        assert_eq!(count_enum(&FormSpec::square(&[1, 4, 4]), 9), 10);
        assert_eq!(count_enum(&FormSpec::square(&[1, 1, 4, 2]), 7), 32);
    }

    #[test]
    fn negative_argument_counts_zero() {
        assert_eq!(count_enum(&FormSpec::square(&[1, 1]), -3), 0);
        assert_eq!(count_enum(&FormSpec::triangular(&[2]), -1), 0);
    }

    #[test]
    fn cap_constant_examples() {
        assert_eq!(cap_constant(&[1, 1, 2, 3]).value, 3);
        assert_eq!(cap_constant(&[1, 1, 1, 1]).value, 1);
        assert_eq!(cap_constant(&[4, 5, 6, 7]).value, 0);
    }

    #[test]
    fn series_examples() {
        assert_eq!(
            count_series(&FormSpec::triangular(&[1, 1, 6, 24]), 3)[3],
            32
        );
        assert_eq!(count_series(&FormSpec::triangular(&[2, 3, 3, 8]), 4)[4], 0);
    }
}
