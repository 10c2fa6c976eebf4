//! Truncated integer power series in `q`, with theta-function constructors.
//!
//! A [`QSeries`] stores the coefficients of `q^0 .. q^trunc` exactly as `i64`.
//! Operations track truncation pessimistically: a result never claims a
//! coefficient the inputs do not determine. Coefficient overflow is a hard
//! error (panic naming the offending exponent), never a silent wrap; at the
//! truncations this crate works with, an overflow indicates a caller bug.
//!
//! The two theta constructors are
//!
//! ```text
//! phi(q) = sum_{n in Z} q^(n^2)        = 1 + 2q + 2q^4 + 2q^9 + ...
//! psi(q) = sum_{n >= 0} q^(n(n+1)/2)   = 1 + q + q^3 + q^6 + ...
//! ```
//!
//! and [`QSeries::phi`]/[`QSeries::psi`] build `phi(q^a)`/`psi(q^a)` directly.

use alloc::vec;
use alloc::vec::Vec;

/// First index at which two series disagree, with both coefficient values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub index: usize,
    pub lhs: i64,
    pub rhs: i64,
}

/// A power series over `Z` known exactly for all exponents `<= trunc`.
///
/// Invariant: `coeffs.len() == trunc + 1`, so a series always knows at least
/// its constant term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<i64>,
}

impl QSeries {
    /// Wraps an explicit coefficient vector; `coeffs[i]` is the coefficient
    /// of `q^i` and the truncation order is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<i64>) -> Self {
        assert!(!coeffs.is_empty(), "a series must know its constant term");
        QSeries { coeffs }
    }

    /// The zero series, known up to `q^trunc`.
    pub fn zero(trunc: usize) -> Self {
        QSeries {
            coeffs: vec![0; trunc + 1],
        }
    }

    /// The constant series 1, known up to `q^trunc`.
    pub fn one(trunc: usize) -> Self {
        let mut coeffs = vec![0; trunc + 1];
        coeffs[0] = 1;
        QSeries { coeffs }
    }

    /// `phi(q^a)`: coefficient 1 at exponent 0 and 2 at every `a*m^2`, `m >= 1`.
    pub fn phi(a: u64, trunc: usize) -> Self {
        assert!(a >= 1, "phi requires a >= 1");
        let mut coeffs = vec![0i64; trunc + 1];
        coeffs[0] = 1;
        let mut m = 1u64;
        while let Some(e) = m.checked_mul(m).and_then(|sq| sq.checked_mul(a)) {
            if e > trunc as u64 {
                break;
            }
            coeffs[e as usize] = 2;
            m += 1;
        }
        QSeries { coeffs }
    }

    /// `psi(q^a)`: coefficient 1 at every `a*m(m+1)/2`, `m >= 0`.
    pub fn psi(a: u64, trunc: usize) -> Self {
        assert!(a >= 1, "psi requires a >= 1");
        let mut coeffs = vec![0i64; trunc + 1];
        let mut m = 0u64;
        loop {
            let tri = m * (m + 1) / 2;
            let Some(e) = tri.checked_mul(a) else { break };
            if e > trunc as u64 {
                break;
            }
            coeffs[e as usize] = 1;
            m += 1;
        }
        QSeries { coeffs }
    }

    /// Largest exponent whose coefficient is known.
    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `q^i`. Panics when `i` is beyond the truncation.
    pub fn coeff(&self, i: usize) -> i64 {
        assert!(
            i <= self.trunc(),
            "coefficient q^{i} beyond truncation {}",
            self.trunc()
        );
        self.coeffs[i]
    }

    /// All known coefficients, index = exponent.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Cauchy product, truncated to the shorter of the two inputs.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let trunc = self.trunc().min(other.trunc());
        let mut coeffs = Vec::with_capacity(trunc + 1);
        for i in 0..=trunc {
            let mut acc: i128 = 0;
            for j in 0..=i {
                acc += self.coeffs[j] as i128 * other.coeffs[i - j] as i128;
            }
            coeffs.push(fit_i64(acc, i));
        }
        QSeries { coeffs }
    }

    /// Pointwise sum up to the common truncation.
    pub fn add(&self, other: &QSeries) -> QSeries {
        self.zip_with(other, |a, b, i| {
            a.checked_add(b).unwrap_or_else(|| overflow(i))
        })
    }

    /// Pointwise difference up to the common truncation.
    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.zip_with(other, |a, b, i| {
            a.checked_sub(b).unwrap_or_else(|| overflow(i))
        })
    }

    fn zip_with(&self, other: &QSeries, f: impl Fn(i64, i64, usize) -> i64) -> QSeries {
        let trunc = self.trunc().min(other.trunc());
        let coeffs = (0..=trunc)
            .map(|i| f(self.coeffs[i], other.coeffs[i], i))
            .collect();
        QSeries { coeffs }
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: i64) -> QSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &v)| v.checked_mul(c).unwrap_or_else(|| overflow(i)))
            .collect();
        QSeries { coeffs }
    }

    /// Multiplication by `q^k`. The result knows exponents up to
    /// `trunc + k`: the low `k` coefficients are exactly 0 and coefficient
    /// `i + k` equals `self[i]`, so nothing is fabricated.
    ///
    /// Panics when `k > trunc`, which no well-formed caller needs.
    pub fn shift(&self, k: usize) -> QSeries {
        assert!(
            k <= self.trunc(),
            "shift by {k} exceeds truncation {}",
            self.trunc()
        );
        let mut coeffs = vec![0i64; self.coeffs.len() + k];
        coeffs[k..].copy_from_slice(&self.coeffs);
        QSeries { coeffs }
    }

    /// The substitution `q -> q^m`. Exponent `i` maps to `m*i`; the result is
    /// exact up to `m*trunc + m - 1` since every exponent not divisible by
    /// `m` is known to be 0.
    pub fn substitute_pow(&self, m: usize) -> QSeries {
        assert!(m >= 1, "substitute_pow requires m >= 1");
        let mut coeffs = vec![0i64; m * self.trunc() + m];
        for (i, &v) in self.coeffs.iter().enumerate() {
            coeffs[m * i] = v;
        }
        QSeries { coeffs }
    }

    /// The residue-class piece of an `m`-dissection: `result[n] = self[m*n + r]`
    /// for `0 <= r < m`. Reassembling all `m` pieces (see tests) reproduces
    /// the series exactly.
    pub fn dissect(&self, r: usize, m: usize) -> QSeries {
        assert!(m >= 1, "dissect requires m >= 1");
        assert!(r < m, "dissect residue {r} must be below modulus {m}");
        self.extract(m, r)
    }

    /// General arithmetic-progression extraction: `result[n] = self[m*n + j]`.
    /// Unlike [`QSeries::dissect`], `j` may be any offset up to the truncation.
    pub fn extract(&self, m: usize, j: usize) -> QSeries {
        assert!(m >= 1, "extract requires m >= 1");
        assert!(
            j <= self.trunc(),
            "extract offset {j} exceeds truncation {}",
            self.trunc()
        );
        let len = (self.trunc() - j) / m + 1;
        let coeffs = (0..len).map(|n| self.coeffs[m * n + j]).collect();
        QSeries { coeffs }
    }

    /// First disagreeing coefficient among exponents `0..=upto`, or `None`
    /// when the series agree on that whole range.
    ///
    /// Panics when `upto` exceeds either truncation: comparing unknown
    /// coefficients would be meaningless.
    pub fn first_mismatch(&self, other: &QSeries, upto: usize) -> Option<Mismatch> {
        assert!(
            upto <= self.trunc() && upto <= other.trunc(),
            "comparison up to q^{upto} exceeds truncation ({} vs {})",
            self.trunc(),
            other.trunc()
        );
        (0..=upto)
            .find(|&i| self.coeffs[i] != other.coeffs[i])
            .map(|i| Mismatch {
                index: i,
                lhs: self.coeffs[i],
                rhs: other.coeffs[i],
            })
    }

    /// True when all coefficients up to `q^upto` agree.
    pub fn series_equal(&self, other: &QSeries, upto: usize) -> bool {
        self.first_mismatch(other, upto).is_none()
    }
}

fn fit_i64(v: i128, index: usize) -> i64 {
    i64::try_from(v).unwrap_or_else(|_| overflow(index))
}

fn overflow(index: usize) -> ! {
    panic!("coefficient overflow at exponent {index}: value exceeds 64 bits")
}
