//! Integer number-theory kernels: factorization, divisor sums, Kronecker
//! symbols, 2/3-adic decompositions, and the two special coefficient
//! sequences `a(n)` and `g1(n)` used by the closed-form evaluators.
//!
//! Everything works over machine integers with trial division; the inputs
//! this crate sees stay far below the range where that matters.

use alloc::vec::Vec;

/// A positive integer with its prime factorization in increasing prime order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredInt {
    pub n: u64,
    pub factors: Vec<(u64, u32)>,
}

/// The unique decomposition `n = 2^alpha * 3^beta * n1` with `gcd(n1, 6) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Decomp23 {
    pub alpha: u32,
    pub beta: u32,
    pub n1: u64,
}

/// Floor of the square root, exact for all `u64`.
pub fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut x = 1u64 << (u64::BITS - n.leading_zeros()).div_ceil(2);
    loop {
        let y = (x + n / x) / 2;
        if y >= x {
            break;
        }
        x = y;
    }
    x
}

/// True when `n` is a perfect square; returns the root.
pub fn perfect_sqrt(n: u64) -> Option<u64> {
    let r = isqrt(n);
    (r * r == n).then_some(r)
}

/// Greatest common divisor.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Trial-division factorization; `1` factors as the empty product.
pub fn factorize(n: u64) -> FactoredInt {
    assert!(n >= 1, "factorize requires n >= 1");
    let mut factors = Vec::new();
    let mut rest = n;
    let mut p = 2u64;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    FactoredInt { n, factors }
}

/// All positive divisors of `n`, sorted ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = alloc::vec![1u64];
    for &(p, e) in &factorize(n).factors {
        let prev = divs.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            divs.extend(prev.iter().map(|d| d * pk));
        }
    }
    divs.sort_unstable();
    divs
}

/// Sum of the positive divisors of `n`.
pub fn sigma(n: u64) -> u64 {
    let mut s = 1u64;
    for &(p, e) in &factorize(n).factors {
        let mut geom = 1u64;
        let mut pk = 1u64;
        for _ in 0..e {
            pk = pk.checked_mul(p).expect("sigma overflow");
            geom = geom.checked_add(pk).expect("sigma overflow");
        }
        s = s.checked_mul(geom).expect("sigma overflow");
    }
    s
}

/// The Kronecker symbol `(a / n)`, the fully multiplicative extension of the
/// Legendre symbol to all integer `n` (including 0, negatives and even
/// moduli). Agrees with the Jacobi symbol for odd positive `n` and with the
/// Legendre symbol when `n` is an odd prime not dividing `a`.
pub fn kronecker(a: i64, n: i64) -> i32 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut sign = 1i32;
    let mut n_abs = n.unsigned_abs();
    if n < 0 && a < 0 {
        sign = -sign;
    }
    // factor out (a/2)^e for the 2-part of n
    let e = n_abs.trailing_zeros();
    n_abs >>= e;
    if e > 0 {
        if a % 2 == 0 {
            return 0;
        }
        // (a/2) = 1 for a = +-1 mod 8, -1 for a = +-3 mod 8
        let r = a.rem_euclid(8);
        if (r == 3 || r == 5) && e % 2 == 1 {
            sign = -sign;
        }
    }
    sign * jacobi_odd(a, n_abs)
}

/// Jacobi symbol for odd positive modulus, by quadratic reciprocity.
fn jacobi_odd(a: i64, n: u64) -> i32 {
    debug_assert!(n % 2 == 1);
    if n == 1 {
        return 1;
    }
    let mut num = a.rem_euclid(n as i64) as u64;
    let mut den = n;
    let mut acc = 1i32;
    loop {
        num %= den;
        if num == 0 {
            return if den == 1 { acc } else { 0 };
        }
        while num.is_multiple_of(2) {
            num /= 2;
            if den % 8 == 3 || den % 8 == 5 {
                acc = -acc;
            }
        }
        if num == 1 {
            return acc;
        }
        if num % 4 == 3 && den % 4 == 3 {
            acc = -acc;
        }
        core::mem::swap(&mut num, &mut den);
    }
}

/// Strips the powers of 2 and 3 from `n`.
pub fn decomp23(n: u64) -> Decomp23 {
    assert!(n >= 1, "decomp23 requires n >= 1");
    let alpha = n.trailing_zeros();
    let mut n1 = n >> alpha;
    let mut beta = 0;
    while n1.is_multiple_of(3) {
        n1 /= 3;
        beta += 1;
    }
    Decomp23 { alpha, beta, n1 }
}

/// Number of representations of `n` as a sum of three squares, by direct
/// lattice enumeration over `x^2 + y^2 + z^2 = n`.
pub fn r3(n: u64) -> u64 {
    let mut count = 0u64;
    let xmax = isqrt(n);
    for x in 0..=xmax {
        let rx = n - x * x;
        let x_ways = if x == 0 { 1 } else { 2 };
        let ymax = isqrt(rx);
        for y in 0..=ymax {
            let ry = rx - y * y;
            let y_ways = if y == 0 { 1 } else { 2 };
            if let Some(z) = perfect_sqrt(ry) {
                let z_ways = if z == 0 { 1 } else { 2 };
                count += x_ways * y_ways * z_ways;
            }
        }
    }
    count
}

/// Coefficients `a(1), ..., a(n_max)` of the weight-2 eta-type product
///
/// ```text
/// q * prod_{k>=1} (1 - q^{2k})(1 - q^{4k})(1 - q^{6k})(1 - q^{12k})
/// ```
///
/// returned as a vector indexed by `n` (index 0 unused, equal to 0). Computed
/// by multiplying the finitely many binomial factors that reach `n_max`,
/// independently of the [`crate::qseries`] machinery.
pub fn a_coeff_table(n_max: usize) -> Vec<i64> {
    // product part first, to degree n_max - 1, then shift by the leading q
    let cap = n_max.saturating_sub(1);
    let mut prod = alloc::vec![0i64; cap + 1];
    prod[0] = 1;
    for period in [2usize, 4, 6, 12] {
        let mut step = period;
        while step <= cap {
            // multiply in place by (1 - q^step)
            for i in (step..=cap).rev() {
                prod[i] = prod[i]
                    .checked_sub(prod[i - step])
                    .expect("a(n) coefficient overflow");
            }
            step += period;
        }
    }
    let mut out = alloc::vec![0i64; n_max + 1];
    out[1..].copy_from_slice(&prod[..n_max]);
    out
}

/// The coefficient `a(n)` of the product in [`a_coeff_table`]. One-shot; use
/// the table form when many values are needed.
pub fn a_coeff(n: usize) -> i64 {
    assert!(n >= 1, "a_coeff requires n >= 1");
    a_coeff_table(n)[n]
}

/// The twisted representation sum
///
/// ```text
/// g1(n) = sum over a, b >= 1, a odd, a^2 + 3b^2 = 4n of (-1)^((a-1)/2) * a
/// ```
///
/// by enumeration of the odd values of `a`.
pub fn g1(n: u64) -> i64 {
    assert!(n >= 1, "g1 requires n >= 1");
    let target = 4 * n;
    let mut sum = 0i64;
    let mut a = 1u64;
    while a * a < target {
        let r = target - a * a;
        if r.is_multiple_of(3) {
            if let Some(b) = perfect_sqrt(r / 3) {
                if b > 0 {
                    let term = a as i64;
                    sum += if ((a - 1) / 2).is_multiple_of(2) {
                        term
                    } else {
                        -term
                    };
                }
            }
        }
        a += 2;
    }
    sum
}

/// `sum over d | n1 of d * kronecker(3, d)`; callers keep `gcd(n1, 3) = 1`.
pub fn twisted_divisor_sum(n1: u64) -> i64 {
    divisors(n1)
        .into_iter()
        .map(|d| d as i64 * kronecker(3, d as i64) as i64)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(1).factors, &[]);
        assert_eq!(factorize(12).factors, &[(2, 2), (3, 1)]);
        assert_eq!(factorize(97).factors, &[(97, 1)]);
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(1), 1);
        assert_eq!(sigma(6), 12);
        assert_eq!(sigma(7), 8);
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(3, 5), -1);
        assert_eq!(kronecker(3, 11), 1);
        for a in -20..=20 {
            assert_eq!(kronecker(a, 1), 1, "(a/1) with a={a}");
        }
    }

    #[test]
    fn decomp23_examples() {
        assert_eq!(
            decomp23(72),
            Decomp23 {
                alpha: 3,
                beta: 2,
                n1: 1
            }
        );
        assert_eq!(
            decomp23(5),
            Decomp23 {
                alpha: 0,
                beta: 0,
                n1: 5
            }
        );
        assert_eq!(
            decomp23(48),
            Decomp23 {
                alpha: 4,
                beta: 1,
                n1: 1
            }
        );
    }

    #[test]
    fn r3_examples() {
        assert_eq!(r3(1), 6);
        assert_eq!(r3(7), 0);
        assert_eq!(r3(9), 30);
    }

    #[test]
    fn g1_examples() {
        assert_eq!(g1(1), 1);
        assert_eq!(g1(2), 0);
        assert_eq!(g1(3), -3);
    }

    #[test]
    fn twisted_divisor_sum_examples() {
        assert_eq!(twisted_divisor_sum(1), 1);
        assert_eq!(twisted_divisor_sum(5), -4);
        assert_eq!(twisted_divisor_sum(7), -6);
    }

    #[test]
    fn isqrt_exact() {
        for n in 0..5000u64 {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n, "isqrt({n})");
        }
    }
}
