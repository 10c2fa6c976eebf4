//! Number-theory kernels checked against independent routes.

use proptest::prelude::*;
use thetaquad_core::arith::{a_coeff, a_coeff_table, divisors, g1, gcd, kronecker, r3, sigma};
use thetaquad_core::qseries::QSeries;

#[test]
fn sigma_agrees_with_divisor_list() {
    for n in 1..500u64 {
        assert_eq!(sigma(n), divisors(n).iter().sum::<u64>(), "sigma({n})");
    }
}

proptest! {
    #[test]
    fn sigma_is_multiplicative(m in 1u64..10_000, n in 1u64..10_000) {
        prop_assume!(gcd(m, n) == 1);
        prop_assert_eq!(sigma(m * n), sigma(m) * sigma(n));
    }

    #[test]
    fn kronecker_multiplicative_in_top(a in -300i64..300, b in -300i64..300, n in 1i64..300) {
        prop_assert_eq!(kronecker(a * b, n), kronecker(a, n) * kronecker(b, n));
    }

    #[test]
    fn kronecker_multiplicative_in_bottom(a in -300i64..300, m in 1i64..300, n in 1i64..300) {
        prop_assert_eq!(kronecker(a, m * n), kronecker(a, m) * kronecker(a, n));
    }
}

/// Legendre symbol by Euler's criterion, the reference for odd primes.
fn legendre_by_euler(a: i64, p: u64) -> i32 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    if result == 1 {
        1
    } else {
        -1
    }
}

#[test]
fn kronecker_matches_euler_criterion_for_small_primes() {
    let primes: Vec<u64> = (3..100)
        .filter(|&p| (2..p).all(|d| d * d > p || p % d != 0))
        .collect();
    for &p in &primes {
        for a in -50i64..=50 {
            assert_eq!(kronecker(a, p as i64), legendre_by_euler(a, p), "({a}/{p})");
        }
    }
}

#[test]
fn r3_matches_phi_cubed() {
    let trunc = 500;
    let phi = QSeries::phi(1, trunc);
    let cube = phi.mul(&phi).mul(&phi);
    for n in 0..=trunc {
        assert_eq!(r3(n as u64) as i64, cube.coeff(n), "r3({n})");
    }
}

#[test]
fn a_coeff_small_values_by_hand() {
    // to order 3 only the factor (1 - q^2) matters: q(1 - q^2) = q - q^3
    assert_eq!(a_coeff(1), 1);
    assert_eq!(a_coeff(2), 0);
    assert_eq!(a_coeff(3), -1);
}

#[test]
fn a_coeff_vanishes_at_even_indices() {
    let table = a_coeff_table(400);
    for n in (2..=400).step_by(2) {
        assert_eq!(table[n], 0, "a({n})");
    }
}

#[test]
fn a_coeff_matches_series_product() {
    // independent route: assemble the same eta-type product with QSeries
    let n_max = 2000usize;
    let mut product = QSeries::one(n_max - 1);
    for period in [2usize, 4, 6, 12] {
        let mut step = period;
        while step < n_max {
            let mut factor = vec![0i64; n_max];
            factor[0] = 1;
            factor[step] = -1;
            product = product.mul(&QSeries::from_coeffs(factor));
            step += period;
        }
    }
    let shifted = product.shift(1);
    let table = a_coeff_table(n_max);
    for n in 1..=n_max {
        assert_eq!(table[n], shifted.coeff(n), "a({n})");
    }
}

#[test]
fn g1_matches_jacobi_identity_expansion() {
    // q psi(q^6) prod (1-q^2k)^3 expanded through the two-square double sum:
    // sum over k,m >= 0 of (-1)^k (2k+1) q^(1 + 3m(m+1) + k(k+1))
    let n_max = 1000usize;
    let mut series = vec![0i64; n_max + 1];
    let mut m = 0usize;
    while 3 * m * (m + 1) < n_max {
        let mut k = 0usize;
        loop {
            let e = 1 + 3 * m * (m + 1) + k * (k + 1);
            if e > n_max {
                break;
            }
            let term = (2 * k + 1) as i64;
            series[e] += if k.is_multiple_of(2) { term } else { -term };
            k += 1;
        }
        m += 1;
    }
    for n in 1..=n_max {
        assert_eq!(g1(n as u64), series[n], "g1({n})");
    }
}
