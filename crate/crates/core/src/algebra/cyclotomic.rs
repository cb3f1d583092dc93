//! Cyclotomic polynomials and Euler's totient.

use std::collections::BTreeMap;

use super::field::Rationals;
use super::unipoly::UniPoly;

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// `Φ_n` for one `n`.
pub fn cyclotomic(n: u64) -> UniPoly<Rationals> {
    let mut cache = BTreeMap::new();
    cyclotomic_cached(n, &mut cache)
}

/// `Φ_n` computed as `(t^n - 1) / Π_{d | n, d < n} Φ_d`, memoized in `cache`.
pub fn cyclotomic_cached(n: u64, cache: &mut BTreeMap<u64, Vec<i64>>) -> UniPoly<Rationals> {
    UniPoly::from_i64s(Rationals, &cyclotomic_coeffs(n, cache))
}

/// Integer coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_coeffs(n: u64, cache: &mut BTreeMap<u64, Vec<i64>>) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic index must be positive");
    if let Some(p) = cache.get(&n) {
        return p.clone();
    }
    let mut acc = vec![0i64; n as usize + 1];
    acc[0] = -1;
    acc[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = cyclotomic_coeffs(d, cache);
        acc = divide_monic_exact(&acc, &phi_d);
    }
    cache.insert(n, acc.clone());
    acc
}

fn divide_monic_exact(a: &[i64], d: &[i64]) -> Vec<i64> {
    let dd = d.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![0i64; a.len() - dd];
    for k in (0..q.len()).rev() {
        let c = r[k + dd];
        if c == 0 {
            continue;
        }
        for (j, b) in d.iter().enumerate() {
            r[k + j] -= c * b;
        }
        q[k] = c;
    }
    debug_assert!(r.iter().all(|&x| x == 0), "inexact cyclotomic division");
    q
}

/// Every `n` with `φ(n) <= max_degree`. Since `φ(n) >= sqrt(n/2)`, the
/// search stops at `2 * max_degree^2`.
pub fn indices_with_phi_at_most(max_degree: u64) -> Vec<u64> {
    (1..=2 * max_degree * max_degree).filter(|&n| euler_phi(n) <= max_degree).collect()
}
