//! Cyclotomic factors, irreducibility, and the final verdict.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::cyclotomic::{cyclotomic_cached, euler_phi, indices_with_phi_at_most};
use crate::algebra::field::denominator_is_power_of_two;
use crate::algebra::{Field, PrimeField, Rationals, UniPoly};

use super::charpoly::CharPolyCandidate;
use super::ZetaError;

/// Primes tried, in order, for an irreducibility witness.
pub const IRREDUCIBILITY_PRIMES: [u32; 8] = [3, 5, 7, 11, 13, 17, 19, 23];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    NonSpecialCertified,
    Inconclusive,
    SpecialIndicated,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Debug::fmt(self, f)
    }
}

/// Every `n` with `Φ_n | chi`, over all `n` with `φ(n) <= deg chi`.
pub fn cyclotomic_scan(chi: &UniPoly<Rationals>) -> Vec<u64> {
    let Some(deg) = chi.degree() else { return Vec::new() };
    let mut cache = BTreeMap::new();
    indices_with_phi_at_most(deg as u64)
        .into_iter()
        .filter(|&n| {
            euler_phi(n) <= deg as u64 && chi.rem(&cyclotomic_cached(n, &mut cache)).map(|r| r.is_zero()).unwrap_or(false)
        })
        .collect()
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: a monic squarefree `f` of degree `n` is irreducible over
/// `F_p` iff `t^(p^n) = t mod f` and `gcd(t^(p^(n/r)) - t, f) = 1` for
/// every prime `r | n`.
pub fn irreducible_mod_p(f: &UniPoly<PrimeField>) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    let field = f.field().clone();
    let p = field.modulus() as u128;
    let f = f.monic();
    if f.gcd(&f.derivative()).degree() != Some(0) {
        return false;
    }
    let t = UniPoly::monomial(field.clone(), 1, field.one());
    // frob[k] = t^(p^k) mod f
    let mut frob = vec![t.rem(&f).expect("nonzero modulus")];
    for k in 1..=n {
        let next = frob[k - 1].pow_mod(p, &f).expect("nonzero modulus");
        frob.push(next);
    }
    if frob[n] != frob[0] {
        return false;
    }
    prime_divisors(n).into_iter().all(|r| f.gcd(&frob[n / r].sub(&t)).degree() == Some(0))
}

/// Degrees of the irreducible factors of a monic squarefree `f` over
/// `F_p`, by distinct-degree factorisation.
pub fn degree_pattern(f: &UniPoly<PrimeField>) -> Vec<usize> {
    let field = f.field().clone();
    let p = field.modulus() as u128;
    let t = UniPoly::monomial(field.clone(), 1, field.one());
    let mut rest = f.monic();
    let mut h = t.clone();
    let mut out = Vec::new();
    let mut d = 0;
    while let Some(n) = rest.degree().filter(|&n| n > 0) {
        d += 1;
        if n < 2 * d {
            out.push(n);
            break;
        }
        h = h.pow_mod(p, &rest).expect("nonzero modulus");
        let g = rest.gcd(&h.sub(&t));
        let k = g.degree().unwrap_or(0);
        if k > 0 {
            out.extend(std::iter::repeat(d).take(k / d));
            rest = rest.div_rem(&g).expect("nonzero divisor").0;
            h = h.rem(&rest).expect("nonzero modulus");
        }
    }
    out
}

/// Proof that a polynomial over `Q` is irreducible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "kind")]
pub enum IrreducibilityWitness {
    /// Irreducible modulo this prime.
    Prime { prime: u32 },
    /// The possible degrees of a factor, read off the factorisation
    /// patterns modulo these primes, have only `0` and `deg` in common.
    DegreePatterns { primes: Vec<u32> },
}

fn subset_sums(parts: &[usize], n: usize) -> Vec<bool> {
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for &d in parts {
        for s in (d..=n).rev() {
            reach[s] |= reach[s - d];
        }
    }
    reach
}

/// Tries each prime of [`IRREDUCIBILITY_PRIMES`] for irreducibility of the
/// reduction, then combines the factorisation patterns over the same primes.
/// `None` proves nothing.
pub fn irreducible_over_q(chi: &UniPoly<Rationals>) -> Result<Option<IrreducibilityWitness>, ZetaError> {
    if !chi.coeffs().iter().all(denominator_is_power_of_two) {
        return Err(ZetaError::DenominatorNotPowerOfTwo);
    }
    let Some(lead) = chi.leading() else { return Ok(None) };
    let n = chi.degree().unwrap_or(0);
    let monic = chi.scale(&Rationals.inv(lead).expect("nonzero leading coefficient"));
    let mut reductions = Vec::new();
    for p in IRREDUCIBILITY_PRIMES {
        let fp = PrimeField::new(p);
        let Some(reduced) = monic.map_field(&fp, |c| fp.from_rational(c)) else { continue };
        if reduced.degree() != Some(n) {
            continue;
        }
        if irreducible_mod_p(&reduced) {
            return Ok(Some(IrreducibilityWitness::Prime { prime: p }));
        }
        reductions.push((p, reduced));
    }
    let mut possible = vec![true; n + 1];
    let mut used = Vec::new();
    for (p, reduced) in reductions {
        if reduced.gcd(&reduced.derivative()).degree() != Some(0) {
            continue;
        }
        let sums = subset_sums(&degree_pattern(&reduced), n);
        used.push(p);
        for (k, ok) in possible.iter_mut().enumerate() {
            *ok &= sums[k];
        }
        if (1..n).all(|k| !possible[k]) {
            return Ok(Some(IrreducibilityWitness::DegreePatterns { primes: used }));
        }
    }
    Ok(None)
}

/// Outcome over all surviving candidates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Certificate {
    pub verdict: Verdict,
    pub candidates: usize,
    /// Every candidate is irreducible over `Q` with a non-integral coefficient.
    pub strong_evidence: bool,
    pub irreducibility_witnesses: Vec<Option<IrreducibilityWitness>>,
}

/// Non-special when no candidate has a cyclotomic factor, special when the
/// only candidate has one, inconclusive otherwise.
pub fn certify(candidates: &[CharPolyCandidate]) -> Result<Certificate, ZetaError> {
    if candidates.is_empty() {
        return Err(ZetaError::NoCandidates);
    }
    let clean = candidates.iter().all(|c| c.cyclotomic_factors.is_empty());
    let verdict = if clean {
        Verdict::NonSpecialCertified
    } else if candidates.len() == 1 {
        Verdict::SpecialIndicated
    } else {
        Verdict::Inconclusive
    };
    Ok(Certificate {
        verdict,
        candidates: candidates.len(),
        strong_evidence: candidates.iter().all(|c| c.irreducibility_witness.is_some() && c.has_non_integral_coefficient()),
        irreducibility_witnesses: candidates.iter().map(|c| c.irreducibility_witness.clone()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_unipoly;
    use crate::fixtures::FIXTURES;

    #[test]
    fn scan_of_t22_minus_1() {
        assert_eq!(cyclotomic_scan(&parse_unipoly("t^22 - 1").unwrap()), vec![1, 2, 11, 22]);
    }

    #[test]
    fn scan_finds_a_linear_factor() {
        let f = parse_unipoly("t - 1").unwrap().mul(&parse_unipoly("t^21 + t + 1/2").unwrap());
        assert_eq!(cyclotomic_scan(&f), vec![1]);
    }

    #[test]
    fn small_irreducibility_witnesses() {
        assert_eq!(irreducible_over_q(&parse_unipoly("t^2 + 1").unwrap()).unwrap(), Some(IrreducibilityWitness::Prime { prime: 3 }));
        assert_eq!(irreducible_over_q(&parse_unipoly("t^2 - 1").unwrap()).unwrap(), None);
        assert!(irreducible_over_q(&parse_unipoly("t^2 + 1/3").unwrap()).is_err());
    }

    #[test]
    fn rabin_agrees_with_distinct_degree_factorisation() {
        use proptest::prelude::*;
        let fp = PrimeField::new(5);
        proptest!(ProptestConfig::with_cases(200), |(coeffs in proptest::collection::vec(0u32..5, 1..9))| {
            let mut c = coeffs.clone();
            c.push(1);
            let f = UniPoly::new(fp.clone(), c);
            if f.gcd(&f.derivative()).degree() == Some(0) {
                let pattern = degree_pattern(&f);
                prop_assert_eq!(pattern.iter().sum::<usize>(), f.degree().unwrap());
                prop_assert_eq!(irreducible_mod_p(&f), pattern.len() == 1);
            }
        });
    }

    #[test]
    fn degree_patterns_prove_irreducibility_of_the_e6_polynomial() {
        // every listed prime splits it, but the patterns at 19 and 23 are incompatible
        let chi = FIXTURES[0].printed_chi().unwrap();
        let w = irreducible_over_q(&chi).unwrap().unwrap();
        assert!(matches!(w, IrreducibilityWitness::DegreePatterns { .. }));
        let fp = PrimeField::new(19);
        let r = chi.map_field(&fp, |c| fp.from_rational(c)).unwrap();
        let mut pat = degree_pattern(&r);
        pat.sort();
        assert_eq!(pat, vec![6, 16]);
    }

    #[test]
    fn printed_polynomials_certify() {
        for fx in FIXTURES.iter().filter(|f| f.chi.is_some()) {
            let c = CharPolyCandidate::examine(fx.printed_chi().unwrap(), 1);
            assert!(c.cyclotomic_factors.is_empty(), "{}", fx.tag);
            assert!(c.irreducibility_witness.is_some(), "{}", fx.tag);
            assert_eq!(certify(&[c]).unwrap().verdict, Verdict::NonSpecialCertified);
        }
    }

    #[test]
    fn verdict_rules() {
        let clean = CharPolyCandidate::examine(FIXTURES[0].printed_chi().unwrap(), 1);
        let cyc = CharPolyCandidate::examine(parse_unipoly("t^22 - 1").unwrap(), 1);
        assert_eq!(certify(&[cyc.clone()]).unwrap().verdict, Verdict::SpecialIndicated);
        assert_eq!(certify(&[clean.clone(), cyc]).unwrap().verdict, Verdict::Inconclusive);
        assert!(certify(&[clean]).unwrap().strong_evidence);
        assert!(certify(&[]).is_err());
    }
}
