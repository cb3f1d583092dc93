//! From point counts to candidates for the characteristic polynomial of
//! Frobenius on the 22-dimensional primitive cohomology, twisted by `q^2`.

use nalgebra::{DMatrix, Schur};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::field::denominator_is_power_of_two;
use crate::algebra::{Rationals, UniPoly};

use super::certify::{cyclotomic_scan, irreducible_over_q, IrreducibilityWitness, Verdict};
use super::count::CountRecord;
use super::ZetaError;

/// Dimension of the primitive middle cohomology of a cubic fourfold.
pub const DIM: usize = 22;
/// Tolerance of the numeric unit-circle screen.
pub const UNIT_CIRCLE_TOLERANCE: f64 = 1e-8;

/// Traces `t_1, t_2, ..` of the normalised Frobenius. They lie in
/// `Z[1/2]`: `q t_m` is an integer but `t_m` itself need not be.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TraceVector(#[serde(with = "rational_strings")] pub Vec<BigRational>);

mod rational_strings {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|c| c.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| s.parse().map_err(|_| serde::de::Error::custom(format!("bad rational {s}"))))
            .collect()
    }
}

/// `(N - (q^4 + q^3 + q^2 + q + 1)) / q^2` for `q = 2^m`. The numerator
/// must be divisible by `q` and the result must satisfy `|t| <= 22`.
pub fn trace_from_count(m: u32, n: u64) -> Result<BigRational, ZetaError> {
    let q = 1i128 << m;
    let main = q * q * q * q + q * q * q + q * q + q + 1;
    let diff = n as i128 - main;
    if diff % q != 0 {
        return Err(ZetaError::TraceDenominator { m });
    }
    if diff.abs() > DIM as i128 * q * q {
        return Err(ZetaError::WeilBoundViolation { m, excess: diff as i64 });
    }
    Ok(BigRational::new(BigInt::from(diff), BigInt::from(q * q)))
}

/// Traces for `m = 1..=k`, where `k` is the largest `m` such that every
/// smaller degree has a count.
pub fn traces(counts: &[CountRecord]) -> Result<TraceVector, ZetaError> {
    let mut t = Vec::new();
    for m in 1.. {
        let Some(rec) = counts.iter().find(|r| r.m == m) else { break };
        t.push(trace_from_count(m, rec.n)?);
    }
    if t.is_empty() {
        return Err(ZetaError::MissingCount(1));
    }
    Ok(TraceVector(t))
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Elementary symmetric functions `e_0 = 1, e_1, .., e_k` of the roots from
/// their power sums, via `k e_k = Σ (-1)^(i-1) e_(k-i) t_i`.
pub fn newton_charpoly(t: &[BigRational]) -> Vec<BigRational> {
    let mut e = vec![rat(1)];
    for k in 1..=t.len() {
        let mut acc = BigRational::zero();
        for i in 1..=k {
            let term = &e[k - i] * &t[i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e.push(acc / rat(k as i64));
    }
    e
}

/// Power sums `p_1..p_k` from `e_0..e_k`, inverting [`newton_charpoly`].
pub fn power_sums(e: &[BigRational]) -> Vec<BigRational> {
    let mut p: Vec<BigRational> = Vec::new();
    for k in 1..e.len() {
        let mut acc = &e[k] * rat(k as i64);
        for i in 1..k {
            let term = &e[k - i] * &p[i - 1];
            if i % 2 == 1 {
                acc -= term;
            } else {
                acc += term;
            }
        }
        p.push(if k % 2 == 1 { acc } else { -acc });
    }
    p
}

/// A monic degree-22 candidate with its certification data.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CharPolyCandidate {
    #[serde(serialize_with = "chi_to_strings", deserialize_with = "chi_from_strings")]
    pub chi: UniPoly<Rationals>,
    pub epsilon: i8,
    pub coefficient_denominators_are_powers_of2: bool,
    pub cyclotomic_factors: Vec<u64>,
    pub irreducibility_witness: Option<IrreducibilityWitness>,
    pub verdict: Verdict,
    /// Largest `| |λ| - 1 |` over numerically computed roots; ranking only.
    pub unit_circle_deviation: f64,
}

/// Coefficients as rational strings, degree ascending.
pub fn chi_to_strings<S: Serializer>(chi: &UniPoly<Rationals>, s: S) -> Result<S::Ok, S::Error> {
    let v: Vec<String> = chi.coeffs().iter().map(|c| c.to_string()).collect();
    v.serialize(s)
}

pub fn chi_from_strings<'de, D: Deserializer<'de>>(d: D) -> Result<UniPoly<Rationals>, D::Error> {
    let v: Vec<String> = Vec::deserialize(d)?;
    let coeffs = v
        .iter()
        .map(|s| s.parse::<BigRational>().map_err(|_| serde::de::Error::custom(format!("bad rational {s}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(UniPoly::new(Rationals, coeffs))
}

impl CharPolyCandidate {
    /// Runs the cyclotomic scan and the irreducibility test on `chi`.
    pub fn examine(chi: UniPoly<Rationals>, epsilon: i8) -> Self {
        let powers_of_2 = chi.coeffs().iter().all(denominator_is_power_of_two);
        let cyclotomic_factors = cyclotomic_scan(&chi);
        let irreducibility_witness = if powers_of_2 { irreducible_over_q(&chi).ok().flatten() } else { None };
        let verdict = if cyclotomic_factors.is_empty() { Verdict::NonSpecialCertified } else { Verdict::SpecialIndicated };
        let unit_circle_deviation = unit_circle_deviation(&chi);
        CharPolyCandidate {
            chi,
            epsilon,
            coefficient_denominators_are_powers_of2: powers_of_2,
            cyclotomic_factors,
            irreducibility_witness,
            verdict,
            unit_circle_deviation,
        }
    }

    pub fn roots_on_unit_circle(&self) -> bool {
        self.unit_circle_deviation <= UNIT_CIRCLE_TOLERANCE
    }

    /// `t^22 chi(1/t) = epsilon chi(t)`.
    pub fn satisfies_functional_equation(&self) -> bool {
        let rev = self.chi.reversed(DIM);
        let eps = self.chi.scale(&rat(self.epsilon as i64));
        rev == eps
    }

    pub fn has_non_integral_coefficient(&self) -> bool {
        !self.chi.is_integral()
    }
}

/// Largest distance of a companion-matrix eigenvalue from the unit circle.
pub fn unit_circle_deviation(chi: &UniPoly<Rationals>) -> f64 {
    let Some(n) = chi.degree().filter(|&d| d > 0) else { return 0.0 };
    let lead = chi.coeff(n).to_f64().unwrap_or(1.0);
    let mut comp = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        comp[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        comp[(i, n - 1)] = -chi.coeff(i).to_f64().unwrap_or(f64::NAN) / lead;
    }
    let Some(schur) = Schur::try_new(comp, f64::EPSILON, 10_000) else { return f64::MAX };
    let dev = schur.complex_eigenvalues().iter().map(|z| (z.norm() - 1.0).abs()).fold(0.0, f64::max);
    if dev.is_finite() {
        dev
    } else {
        f64::MAX
    }
}

/// Completes `e_0..e_11` to a degree-22 polynomial with
/// `e_(22-k) = epsilon e_k`. A nonzero `e_11` forces `epsilon = 1`;
/// otherwise both signs are returned. Candidates are sorted by
/// [`unit_circle_deviation`].
pub fn complete_functional(e: &[BigRational]) -> Result<Vec<CharPolyCandidate>, ZetaError> {
    let half = DIM / 2;
    if e.len() <= half {
        return Err(ZetaError::MissingCount((e.len().max(1)) as u32));
    }
    let signs: &[i8] = if e[half].is_zero() { &[1, -1] } else { &[1] };
    let mut out: Vec<CharPolyCandidate> = signs
        .iter()
        .map(|&eps| {
            let mut full: Vec<BigRational> = e[..=half].to_vec();
            for k in half + 1..=DIM {
                full.push(&e[DIM - k] * rat(eps as i64));
            }
            // coefficient of t^j is (-1)^(22-j) e_(22-j)
            let coeffs = (0..=DIM)
                .map(|j| {
                    let c = full[DIM - j].clone();
                    if (DIM - j) % 2 == 1 {
                        -c
                    } else {
                        c
                    }
                })
                .collect();
            CharPolyCandidate::examine(UniPoly::new(Rationals, coeffs), eps)
        })
        .collect();
    out.sort_by(|a, b| a.unit_circle_deviation.total_cmp(&b.unit_circle_deviation));
    Ok(out)
}

impl CharPolyCandidate {
    /// `e_0..e_22` read off the coefficients.
    pub fn elementary(&self) -> Vec<BigRational> {
        (0..=DIM)
            .map(|k| {
                let c = self.chi.coeff(DIM - k);
                if k % 2 == 1 {
                    -c
                } else {
                    c
                }
            })
            .collect()
    }

    /// Whether the roots of `chi` have power sums `t[0], t[1], ..`.
    pub fn matches_traces(&self, t: &[BigRational]) -> bool {
        let e = self.elementary();
        t.len() <= DIM && power_sums(&e[..=t.len()]) == t
    }
}

/// Counts for `m = 1..=11` to candidate characteristic polynomials. A count
/// for `m = 12` discards candidates whose twelfth power sum disagrees.
pub fn candidates_from_counts(counts: &[CountRecord]) -> Result<Vec<CharPolyCandidate>, ZetaError> {
    let t = traces(counts)?;
    if t.0.len() < DIM / 2 {
        return Err(ZetaError::MissingCount(t.0.len() as u32 + 1));
    }
    let all = complete_functional(&newton_charpoly(&t.0[..DIM / 2]))?;
    Ok(all.into_iter().filter(|c| c.matches_traces(&t.0)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_unipoly;
    use crate::fixtures::FIXTURES;

    fn rats(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn trace_of_a_simple_count() {
        let q = 8u64;
        assert_eq!(trace_from_count(3, q.pow(4) + q.pow(3) + 2 * q * q + q + 1).unwrap(), rat(1));
        assert_eq!(trace_from_count(3, q.pow(4) + q.pow(3) + q * q + 2 * q + 1).unwrap(), rat(1) / rat(8));
        assert!(matches!(trace_from_count(3, 100), Err(ZetaError::TraceDenominator { m: 3 })));
        let low = q.pow(4) + q.pow(3) + q * q + q + 1 - 23 * q * q;
        assert!(matches!(trace_from_count(3, low), Err(ZetaError::WeilBoundViolation { .. })));
    }

    #[test]
    fn newton_base_case_and_round_trip() {
        assert_eq!(newton_charpoly(&rats(&[5]))[1], rat(5));
        let t = rats(&[3, -1, 4, 1, -5, 9, 2, -6]);
        assert_eq!(power_sums(&newton_charpoly(&t)), t);
    }

    #[test]
    fn roots_of_unity_reconstruct_t22_minus_1() {
        // power sums of all 22nd roots of unity vanish below 22
        let e = newton_charpoly(&rats(&[0; 11]));
        let cands = complete_functional(&e).unwrap();
        assert_eq!(cands.len(), 2);
        let target = parse_unipoly("t^22 - 1").unwrap();
        let plus = parse_unipoly("t^22 + 1").unwrap();
        let chis: Vec<_> = cands.iter().map(|c| c.chi.clone()).collect();
        assert!(chis.contains(&target) && chis.contains(&plus));
        assert!(cands.iter().all(|c| c.satisfies_functional_equation()));
        assert!(cands.iter().all(|c| c.verdict == Verdict::SpecialIndicated));
    }

    #[test]
    fn printed_polynomials_are_self_consistent() {
        // the power sums of each printed χ are admissible traces, and
        // reconstructing from the first eleven returns χ
        for fx in FIXTURES.iter().filter(|f| f.chi.is_some()) {
            let chi = fx.printed_chi().unwrap();
            let e: Vec<BigRational> = (0..=DIM)
                .map(|k| {
                    let c = chi.coeff(DIM - k);
                    if k % 2 == 1 {
                        -c
                    } else {
                        c
                    }
                })
                .collect();
            let t = power_sums(&e[..=11]);
            for (i, x) in t.iter().enumerate() {
                let q = rat(1 << (i + 1));
                assert!((x * &q).is_integer(), "{}", fx.tag);
                assert!(x <= &rat(22) && x >= &rat(-22));
            }
            let cands = complete_functional(&newton_charpoly(&t)).unwrap();
            let c = cands.iter().find(|c| c.chi == chi).unwrap_or_else(|| panic!("{}", fx.tag));
            assert!(c.coefficient_denominators_are_powers_of2);
            assert!(c.satisfies_functional_equation());
            assert!(c.roots_on_unit_circle(), "{} {}", fx.tag, c.unit_circle_deviation);
        }
    }

    #[test]
    fn candidate_json_round_trip() {
        let chi = FIXTURES[0].printed_chi().unwrap();
        let c = CharPolyCandidate::examine(chi, 1);
        let s = serde_json::to_string(&c).unwrap();
        assert!(s.contains("\"chi\":[\"1\",\"0\",\"0\",\"-1/2\""));
        let back: CharPolyCandidate = serde_json::from_str(&s).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }

    #[test]
    fn twelfth_trace_separates_signs() {
        let chi = parse_unipoly("t^22 + t^12 + t^10 + 1").unwrap();
        let own = CharPolyCandidate::examine(chi.clone(), 1);
        let t = power_sums(&own.elementary()[..=12]);
        let both = complete_functional(&newton_charpoly(&t[..11])).unwrap();
        assert_eq!(both.len(), 2);
        let kept: Vec<&CharPolyCandidate> = both.iter().filter(|c| c.matches_traces(&t)).collect();
        assert_eq!(kept.len(), 1);
        assert_eq!(kept[0].chi, chi);
    }
}
