//! Smoothness, global and local Tjurina numbers, and singularity labels.

pub mod classify;
pub mod groebner;
pub mod hilbert;
pub mod local;
pub mod points;
pub mod report;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::field::random_prime;
use crate::algebra::{Field, MultiPoly, PrimeField, Rationals};

pub use classify::{classify, Classification, SingularityLabel};
pub use local::{local_algebra, LocalAlgebra};
pub use report::{full_report, Residual, SingularityReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SingularityError {
    #[error("the point does not lie on the hypersurface")]
    NotOnHypersurface,
    #[error("singular locus is not zero-dimensional")]
    NotIsolated,
    #[error("Hilbert function did not stabilize by degree {0}")]
    NoStabilization(u32),
    #[error("global Tjurina numbers disagree between primes: {0:?}")]
    PrimeDisagreement(Vec<(u32, usize)>),
    #[error("no usable prime found")]
    NoGoodPrime,
    #[error("singular point is not defined over Q")]
    NonRationalSingularPoint,
}

/// Degrees checked for vanishing of the Jacobian quotient of a cubic fourfold.
pub const SMOOTHNESS_DEGREES: [u32; 3] = [7, 8, 9];

/// Last degree tried when waiting for the Hilbert function to stabilize.
pub const MAX_HILBERT_DEGREE: u32 = 15;

/// Whether `V(F)` is smooth, over whatever field `F` is defined over:
/// `(S/J)_d = 0` for `d = 7, 8, 9`.
pub fn is_smooth_over<F: Field>(form: &MultiPoly<F>) -> bool {
    let dims = hilbert::jacobian_quotient_dims(form, *SMOOTHNESS_DEGREES.last().expect("nonempty"));
    SMOOTHNESS_DEGREES.iter().all(|d| dims.iter().any(|(e, v)| e == d && *v == 0))
}

fn reduce_mod<R: Rng>(form: &MultiPoly<Rationals>, rng: &mut R) -> (PrimeField, MultiPoly<PrimeField>) {
    loop {
        let fp = PrimeField::new(random_prime(rng));
        if let Ok(g) = form.map_field(&fp, |c| fp.from_rational(c)) {
            if g.len() == form.len() {
                return (fp, g);
            }
        }
    }
}

/// Smoothness of a rational cubic. Vanishing modulo a prime certifies
/// vanishing over `Q`; a nonzero answer is confirmed with a second prime,
/// or decided exactly when `exact` is set.
pub fn is_smooth<R: Rng>(form: &MultiPoly<Rationals>, exact: bool, rng: &mut R) -> bool {
    if exact {
        return is_smooth_over(form);
    }
    for _ in 0..2 {
        let (_, g) = reduce_mod(form, rng);
        if is_smooth_over(&g) {
            return true;
        }
    }
    false
}

/// Hilbert function of `S/J` with the stable value it reached.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct HilbertProfile {
    /// `None` for exact computation over `Q`.
    pub prime: Option<u32>,
    pub dims: Vec<(u32, usize)>,
    pub stable_from: u32,
    pub tau: usize,
}

/// Computes `dim (S/J)_d` until three consecutive degrees `>= 6` agree.
pub fn hilbert_profile<F: Field>(form: &MultiPoly<F>) -> Result<(Vec<(u32, usize)>, u32, usize), SingularityError> {
    let mut dims = Vec::new();
    for (d, v) in hilbert::JacobianPieces::new(form) {
        dims.push((d, v));
        if d >= 8 {
            let k = dims.len();
            let last: Vec<usize> = dims[k - 3..].iter().map(|x| x.1).collect();
            if last[0] == last[1] && last[1] == last[2] {
                return Ok((dims, d - 2, v));
            }
        }
        if d >= MAX_HILBERT_DEGREE {
            return Err(SingularityError::NoStabilization(MAX_HILBERT_DEGREE));
        }
    }
    unreachable!("graded pieces never run out")
}

/// Global Tjurina number of a hypersurface with isolated singularities.
/// Modular by default: two random primes must agree (a third breaks ties).
pub fn global_tjurina<R: Rng>(form: &MultiPoly<Rationals>, exact: bool, rng: &mut R) -> Result<HilbertProfile, SingularityError> {
    if exact {
        let (dims, stable_from, tau) = hilbert_profile(form)?;
        return Ok(HilbertProfile { prime: None, dims, stable_from, tau });
    }
    let mut runs: Vec<HilbertProfile> = Vec::new();
    for attempt in 0..3 {
        let (fp, g) = reduce_mod(form, rng);
        let (dims, stable_from, tau) = hilbert_profile(&g)?;
        runs.push(HilbertProfile { prime: Some(fp.modulus()), dims, stable_from, tau });
        if attempt >= 1 {
            let taus: Vec<usize> = runs.iter().map(|r| r.tau).collect();
            if let Some(r) = runs.iter().find(|r| taus.iter().filter(|&&t| t == r.tau).count() >= 2) {
                return Ok(r.clone());
            }
        }
    }
    Err(SingularityError::PrimeDisagreement(runs.iter().map(|r| (r.prime.unwrap_or(0), r.tau)).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, F2};
    use rand::SeedableRng;

    #[test]
    fn fermat_cubic_is_smooth() {
        let f = parse_poly("x0^3 + x1^3 + x2^3 + x3^3 + x4^3 + x5^3", 6).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        assert!(is_smooth(&f, false, &mut rng));
        assert!(is_smooth(&f, true, &mut rng));
        // x^3 is not smooth in characteristic 3 but is in characteristic 2
        let f2 = f.map_field(&F2, |c| F2.from_rational(c)).unwrap();
        assert!(is_smooth_over(&f2));
    }

    #[test]
    fn cone_is_singular() {
        let f = parse_poly("x0^3 + x1^3 + x2^3 + x3^3 + x4^3", 6).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        assert!(!is_smooth(&f, false, &mut rng));
    }

    #[test]
    fn global_tau_of_nodal_surface() {
        // Cayley cone: four A2 points
        let f = parse_poly("x1*x2*x3 + x0*x2*x3 + x0*x1*x3 + x0*x1*x2 + x4^3", 5).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let h = global_tjurina(&f, false, &mut rng).unwrap();
        assert_eq!(h.tau, 8);
        assert_eq!(global_tjurina(&f, true, &mut rng).unwrap().tau, 8);
    }

    #[test]
    fn non_isolated_does_not_stabilize() {
        let f = parse_poly("x0^2*x1 + x2^3", 5).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        assert!(matches!(global_tjurina(&f, false, &mut rng), Err(SingularityError::NoStabilization(_))));
    }
}
