//! Point counts over `F_{2^m}` and non-speciality certificates.

pub mod certify;
pub mod charpoly;
pub mod conic;
pub mod count;
pub mod fibration;
pub mod line;
pub mod reduce;

use thiserror::Error;

pub use certify::{certify, cyclotomic_scan, irreducible_over_q, Certificate, IrreducibilityWitness, Verdict};
pub use charpoly::{candidates_from_counts, complete_functional, newton_charpoly, traces, CharPolyCandidate, TraceVector};
pub use conic::conic_count;
pub use count::{count_points, count_points_brute, count_points_plain, count_range, CountAlgorithm, CountRecord};
pub use fibration::{conic_fibration, ConicFibration};
pub use line::{find_line, LineWitness};
pub use reduce::{good_reduction, reduce_mod_2, ReducedCubic};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZetaError {
    #[error("a coefficient has even denominator, so the cubic is not defined over Z_(2)")]
    EvenDenominator,
    #[error("not a nonzero cubic form in x0..x5 over F_2")]
    NotReducedCubic,
    #[error("the reduction mod 2 is singular")]
    BadReduction,
    #[error("the line witness does not lie on the cubic")]
    InvalidWitness,
    #[error("extension degree {m} outside 1..={max}")]
    DegreeOutOfRange { m: u32, max: u32 },
    #[error("no point count for m = {0}")]
    MissingCount(u32),
    #[error("point count for m = {m} is not congruent to #P^4 modulo q")]
    TraceDenominator { m: u32 },
    #[error("point count for m = {m} is {excess} away from #P^4, beyond the Weil bound")]
    WeilBoundViolation { m: u32, excess: i64 },
    #[error("a coefficient denominator is not a power of 2")]
    DenominatorNotPowerOfTwo,
    #[error("no candidate polynomials to certify")]
    NoCandidates,
    #[error("thread pool: {0}")]
    ThreadPool(String),
    #[error("parse error: {0}")]
    Parse(String),
}
