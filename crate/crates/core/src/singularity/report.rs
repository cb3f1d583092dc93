//! Full singularity report for a cubic threefold `f(x0..x4)`.

use num_rational::BigRational;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{Monomial, MultiPoly, Rationals};

use super::classify::{classify, Classification, SingularityLabel};
use super::local::local_algebra;
use super::points::{count_geometric_points, rational_singular_points};
use super::{global_tjurina, HilbertProfile, SingularityError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PointAnalysis {
    pub point: Vec<String>,
    pub chart: usize,
    pub classification: Classification,
    pub t1_basis: Vec<Monomial>,
}

/// What is left of the global Tjurina number after the rational points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "kind")]
pub enum Residual {
    None,
    Accounted { labels: Vec<SingularityLabel> },
    Unresolved { tau: i64, points: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SingularityReport {
    pub hilbert: HilbertProfile,
    pub global_tau: usize,
    /// Length of the singular scheme from the Gröbner route.
    pub groebner_length: usize,
    pub geometric_points: usize,
    pub points: Vec<PointAnalysis>,
    pub residual: Residual,
}

impl SingularityReport {
    /// Every label, rational points first, then those inferred for the residual.
    pub fn labels(&self) -> Vec<SingularityLabel> {
        let mut v: Vec<SingularityLabel> = self.points.iter().map(|p| p.classification.label).collect();
        if let Residual::Accounted { labels } = &self.residual {
            v.extend(labels.iter().copied());
        }
        v
    }

    /// Multiset comparison against labels like `["D5", "A1"]`.
    pub fn matches(&self, expected: &[&str]) -> bool {
        if matches!(self.residual, Residual::Unresolved { .. }) {
            return false;
        }
        let mut got: Vec<String> = self.labels().iter().map(|l| l.to_string()).collect();
        let mut want: Vec<String> = expected.iter().map(|s| s.to_string()).collect();
        got.sort();
        want.sort();
        got == want
    }

    pub fn local_tau_sum(&self) -> usize {
        self.points.iter().map(|p| p.classification.tau).sum()
    }
}

pub fn format_point(p: &[BigRational]) -> Vec<String> {
    p.iter().map(|c| c.to_string()).collect()
}

/// Local analysis at a rational point of `V(f)`.
pub fn analyze_point(f: &MultiPoly<Rationals>, point: &[BigRational]) -> Result<PointAnalysis, SingularityError> {
    let chart = point.iter().position(|c| c != &BigRational::from_integer(0.into())).ok_or(SingularityError::NotOnHypersurface)?;
    let g = f.dehomogenize(chart, point).map_err(|_| SingularityError::NotOnHypersurface)?;
    let alg = local_algebra(&g)?;
    let classification = classify(&g, alg.tau());
    Ok(PointAnalysis { point: format_point(point), chart, classification, t1_basis: alg.basis })
}

fn residual(tau: i64, points: i64) -> Residual {
    use SingularityLabel::A;
    match (tau, points) {
        (0, 0) => Residual::None,
        (1, 1) => Residual::Accounted { labels: vec![A(1)] },
        (2, 1) => Residual::Accounted { labels: vec![A(2)] },
        (2, 2) => Residual::Accounted { labels: vec![A(1), A(1)] },
        _ => Residual::Unresolved { tau, points },
    }
}

/// Global Tjurina number, local analysis at every rational singular point
/// (the point `[1:0:0:0:0]` first when singular), and an accounting of
/// whatever is not rational.
pub fn full_report<R: Rng>(f: &MultiPoly<Rationals>, exact: bool, rng: &mut R) -> Result<SingularityReport, SingularityError> {
    let hilbert = global_tjurina(f, exact, rng)?;
    let count = count_geometric_points(f, rng, 3)?;
    let mut pts = rational_singular_points(f)?;
    // the stratum search visits [1:0:0:0:0] first when it is singular
    pts.sort_by_key(|p| p.iter().skip(1).any(|c| c != &BigRational::from_integer(0.into())));
    let points = pts.iter().map(|p| analyze_point(f, p)).collect::<Result<Vec<_>, _>>()?;
    let local_sum: usize = points.iter().map(|p| p.classification.tau).sum();
    let residual = residual(hilbert.tau as i64 - local_sum as i64, count.points as i64 - points.len() as i64);
    Ok(SingularityReport {
        global_tau: hilbert.tau,
        hilbert,
        groebner_length: count.length,
        geometric_points: count.points,
        points,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;
    use rand::SeedableRng;

    #[test]
    fn residual_accounting() {
        assert_eq!(residual(0, 0), Residual::None);
        assert_eq!(residual(2, 2), Residual::Accounted { labels: vec![SingularityLabel::A(1); 2] });
        assert_eq!(residual(3, 1), Residual::Unresolved { tau: 3, points: 1 });
    }

    #[test]
    fn cayley_cone_report() {
        let f = parse_poly("x1*x2*x3 + x0*x2*x3 + x0*x1*x3 + x0*x1*x2 + x4^3", 5).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let r = full_report(&f, false, &mut rng).unwrap();
        assert_eq!(r.global_tau, 8);
        assert_eq!(r.groebner_length, 8);
        assert_eq!(r.points.len(), 4);
        assert!(r.matches(&["A2", "A2", "A2", "A2"]));
        assert_eq!(r.residual, Residual::None);
    }
}
