//! First-order deformations of the hyperplane section inside the fourfold:
//! Tjurina bases, the global-to-local map `φ`, and the T333 modular test.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::field::random_prime;
use crate::algebra::linalg::Matrix;
use crate::algebra::{Field, Monomial, MultiPoly, PrimeField, Rationals};
use crate::family::CubicFourfold;
use crate::singularity::hilbert::jacobian_piece;
use crate::singularity::report::format_point;
use crate::singularity::{local_algebra, LocalAlgebra, Residual, SingularityError, SingularityLabel, SingularityReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DeformationError {
    #[error(transparent)]
    Singularity(#[from] SingularityError),
    #[error("expected a single T333 point at [1:0:0:0:0], found {0}")]
    NotT333(String),
    #[error("Tjurina basis has {0} monomials of weight 1, expected exactly one")]
    WeightStructure(usize),
}

/// Monomial basis of `T¹ = k[[x]]/(g, ∂g)` at one point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct T1Basis {
    pub point: Vec<String>,
    pub chart: usize,
    /// Local monomials in the chart variables (the chart variable removed).
    pub monomials: Vec<Monomial>,
    pub truncation_order: u32,
}

impl T1Basis {
    /// Monomials written in the global names `x0..x4`.
    pub fn global_names(&self) -> Vec<String> {
        let names: Vec<String> = (0..5).filter(|&i| i != self.chart).map(|i| format!("x{i}")).collect();
        self.monomials.iter().map(|m| m.format_with(&names)).collect()
    }
}

/// Tjurina basis of a germ at the origin.
pub fn t1_basis(g: &MultiPoly<Rationals>) -> Result<(LocalAlgebra<Rationals>, Vec<Monomial>), SingularityError> {
    let alg = local_algebra(g)?;
    let basis = alg.basis.clone();
    Ok((alg, basis))
}

/// Coordinates of `h` modulo the Tjurina ideal.
pub fn normal_form(h: &MultiPoly<Rationals>, algebra: &LocalAlgebra<Rationals>) -> Vec<BigRational> {
    algebra.normal_form(h)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PhiMatrix {
    pub bases: Vec<T1Basis>,
    /// Row-major entries as rational strings; one row per basis monomial.
    pub entries: Vec<Vec<String>>,
    pub rank: usize,
}

impl PhiMatrix {
    pub fn nrows(&self) -> usize {
        self.entries.len()
    }

    pub fn matrix(&self) -> Matrix<Rationals> {
        let rows = self.entries.iter().map(|r| r.iter().map(|s| s.parse().expect("rational")).collect()).collect();
        Matrix::from_rows(Rationals, rows, 5)
    }
}

fn rational_point(strings: &[String]) -> Vec<BigRational> {
    strings.iter().map(|s| s.parse().expect("formatted rational")).collect()
}

/// Local data at one rational singular point of the section.
struct PointData {
    basis: T1Basis,
    algebra: LocalAlgebra<Rationals>,
    coords: Vec<BigRational>,
}

fn point_data(f: &MultiPoly<Rationals>, point: &[BigRational]) -> Result<PointData, SingularityError> {
    let chart = point.iter().position(|c| !c.is_zero()).ok_or(SingularityError::NotOnHypersurface)?;
    let g = f.dehomogenize(chart, point).map_err(|_| SingularityError::NotOnHypersurface)?;
    let algebra = local_algebra(&g)?;
    let basis = T1Basis {
        point: format_point(point),
        chart,
        monomials: algebra.basis.clone(),
        truncation_order: algebra.order,
    };
    Ok(PointData { basis, algebra, coords: point.to_vec() })
}

/// Builds `φ: l -> (q̄ l at each singular point)` with `q̄ = ∂F/∂x5 |_{x5=0}`.
/// Columns are the global forms `x0..x4`; at `[1:0:0:0:0]` these are
/// `1, x1, .., x4` in the chart. Every singular point must be rational.
pub fn phi_matrix(cubic: &CubicFourfold, report: &SingularityReport) -> Result<PhiMatrix, DeformationError> {
    if report.residual != Residual::None {
        return Err(SingularityError::NonRationalSingularPoint.into());
    }
    let f = cubic.section();
    let qbar = cubic.normal_derivative();
    let data = report
        .points
        .iter()
        .map(|p| point_data(&f, &rational_point(&p.point)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(assemble_phi(&qbar, data)?)
}

fn assemble_phi(qbar: &MultiPoly<Rationals>, data: Vec<PointData>) -> Result<PhiMatrix, SingularityError> {
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for d in &data {
        let mut block: Vec<Vec<BigRational>> = vec![Vec::with_capacity(5); d.algebra.tau()];
        for j in 0..5 {
            let h = qbar * &MultiPoly::var(Rationals, 5, j);
            let local = h.dehomogenize(d.basis.chart, &d.coords).map_err(|_| SingularityError::NotOnHypersurface)?;
            for (r, v) in d.algebra.normal_form(&local).into_iter().enumerate() {
                block[r].push(v);
            }
        }
        rows.extend(block);
    }
    let rank = Matrix::from_rows(Rationals, rows.clone(), 5).rank();
    Ok(PhiMatrix {
        bases: data.into_iter().map(|d| d.basis).collect(),
        entries: rows.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect(),
        rank,
    })
}

/// Rank of `φ` by a global route: `l -> q̄ l ℓ^{D-3}` in `(S/J)_D` modulo a
/// random prime, where `D` is in the stable range of the Hilbert function
/// and `ℓ` is a random linear form (nonzero at every singular point with
/// high probability).
pub fn phi_rank_global<R: Rng>(cubic: &CubicFourfold, degree: u32, rng: &mut R) -> usize {
    let f = cubic.section();
    let qbar = cubic.normal_derivative();
    let (fp, fm, qm) = loop {
        let fp = PrimeField::new(random_prime(rng));
        let conv = |p: &MultiPoly<Rationals>| p.map_field(&fp, |c| fp.from_rational(c));
        if let (Ok(a), Ok(b)) = (conv(&f), conv(&qbar)) {
            break (fp, a, b);
        }
    };
    let piece = jacobian_piece(&fm, degree);
    let ell = MultiPoly::from_terms(fp, 5, (0..5).map(|i| (Monomial::var(i), rng.gen_range(1..fp.modulus()))));
    let lift = ell.pow(degree - 3);
    let cols: Vec<Vec<u32>> = (0..5)
        .map(|j| piece.reduce(&(&(&qm * &MultiPoly::var(fp, 5, j)) * &lift)))
        .collect();
    let n = cols[0].len();
    let rows: Vec<Vec<u32>> = (0..n).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    Matrix::from_rows(fp, rows, 5).rank()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ModularReport {
    pub basis: T1Basis,
    pub weights: Vec<String>,
    pub modular_index: usize,
    pub rank: usize,
    pub in_image: bool,
}

/// Weight of a local monomial in chart `x0 = 1` with `wt(x1) = 1/2` and
/// `wt(x2) = wt(x3) = wt(x4) = 1/3`.
pub fn t333_weight(m: &Monomial) -> BigRational {
    let half = BigRational::new(BigInt::from(m.exp(0)), BigInt::from(2));
    let third = BigRational::new(BigInt::from(m.exp(1) + m.exp(2) + m.exp(3)), BigInt::from(3));
    half + third
}

/// Tests whether the weight-1 direction of the T333 point lies in the image of `φ`.
pub fn t333_modular_check(cubic: &CubicFourfold) -> Result<ModularReport, DeformationError> {
    let f = cubic.section();
    let origin: Vec<BigRational> = (0..5).map(|i| if i == 0 { BigRational::one() } else { BigRational::zero() }).collect();
    let data = point_data(&f, &origin)?;
    let g = f.dehomogenize(0, &origin).map_err(|_| SingularityError::NotOnHypersurface)?;
    let label = crate::singularity::classify(&g, data.algebra.tau()).label;
    if label != SingularityLabel::T333 {
        return Err(DeformationError::NotT333(label.to_string()));
    }
    let weights: Vec<BigRational> = data.basis.monomials.iter().map(t333_weight).collect();
    let ones: Vec<usize> = weights.iter().enumerate().filter(|(_, w)| w.is_one()).map(|(i, _)| i).collect();
    if ones.len() != 1 {
        return Err(DeformationError::WeightStructure(ones.len()));
    }
    let modular_index = ones[0];
    let phi = assemble_phi(&cubic.normal_derivative(), vec![data])?;
    let m = phi.matrix();
    let mut e = Matrix::zeros(Rationals, m.nrows(), 1);
    e.set(modular_index, 0, BigRational::one());
    let in_image = m.hstack(&e).rank() == phi.rank;
    Ok(ModularReport {
        basis: phi.bases[0].clone(),
        weights: weights.iter().map(|w| w.to_string()).collect(),
        modular_index,
        rank: phi.rank,
        in_image,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DeformationPoint {
    pub point: Vec<String>,
    pub tau_basis: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DeformationReport {
    pub points: Vec<DeformationPoint>,
    pub rank: usize,
    pub modular: Option<ModularReport>,
}

/// `φ` and, when the section has a T333 point, the modular test.
pub fn deformation_report(cubic: &CubicFourfold, report: &SingularityReport) -> Result<DeformationReport, DeformationError> {
    let phi = phi_matrix(cubic, report)?;
    let modular = if report.labels() == [SingularityLabel::T333] { Some(t333_modular_check(cubic)?) } else { None };
    Ok(DeformationReport {
        points: phi
            .bases
            .iter()
            .map(|b| DeformationPoint { point: b.point.clone(), tau_basis: b.global_names() })
            .collect(),
        rank: phi.rank,
        modular,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;
    use crate::family::FamilyTag;
    use crate::fixtures::fixture;
    use crate::singularity::full_report;
    use rand::SeedableRng;

    #[test]
    fn normal_form_basics() {
        let g = parse_poly("x0^2 + x1^2 + x2^3 + x3^4", 4).unwrap();
        let (alg, basis) = t1_basis(&g).unwrap();
        assert_eq!(basis.len(), 6);
        assert!(normal_form(&g, &alg).iter().all(|c| c.is_zero()));
        for d in g.gradient() {
            assert!(normal_form(&d, &alg).iter().all(|c| c.is_zero()));
        }
        let one = normal_form(&MultiPoly::one(Rationals, 4), &alg);
        assert!(one[0].is_one() && one[1..].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn zero_normal_derivative_gives_rank_zero() {
        let c = fixture(FamilyTag::E6).fourfold();
        let f = c.section();
        let mut form = f.with_nvars(6);
        form.add_term(Monomial::from_vars(&[5, 5, 5]), BigRational::one());
        let degenerate = CubicFourfold::new(form, None).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let report = full_report(&f, false, &mut rng).unwrap();
        assert_eq!(phi_matrix(&degenerate, &report).unwrap().rank, 0);
    }

    #[test]
    fn t333_weights_and_witness() {
        let c = fixture(FamilyTag::T333).fourfold();
        let r = t333_modular_check(&c).unwrap();
        let mut w = r.weights.clone();
        w.sort();
        assert_eq!(w, ["0", "1", "1/3", "1/3", "1/3", "2/3", "2/3", "2/3"]);
        // q chosen so that the normal derivative is x4^2: x4 * x4^2 hits the modular direction
        let mut form = c.section().with_nvars(6);
        form.add_term(Monomial::from_vars(&[5, 4, 4]), BigRational::one());
        let witness = CubicFourfold::new(form, None).unwrap();
        assert!(t333_modular_check(&witness).unwrap().in_image);
    }

    #[test]
    fn non_t333_rejected() {
        let c = fixture(FamilyTag::E6).fourfold();
        assert!(matches!(t333_modular_check(&c), Err(DeformationError::NotT333(_))));
    }
}
