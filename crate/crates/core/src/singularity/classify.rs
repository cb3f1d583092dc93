//! Labels for isolated hypersurface singularities from corank, the cubic
//! part on the Hessian kernel, and the Tjurina number.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::linalg::Matrix;
use crate::algebra::{Monomial, MultiPoly, Rationals};

use super::hilbert::jacobian_quotient_dims;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SingularityLabel {
    A(u32),
    D(u32),
    E(u32),
    T333,
    Unclassified,
}

impl fmt::Display for SingularityLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingularityLabel::A(k) => write!(f, "A{k}"),
            SingularityLabel::D(k) => write!(f, "D{k}"),
            SingularityLabel::E(k) => write!(f, "E{k}"),
            SingularityLabel::T333 => f.write_str("T333"),
            SingularityLabel::Unclassified => f.write_str("unclassified"),
        }
    }
}

impl FromStr for SingularityLabel {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "T333" {
            return Ok(SingularityLabel::T333);
        }
        if s == "unclassified" {
            return Ok(SingularityLabel::Unclassified);
        }
        let (head, tail) = s.split_at(s.len().min(1));
        let k: u32 = tail.parse().map_err(|_| format!("bad singularity label '{s}'"))?;
        match head {
            "A" => Ok(SingularityLabel::A(k)),
            "D" => Ok(SingularityLabel::D(k)),
            "E" => Ok(SingularityLabel::E(k)),
            _ => Err(format!("bad singularity label '{s}'")),
        }
    }
}

impl Serialize for SingularityLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SingularityLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Root pattern of a binary cubic form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum CubicRoots {
    Distinct,
    Double,
    Triple,
    Zero,
}

/// Hessian matrix of `g` at the origin.
pub fn hessian_at_origin(g: &MultiPoly<Rationals>) -> Matrix<Rationals> {
    let n = g.nvars();
    let mut h = Matrix::zeros(Rationals, n, n);
    for i in 0..n {
        for j in 0..n {
            let m = Monomial::var(i).mul(&Monomial::var(j));
            let c = g.coeff(&m);
            let v = if i == j { &c + &c } else { c };
            h.set(i, j, v);
        }
    }
    h
}

pub fn corank(g: &MultiPoly<Rationals>) -> usize {
    g.nvars() - hessian_at_origin(g).rank()
}

/// The cubic part of `g` restricted to the Hessian kernel, in kernel coordinates.
pub fn cubic_on_kernel(g: &MultiPoly<Rationals>) -> MultiPoly<Rationals> {
    let kernel = hessian_at_origin(g).kernel();
    let k = kernel.len();
    let images: Vec<MultiPoly<Rationals>> = (0..g.nvars())
        .map(|i| MultiPoly::from_terms(Rationals, k, kernel.iter().enumerate().map(|(j, v)| (Monomial::var(j), v[i].clone()))))
        .collect();
    g.homogeneous_part(3).substitute(&images).expect("variable counts agree")
}

pub fn binary_cubic_roots(c: &MultiPoly<Rationals>) -> CubicRoots {
    assert_eq!(c.nvars(), 2);
    let co = |e0: u16| c.coeff(&Monomial::from_exps(&[e0, 3 - e0]));
    let (a, b, cc, d) = (co(3), co(2), co(1), co(0));
    if [&a, &b, &cc, &d].iter().all(|x| x.is_zero()) {
        return CubicRoots::Zero;
    }
    let r = |n: i64| BigRational::from_integer(BigInt::from(n));
    let disc = &b * &b * &cc * &cc - r(4) * &a * &cc * &cc * &cc - r(4) * &b * &b * &b * &d - r(27) * &a * &a * &d * &d
        + r(18) * &a * &b * &cc * &d;
    if !disc.is_zero() {
        return CubicRoots::Distinct;
    }
    let h0 = &b * &b - r(3) * &a * &cc;
    let h1 = &b * &cc - r(9) * &a * &d;
    let h2 = &cc * &cc - r(3) * &b * &d;
    if h0.is_zero() && h1.is_zero() && h2.is_zero() {
        CubicRoots::Triple
    } else {
        CubicRoots::Double
    }
}

/// A plane cubic is smooth iff its Jacobian quotient vanishes in degree 4.
pub fn ternary_cubic_is_smooth(c: &MultiPoly<Rationals>) -> bool {
    assert_eq!(c.nvars(), 3);
    if c.is_zero() {
        return false;
    }
    jacobian_quotient_dims(c, 4).iter().find(|(d, _)| *d == 4).map(|(_, v)| *v) == Some(0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Classification {
    pub label: SingularityLabel,
    pub corank: usize,
    pub tau: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cubic_roots: Option<CubicRoots>,
}

/// Classifies the singularity of `g` at the origin with Tjurina number `tau`.
/// Combinations that do not fit the ADE/T333 pattern are `Unclassified`.
pub fn classify(g: &MultiPoly<Rationals>, tau: usize) -> Classification {
    let cr = corank(g);
    let mut roots = None;
    let label = match cr {
        0 if tau == 1 => SingularityLabel::A(1),
        1 if tau >= 2 => SingularityLabel::A(tau as u32),
        2 => {
            let r = binary_cubic_roots(&cubic_on_kernel(g));
            roots = Some(r);
            match r {
                CubicRoots::Distinct if tau == 4 => SingularityLabel::D(4),
                CubicRoots::Double if tau >= 5 => SingularityLabel::D(tau as u32),
                CubicRoots::Triple if (6..=8).contains(&tau) => SingularityLabel::E(tau as u32),
                _ => SingularityLabel::Unclassified,
            }
        }
        3 if tau == 8 && ternary_cubic_is_smooth(&cubic_on_kernel(g)) => SingularityLabel::T333,
        _ => SingularityLabel::Unclassified,
    };
    Classification { label, corank: cr, tau, cubic_roots: roots }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;
    use crate::singularity::local::local_algebra;

    fn label(text: &str, n: usize) -> SingularityLabel {
        let g = parse_poly(text, n).unwrap();
        let tau = local_algebra(&g).unwrap().tau();
        classify(&g, tau).label
    }

    #[test]
    fn normal_forms() {
        assert_eq!(label("x0^2 + x1^2 + x2^2 + x3^2", 4), SingularityLabel::A(1));
        assert_eq!(label("x0^2 + x1^2 + x2^2 + x3^5", 4), SingularityLabel::A(4));
        assert_eq!(label("x0^2 + x1^2 + x2^2*x3 + x3^3", 4), SingularityLabel::D(4));
        assert_eq!(label("x0^2 + x1^2 + x2^2*x3 + x3^5", 4), SingularityLabel::D(6));
        assert_eq!(label("x0^2 + x1^2 + x2^3 + x3^4", 4), SingularityLabel::E(6));
        assert_eq!(label("x0^2 + x1^3 + x2^3 + x3^3", 4), SingularityLabel::T333);
    }

    #[test]
    fn classification_ignores_coordinates() {
        // D5 with the quadratic part mixing two variables
        assert_eq!(label("x0^2 + (x1 + x2)^2 + x3^2*x2 + x2^4", 4), SingularityLabel::D(5));
    }

    #[test]
    fn degenerate_cubic_is_unclassified() {
        assert_eq!(label("x0^2 + x1^2 + x2^4 + x3^4", 4), SingularityLabel::Unclassified);
    }

    #[test]
    fn labels_round_trip_as_strings() {
        for l in [SingularityLabel::A(2), SingularityLabel::D(5), SingularityLabel::E(6), SingularityLabel::T333] {
            assert_eq!(l.to_string().parse::<SingularityLabel>().unwrap(), l);
        }
    }
}
