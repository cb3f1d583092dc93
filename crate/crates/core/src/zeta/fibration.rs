//! The conic bundle obtained by projecting `X` from a line.
//!
//! With the line at `{x2 = .. = x5 = 0}`, the plane through it in direction
//! `y = (y2, y3, y4, y5)` is parametrised by `s e0 + t e1 + u (0, 0, y)`, and
//! `F` restricted to it factors as `u * Q_y(s, t, u)`.

use crate::algebra::{Field, Monomial, MultiPoly, F2};

use super::line::LineWitness;
use super::reduce::ReducedCubic;
use super::ZetaError;

/// Coefficients of `Q_y = a s^2 + b t^2 + c u^2 + d st + e su + f tu` as
/// forms in `y2..y5` (variables `0..4`), stored in the order `a, b, c, d, e, f`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConicFibration {
    pub coeffs: [MultiPoly<F2>; 6],
}

pub const A: usize = 0;
pub const B: usize = 1;
pub const C: usize = 2;
pub const D: usize = 3;
pub const E: usize = 4;
pub const F: usize = 5;

/// Degrees in `y` of `a, b, c, d, e, f`.
pub const COEFF_DEGREES: [u32; 6] = [1, 1, 3, 1, 2, 2];

/// Splits a monomial of the transformed cubic into its `s, t` exponents and
/// the remaining `y` part.
fn slot(m: &Monomial) -> Option<(usize, Monomial)> {
    let (i, j) = (m.exp(0), m.exp(1));
    let y = Monomial::from_exps(&[m.exp(2), m.exp(3), m.exp(4), m.exp(5)]);
    let k = match (i, j, y.degree()) {
        (2, 0, 1) => A,
        (0, 2, 1) => B,
        (0, 0, 3) => C,
        (1, 1, 1) => D,
        (1, 0, 2) => E,
        (0, 1, 2) => F,
        (_, _, 0) => return None,
        _ => unreachable!("cubic monomial"),
    };
    Some((k, y))
}

pub fn conic_fibration(r: &ReducedCubic, w: &LineWitness) -> Result<ConicFibration, ZetaError> {
    let g = w.transform(r);
    let mut coeffs: [MultiPoly<F2>; 6] = std::array::from_fn(|_| MultiPoly::zero(F2, 4));
    for (m, c) in g.terms() {
        match slot(m) {
            Some((k, y)) => coeffs[k].add_term(y, *c),
            None if !F2.is_zero(c) => return Err(ZetaError::InvalidWitness),
            None => {}
        }
    }
    Ok(ConicFibration { coeffs })
}

impl ConicFibration {
    /// `a f^2 + b e^2 + c d^2 + d e f`: the conic `Q_y` is smooth exactly
    /// where this quintic is nonzero.
    pub fn discriminant(&self) -> MultiPoly<F2> {
        let [a, b, c, d, e, f] = &self.coeffs;
        let terms = [&(a * &f.pow(2)), &(b * &e.pow(2)), &(c * &d.pow(2)), &(&(d * e) * f)];
        terms.iter().fold(MultiPoly::zero(F2, 4), |acc, t| &acc + *t)
    }
}
