//! Invertible linear substitutions of variables.

use super::field::Field;
use super::linalg::Matrix;
use super::monomial::Monomial;
use super::poly::MultiPoly;
use super::AlgebraError;

/// The substitution `x_i -> Σ_j M[i][j] x_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearChange<F: Field> {
    matrix: Matrix<F>,
}

impl<F: Field> LinearChange<F> {
    pub fn new(matrix: Matrix<F>) -> Result<Self, AlgebraError> {
        if matrix.nrows() != matrix.ncols() || matrix.inverse().is_none() {
            return Err(AlgebraError::SingularMatrix);
        }
        Ok(LinearChange { matrix })
    }

    pub fn identity(field: F, n: usize) -> Self {
        LinearChange { matrix: Matrix::identity(field, n) }
    }

    /// Swaps variables `a` and `b`.
    pub fn swap(field: F, n: usize, a: usize, b: usize) -> Self {
        let mut m = Matrix::zeros(field.clone(), n, n);
        for i in 0..n {
            let j = if i == a { b } else if i == b { a } else { i };
            m.set(i, j, field.one());
        }
        LinearChange { matrix: m }
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn inverse(&self) -> Self {
        LinearChange { matrix: self.matrix.inverse().expect("invertible by construction") }
    }

    /// `(self then other)`: applying the result equals applying `self`, then `other`.
    pub fn then(&self, other: &Self) -> Self {
        // f(Mx) then g(x) = f(M N x) for g = f∘M
        LinearChange { matrix: self.matrix.mul(&other.matrix) }
    }

    pub fn images(&self) -> Vec<MultiPoly<F>> {
        let n = self.dim();
        let f = self.matrix.field();
        (0..n)
            .map(|i| {
                MultiPoly::from_terms(f.clone(), n, (0..n).map(|j| (Monomial::var(j), self.matrix.get(i, j).clone())))
            })
            .collect()
    }

    /// `f(M x)`.
    pub fn apply(&self, f: &MultiPoly<F>) -> Result<MultiPoly<F>, AlgebraError> {
        if f.nvars() != self.dim() {
            return Err(AlgebraError::VarCountMismatch { left: f.nvars(), right: self.dim() });
        }
        f.substitute(&self.images())
    }

    /// Image of a point under `x -> M x`.
    pub fn map_point(&self, p: &[F::Elem]) -> Vec<F::Elem> {
        self.matrix.mul_vec(p)
    }
}

impl<F: Field> MultiPoly<F> {
    pub fn substitute_linear(&self, t: &LinearChange<F>) -> Result<MultiPoly<F>, AlgebraError> {
        t.apply(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Rationals;
    use crate::algebra::parse::parse_poly;

    #[test]
    fn identity_and_swap() {
        let f = parse_poly("x0*x1*x2 + 3*x3^2*x4", 6).unwrap();
        assert_eq!(LinearChange::identity(Rationals, 6).apply(&f).unwrap(), f);
        let g = parse_poly("x0*x1*x2", 6).unwrap();
        assert_eq!(LinearChange::swap(Rationals, 6, 1, 2).apply(&g).unwrap(), g);
    }

    #[test]
    fn round_trip_through_inverse() {
        let m = Matrix::from_i64(Rationals, &[vec![1, 2, 0], vec![0, 1, -1], vec![3, 0, 1]]);
        let t = LinearChange::new(m).unwrap();
        let f = parse_poly("x0^3 - 2*x0*x1*x2 + 5*x2^2*x1", 3).unwrap();
        let back = t.inverse().apply(&t.apply(&f).unwrap()).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn singular_matrix_rejected() {
        let m = Matrix::from_i64(Rationals, &[vec![1, 2], vec![2, 4]]);
        assert_eq!(LinearChange::new(m), Err(AlgebraError::SingularMatrix));
    }
}
