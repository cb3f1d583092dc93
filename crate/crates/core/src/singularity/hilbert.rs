//! Graded pieces of the Jacobian quotient `S/J`, computed degree by degree
//! as `J_{d+1} = Σ x_i J_d` inside the monomial basis of `S_{d+1}`.

use std::collections::HashMap;

use crate::algebra::linalg::SparseEchelon;
use crate::algebra::monomial::monomials_of_degree;
use crate::algebra::{Field, Monomial, MultiPoly};

/// Echelon basis of one graded piece of an ideal.
pub struct GradedPiece<F: Field> {
    pub degree: u32,
    pub monomials: Vec<Monomial>,
    pub index: HashMap<Monomial, usize>,
    pub echelon: SparseEchelon<F>,
}

impl<F: Field> GradedPiece<F> {
    fn empty(field: F, nvars: usize, degree: u32) -> Self {
        let monomials = monomials_of_degree(nvars, degree);
        let index = monomials.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let echelon = SparseEchelon::new(field, monomials.len());
        GradedPiece { degree, monomials, index, echelon }
    }

    pub fn quotient_dim(&self) -> usize {
        self.monomials.len() - self.echelon.rank()
    }

    pub fn insert_poly(&mut self, p: &MultiPoly<F>) -> bool {
        let row: Vec<(usize, F::Elem)> = p.terms().map(|(m, c)| (self.index[m], c.clone())).collect();
        self.echelon.insert(&row)
    }

    /// Coordinates of `p` modulo this piece, on the non-pivot monomials.
    pub fn reduce(&self, p: &MultiPoly<F>) -> Vec<F::Elem> {
        let f = p.field();
        let mut acc = vec![f.zero(); self.monomials.len()];
        for (m, c) in p.terms() {
            let i = self.index[m];
            acc[i] = f.add(&acc[i], c);
        }
        self.echelon.reduce_dense(&mut acc);
        acc.into_iter().enumerate().filter(|(i, _)| !self.echelon.is_pivot(*i)).map(|(_, v)| v).collect()
    }

    fn next(&self, nvars: usize) -> Self {
        let f = self.field();
        let mut out = GradedPiece::empty(f.clone(), nvars, self.degree + 1);
        let mut candidates: Vec<(usize, Vec<(usize, F::Elem)>)> = Vec::new();
        for row in self.echelon.rows() {
            for v in 0..nvars {
                let x = Monomial::var(v);
                let mut r: Vec<(usize, F::Elem)> =
                    row.iter().map(|(j, c)| (out.index[&self.monomials[*j].mul(&x)], c.clone())).collect();
                r.sort_unstable_by_key(|e| e.0);
                candidates.push((r[0].0, r));
            }
        }
        // rightmost leading column first keeps fill-in low
        candidates.sort_by(|a, b| b.0.cmp(&a.0));
        for (_, r) in candidates {
            if out.echelon.rank() == out.monomials.len() {
                break;
            }
            out.echelon.insert(&r);
        }
        out.echelon.fully_reduce();
        out
    }

    fn field(&self) -> F {
        self.echelon.field().clone()
    }
}

/// Iterator over the graded pieces `J_d` for `d = 2, 3, ...` where `J` is
/// generated by the partials of a homogeneous cubic.
pub struct JacobianPieces<F: Field> {
    nvars: usize,
    current: Option<GradedPiece<F>>,
    seed: GradedPiece<F>,
}

impl<F: Field> JacobianPieces<F> {
    pub fn new(cubic: &MultiPoly<F>) -> Self {
        assert!(cubic.is_homogeneous() && cubic.degree() == Some(3), "expected a homogeneous cubic");
        let nvars = cubic.nvars();
        let mut seed = GradedPiece::empty(cubic.field().clone(), nvars, 2);
        for g in cubic.gradient() {
            if !g.is_zero() {
                seed.insert_poly(&g);
            }
        }
        seed.echelon.fully_reduce();
        JacobianPieces { nvars, current: None, seed }
    }
}

impl<F: Field> Iterator for JacobianPieces<F> {
    type Item = (u32, usize);

    fn next(&mut self) -> Option<(u32, usize)> {
        let piece = match self.current.take() {
            None => GradedPiece {
                degree: self.seed.degree,
                monomials: self.seed.monomials.clone(),
                index: self.seed.index.clone(),
                echelon: self.seed.echelon.clone(),
            },
            Some(p) => p.next(self.nvars),
        };
        let item = (piece.degree, piece.quotient_dim());
        self.current = Some(piece);
        Some(item)
    }
}

/// `dim (S/J)_d` for `d = 2..=max_degree`, returned as `(d, dim)` pairs.
pub fn jacobian_quotient_dims<F: Field>(cubic: &MultiPoly<F>, max_degree: u32) -> Vec<(u32, usize)> {
    JacobianPieces::new(cubic).take_while(|(d, _)| *d <= max_degree).collect()
}

/// The graded piece `J_d` itself.
pub fn jacobian_piece<F: Field>(cubic: &MultiPoly<F>, degree: u32) -> GradedPiece<F> {
    assert!(degree >= 2);
    let mut it = JacobianPieces::new(cubic);
    loop {
        let (d, _) = it.next().expect("infinite iterator");
        if d == degree {
            return it.current.take().expect("set by next");
        }
    }
}
