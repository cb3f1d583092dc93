//! Local Tjurina algebras `O/(g, ∂g)` at the origin via truncation at `m^N`.

use std::collections::HashMap;

use crate::algebra::linalg::SparseEchelon;
use crate::algebra::monomial::monomials_below_degree;
use crate::algebra::{Field, Monomial, MultiPoly};

use super::SingularityError;

/// Truncations tried before giving up.
pub const MAX_TRUNCATION: u32 = 24;

/// `O/(I + m^N)` with `m^N ⊂ I` certified, so it equals `O/I`.
#[derive(Clone, Debug)]
pub struct LocalAlgebra<F: Field> {
    pub order: u32,
    /// Monomials of degree `< order`, degree ascending then grevlex descending.
    pub columns: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    echelon: SparseEchelon<F>,
    /// Standard (non-pivot) monomials; a basis of the algebra.
    pub basis: Vec<Monomial>,
}

impl<F: Field> LocalAlgebra<F> {
    pub fn tau(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `h` on [`Self::basis`]. Terms of degree `>= order`
    /// lie in the ideal and are dropped.
    pub fn normal_form(&self, h: &MultiPoly<F>) -> Vec<F::Elem> {
        let f = h.field();
        let mut acc = vec![f.zero(); self.columns.len()];
        for (m, c) in h.terms() {
            if m.degree() < self.order {
                let i = self.index[m];
                acc[i] = f.add(&acc[i], c);
            }
        }
        self.echelon.reduce_dense(&mut acc);
        self.basis.iter().map(|m| acc[self.index[m]].clone()).collect()
    }
}

fn columns(nvars: usize, order: u32) -> Vec<Monomial> {
    // monomials_below_degree lists each degree grevlex-descending, lowest degree first
    monomials_below_degree(nvars, order)
}

/// Truncated Tjurina algebra of `g` at the origin for one fixed `N`.
pub fn truncated_algebra<F: Field>(g: &MultiPoly<F>, order: u32) -> LocalAlgebra<F> {
    let f = g.field().clone();
    let n = g.nvars();
    let cols = columns(n, order);
    let index: HashMap<Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut echelon = SparseEchelon::new(f.clone(), cols.len());
    let mut gens = vec![g.truncate(order)];
    gens.extend(g.gradient().into_iter().map(|d| d.truncate(order)));
    for h in gens {
        let Some(ord) = h.order() else { continue };
        for alpha in &cols {
            if alpha.degree() + ord >= order {
                continue;
            }
            let row: Vec<(usize, F::Elem)> = h
                .terms()
                .filter_map(|(m, c)| {
                    let p = m.mul(alpha);
                    (p.degree() < order).then(|| (index[&p], c.clone()))
                })
                .collect();
            if !row.is_empty() {
                echelon.insert(&row);
            }
        }
    }
    echelon.fully_reduce();
    let basis = cols.iter().enumerate().filter(|(i, _)| !echelon.is_pivot(*i)).map(|(_, m)| *m).collect();
    LocalAlgebra { order, columns: cols, index, echelon, basis }
}

/// Increases `N` until two consecutive truncations agree, which forces
/// `m^N ⊂ I` by Nakayama's lemma.
pub fn local_algebra<F: Field>(g: &MultiPoly<F>) -> Result<LocalAlgebra<F>, SingularityError> {
    if let Some(c) = g.terms().find(|(m, _)| m.degree() == 0).map(|(_, c)| c.clone()) {
        if !g.field().is_zero(&c) {
            return Err(SingularityError::NotOnHypersurface);
        }
    }
    let mut prev = truncated_algebra(g, 1);
    for order in 2..=MAX_TRUNCATION {
        let next = truncated_algebra(g, order);
        if next.tau() == prev.tau() {
            return Ok(prev);
        }
        prev = next;
    }
    Err(SingularityError::NotIsolated)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, Rationals};

    #[test]
    fn simple_singularities() {
        let cases = [
            ("x0^2 + x1^2 + x2^2", 3, 1),
            ("x0^2 + x1^3", 2, 2),
            ("x0^2*x1 + x1^4", 2, 5),
            ("x0^3 + x1^4", 2, 6),
            ("x0^3 + x0*x1^3", 2, 7),
            ("x0^3 + x1^5", 2, 8),
            ("x0^3 + x1^3 + x2^3", 3, 8),
        ];
        for (text, n, tau) in cases {
            let g = parse_poly(text, n).unwrap();
            assert_eq!(local_algebra(&g).unwrap().tau(), tau, "{text}");
        }
    }

    #[test]
    fn tjurina_differs_from_milnor() {
        // x^5 + y^5 + x^2 y^2 has Milnor number 11 and Tjurina number 10
        let g = parse_poly("x0^5 + x1^5 + x0^2*x1^2", 2).unwrap();
        assert_eq!(local_algebra(&g).unwrap().tau(), 10);
    }

    #[test]
    fn smooth_point_and_nonsingular() {
        let g = parse_poly("x0 + x1^2", 2).unwrap();
        assert_eq!(local_algebra(&g).unwrap().tau(), 0);
        let h = parse_poly("1 + x0", 2).unwrap();
        assert!(matches!(local_algebra(&h), Err(SingularityError::NotOnHypersurface)));
    }

    #[test]
    fn non_isolated_detected() {
        let g = parse_poly("x0^2", 2).unwrap();
        assert!(matches!(local_algebra(&g), Err(SingularityError::NotIsolated)));
    }

    #[test]
    fn normal_form_of_ideal_members_vanishes() {
        let g = parse_poly("x0^2*x1 + x1^4 + x2^2", 3).unwrap();
        let a = local_algebra(&g).unwrap();
        for d in g.gradient() {
            let h = &d * &parse_poly("3 + x0 - x1^2", 3).unwrap();
            assert!(a.normal_form(&h).iter().all(|c| Rationals.is_zero(c)));
        }
        let unit = MultiPoly::one(Rationals, 3);
        assert!(a.normal_form(&unit).iter().any(|c| !Rationals.is_zero(c)));
    }
}
