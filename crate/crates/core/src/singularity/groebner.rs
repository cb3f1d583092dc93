//! Buchberger's algorithm in grevlex order and the finite-dimensional
//! quotient algebras it produces for zero-dimensional ideals.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::algebra::linalg::Matrix;
use crate::algebra::{Field, Monomial, MultiPoly, UniPoly};

/// Terms sorted grevlex-descending; the first term is the leading one.
#[derive(Clone, Debug, PartialEq)]
struct SPoly<E> {
    terms: Vec<(Monomial, E)>,
}

impl<E: Clone> SPoly<E> {
    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }
}

fn desc(a: &Monomial, b: &Monomial) -> Ordering {
    b.grevlex_cmp(a)
}

fn from_multi<F: Field>(p: &MultiPoly<F>) -> SPoly<F::Elem> {
    let mut terms: Vec<(Monomial, F::Elem)> = p.terms().map(|(m, c)| (*m, c.clone())).collect();
    terms.sort_by(|a, b| desc(&a.0, &b.0));
    SPoly { terms }
}

fn to_multi<F: Field>(field: &F, nvars: usize, p: &SPoly<F::Elem>) -> MultiPoly<F> {
    MultiPoly::from_terms(field.clone(), nvars, p.terms.iter().cloned())
}

/// `a - c * m * b`, merging two sorted term lists.
fn sub_scaled<F: Field>(f: &F, a: &[(Monomial, F::Elem)], c: &F::Elem, m: &Monomial, b: &[(Monomial, F::Elem)]) -> Vec<(Monomial, F::Elem)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    while i < a.len() || j < b.len() {
        let bm = b.get(j).map(|t| t.0.mul(m));
        let ord = match (a.get(i), &bm) {
            (Some(x), Some(y)) => desc(&x.0, y),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => unreachable!(),
        };
        match ord {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push((bm.unwrap(), f.neg(&f.mul(c, &b[j].1))));
                j += 1;
            }
            Ordering::Equal => {
                let v = f.sub(&a[i].1, &f.mul(c, &b[j].1));
                if !f.is_zero(&v) {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn make_monic<F: Field>(f: &F, p: &mut SPoly<F::Elem>) {
    let inv = f.inv(&p.terms[0].1).expect("nonzero leading coefficient");
    for t in &mut p.terms {
        t.1 = f.mul(&t.1, &inv);
    }
}

/// Full reduction of `p` by `basis` (monic elements).
fn reduce<F: Field>(f: &F, p: &SPoly<F::Elem>, basis: &[SPoly<F::Elem>]) -> SPoly<F::Elem> {
    let mut rest = p.terms.clone();
    let mut out: Vec<(Monomial, F::Elem)> = Vec::new();
    while !rest.is_empty() {
        let (m, c) = rest[0].clone();
        match basis.iter().find(|g| g.lm().divides(&m)) {
            Some(g) => {
                let q = g.lm().quotient_of(&m).expect("divides");
                rest = sub_scaled(f, &rest, &c, &q, &g.terms);
            }
            None => {
                out.push((m, c));
                rest.remove(0);
            }
        }
    }
    SPoly { terms: out }
}

fn s_poly<F: Field>(f: &F, a: &SPoly<F::Elem>, b: &SPoly<F::Elem>) -> SPoly<F::Elem> {
    let l = a.lm().lcm(b.lm());
    let ma = a.lm().quotient_of(&l).expect("lcm");
    let mb = b.lm().quotient_of(&l).expect("lcm");
    let scaled_a: Vec<_> = a.terms.iter().map(|(m, c)| (m.mul(&ma), c.clone())).collect();
    SPoly { terms: sub_scaled(f, &scaled_a, &f.one(), &mb, &b.terms) }
}

/// Reduced Gröbner basis in grevlex order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    field: F,
    nvars: usize,
    basis: Vec<SPoly<F::Elem>>,
}

pub fn groebner_basis<F: Field>(generators: &[MultiPoly<F>]) -> GroebnerBasis<F> {
    let first = generators.first().expect("at least one generator");
    let f = first.field().clone();
    let nvars = first.nvars();
    let mut g: Vec<SPoly<F::Elem>> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let push = |g: &mut Vec<SPoly<F::Elem>>, pairs: &mut Vec<(usize, usize)>, mut h: SPoly<F::Elem>| {
        make_monic(&f, &mut h);
        let k = g.len();
        let hlm = *h.lm();
        // Gebauer-Möller: drop old pairs whose lcm is strictly divisible by lm(h)
        pairs.retain(|&(i, j)| {
            let l = g[i].lm().lcm(g[j].lm());
            !(hlm.divides(&l) && g[i].lm().lcm(&hlm) != l && g[j].lm().lcm(&hlm) != l)
        });
        let mut new: Vec<(usize, Monomial)> = (0..k).map(|i| (i, g[i].lm().lcm(&hlm))).collect();
        // keep one pair per lcm, dropping those whose lcm is a proper multiple of another
        new.sort_by(|a, b| a.1.grevlex_cmp(&b.1));
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        for (i, l) in new {
            if kept.iter().any(|(_, l2)| l2.divides(&l)) {
                continue;
            }
            kept.push((i, l));
        }
        for (i, l) in kept {
            // product criterion
            if l != g[i].lm().mul(&hlm) {
                pairs.push((i, k));
            }
        }
        g.push(h);
    };
    for p in generators {
        if p.is_zero() {
            continue;
        }
        let r = reduce(&f, &from_multi(p), &g);
        if !r.terms.is_empty() {
            push(&mut g, &mut pairs, r);
        }
    }
    while !pairs.is_empty() {
        // normal selection strategy
        let (idx, _) = pairs
            .iter()
            .enumerate()
            .min_by(|a, b| {
                let la = g[a.1 .0].lm().lcm(g[a.1 .1].lm());
                let lb = g[b.1 .0].lm().lcm(g[b.1 .1].lm());
                la.grevlex_cmp(&lb)
            })
            .expect("nonempty");
        let (i, j) = pairs.swap_remove(idx);
        let s = s_poly(&f, &g[i], &g[j]);
        let r = reduce(&f, &s, &g);
        if !r.terms.is_empty() {
            if r.lm().degree() == 0 {
                let one = SPoly { terms: vec![(Monomial::ONE, f.one())] };
                return GroebnerBasis { field: f, nvars, basis: vec![one] };
            }
            push(&mut g, &mut pairs, r);
        }
    }
    // minimalize then inter-reduce
    let mut minimal: Vec<SPoly<F::Elem>> = Vec::new();
    for (i, p) in g.iter().enumerate() {
        let redundant = g.iter().enumerate().any(|(j, q)| {
            j != i && q.lm().divides(p.lm()) && (q.lm() != p.lm() || j < i)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<SPoly<F::Elem>> =
            minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, q)| q.clone()).collect();
        let head = SPoly { terms: vec![minimal[i].terms[0].clone()] };
        let tail = reduce(&f, &SPoly { terms: minimal[i].terms[1..].to_vec() }, &others);
        let mut terms = head.terms;
        terms.extend(tail.terms);
        reduced.push(SPoly { terms });
    }
    reduced.sort_by(|a, b| desc(a.lm(), b.lm()));
    GroebnerBasis { field: f, nvars, basis: reduced }
}

impl<F: Field> GroebnerBasis<F> {
    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.basis.iter().any(|g| g.lm().degree() == 0)
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().map(|g| *g.lm()).collect()
    }

    pub fn elements(&self) -> Vec<MultiPoly<F>> {
        self.basis.iter().map(|g| to_multi(&self.field, self.nvars, g)).collect()
    }

    /// Every variable has a pure power among the leading monomials.
    pub fn is_zero_dimensional(&self) -> bool {
        (0..self.nvars).all(|v| {
            self.basis.iter().any(|g| {
                let m = g.lm();
                (0..self.nvars).all(|w| w == v || m.exp(w) == 0)
            })
        })
    }

    pub fn normal_form(&self, p: &MultiPoly<F>) -> MultiPoly<F> {
        to_multi(&self.field, self.nvars, &reduce(&self.field, &from_multi(p), &self.basis))
    }

    /// Monomials outside the leading-term ideal, grevlex ascending; `None`
    /// if the ideal is not zero-dimensional.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        if !self.is_zero_dimensional() {
            return None;
        }
        if self.is_unit_ideal() {
            return Some(Vec::new());
        }
        let lms = self.leading_monomials();
        let mut out = vec![Monomial::ONE];
        let mut frontier = vec![Monomial::ONE];
        while let Some(m) = frontier.pop() {
            for v in 0..self.nvars {
                let next = m.mul(&Monomial::var(v));
                if lms.iter().any(|l| l.divides(&next)) || out.contains(&next) {
                    continue;
                }
                out.push(next);
                frontier.push(next);
            }
        }
        out.sort_by(|a, b| a.grevlex_cmp(b));
        Some(out)
    }

    pub fn quotient(&self) -> Option<Quotient<F>> {
        let basis = self.standard_monomials()?;
        let index = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        Some(Quotient { gb: self.clone(), basis, index })
    }
}

/// The algebra `k[x]/I` for a zero-dimensional `I`, with a monomial basis.
#[derive(Clone, Debug)]
pub struct Quotient<F: Field> {
    gb: GroebnerBasis<F>,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl<F: Field> Quotient<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn coordinates(&self, p: &MultiPoly<F>) -> Vec<F::Elem> {
        let f = &self.gb.field;
        let nf = self.gb.normal_form(p);
        let mut v = vec![f.zero(); self.dim()];
        for (m, c) in nf.terms() {
            v[self.index[m]] = c.clone();
        }
        v
    }

    /// Matrix of multiplication by `h`; column `j` is `h * basis[j]`.
    pub fn multiplication_matrix(&self, h: &MultiPoly<F>) -> Matrix<F> {
        let f = self.gb.field.clone();
        let n = self.dim();
        let mut m = Matrix::zeros(f.clone(), n, n);
        for (j, b) in self.basis.iter().enumerate() {
            let col = self.coordinates(&h.mul_monomial(b));
            for (i, c) in col.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }

    /// Minimal polynomial of multiplication by `h`, by Krylov iteration on
    /// the images of every basis vector.
    pub fn minimal_polynomial(&self, h: &MultiPoly<F>) -> UniPoly<F> {
        let f = self.gb.field.clone();
        let n = self.dim();
        let m = self.multiplication_matrix(h);
        let mut result = UniPoly::one(f.clone());
        for start in 0..n {
            let mut e = vec![f.zero(); n];
            e[start] = f.one();
            // already annihilated by the current candidate?
            if apply_poly(&m, &result, &e).iter().all(|x| f.is_zero(x)) {
                continue;
            }
            let local = krylov_min_poly(&m, e);
            result = lcm(&result, &local);
        }
        result
    }
}

fn apply_poly<F: Field>(m: &Matrix<F>, p: &UniPoly<F>, v: &[F::Elem]) -> Vec<F::Elem> {
    let f = m.field();
    let mut acc = vec![f.zero(); v.len()];
    let mut power = v.to_vec();
    for (k, c) in p.coeffs().iter().enumerate() {
        if k > 0 {
            power = m.mul_vec(&power);
        }
        for (a, x) in acc.iter_mut().zip(&power) {
            *a = f.add(a, &f.mul(c, x));
        }
    }
    acc
}

fn krylov_min_poly<F: Field>(m: &Matrix<F>, v: Vec<F::Elem>) -> UniPoly<F> {
    let f = m.field().clone();
    let mut vecs = vec![v];
    loop {
        let next = m.mul_vec(vecs.last().expect("nonempty"));
        let k = vecs.len();
        let cols: Vec<Vec<F::Elem>> = (0..next.len()).map(|i| vecs.iter().map(|w| w[i].clone()).collect()).collect();
        let a = Matrix::from_rows(f.clone(), cols, k);
        if let Some(x) = a.solve(&next) {
            let mut coeffs: Vec<F::Elem> = x.iter().map(|c| f.neg(c)).collect();
            coeffs.push(f.one());
            return UniPoly::new(f, coeffs);
        }
        vecs.push(next);
    }
}

fn lcm<F: Field>(a: &UniPoly<F>, b: &UniPoly<F>) -> UniPoly<F> {
    let g = a.gcd(b);
    let (q, _) = a.mul(b).div_rem(&g).expect("gcd is nonzero");
    q.monic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, PrimeField, Rationals};

    fn to_p(p: &MultiPoly<Rationals>, f: PrimeField) -> MultiPoly<PrimeField> {
        p.map_field(&f, |c| f.from_rational(c)).unwrap()
    }

    #[test]
    fn twisted_cubic_like_ideal() {
        let gens: Vec<_> = ["x0^2 - x1", "x0*x1 - 1"].iter().map(|s| parse_poly(s, 2).unwrap()).collect();
        let gb = groebner_basis(&gens);
        let q = gb.quotient().unwrap();
        // x0^3 = 1 and x1 = x0^2
        assert_eq!(q.dim(), 3);
        let mp = q.minimal_polynomial(&MultiPoly::var(Rationals, 2, 0));
        assert_eq!(mp, UniPoly::from_i64s(Rationals, &[-1, 0, 0, 1]));
    }

    #[test]
    fn unit_ideal_detected() {
        let gens: Vec<_> = ["x0*x1 - 1", "x0"].iter().map(|s| parse_poly(s, 2).unwrap()).collect();
        let gb = groebner_basis(&gens);
        assert!(gb.is_unit_ideal());
        assert_eq!(gb.quotient().unwrap().dim(), 0);
    }

    #[test]
    fn not_zero_dimensional() {
        let gens = vec![parse_poly("x0*x1", 2).unwrap()];
        assert!(groebner_basis(&gens).quotient().is_none());
    }

    #[test]
    fn basis_elements_reduce_to_zero_and_generate() {
        let gens: Vec<_> = ["x0^2 + x1*x2 - 3", "x1^2 - x0 + x2", "x2^2 - x0*x1 + 2"]
            .iter()
            .map(|s| parse_poly(s, 3).unwrap())
            .collect();
        let gb = groebner_basis(&gens);
        for g in &gens {
            assert!(gb.normal_form(g).is_zero());
        }
        // Bezout bound for three quadrics
        let q = gb.quotient().unwrap();
        assert_eq!(q.dim(), 8);
        // same answer modulo a large prime
        let f = PrimeField::new(1_000_003);
        let gp: Vec<_> = gens.iter().map(|g| to_p(g, f)).collect();
        assert_eq!(groebner_basis(&gp).quotient().unwrap().dim(), 8);
    }
}
