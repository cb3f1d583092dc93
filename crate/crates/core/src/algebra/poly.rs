//! Sparse multivariate polynomials over a declared coefficient field.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use super::field::{Field, FieldDescriptor, Rationals};
use super::monomial::{default_var_names, Monomial, MonomialOrder, MAX_VARS};
use super::AlgebraError;

#[derive(Clone, Debug)]
pub struct MultiPoly<F: Field> {
    field: F,
    nvars: usize,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> PartialEq for MultiPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.nvars == other.nvars && self.terms == other.terms
    }
}

impl<F: Field> MultiPoly<F> {
    pub fn zero(field: F, nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS);
        MultiPoly { field, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: F, nvars: usize, c: F::Elem) -> Self {
        let mut p = Self::zero(field, nvars);
        p.add_term(Monomial::ONE, c);
        p
    }

    pub fn one(field: F, nvars: usize) -> Self {
        let one = field.one();
        Self::constant(field, nvars, one)
    }

    pub fn var(field: F, nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let one = field.one();
        let mut p = Self::zero(field, nvars);
        p.add_term(Monomial::var(i), one);
        p
    }

    pub fn from_terms(field: F, nvars: usize, terms: impl IntoIterator<Item = (Monomial, F::Elem)>) -> Self {
        let mut p = Self::zero(field, nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c * m` in place; zero results are removed.
    pub fn add_term(&mut self, m: Monomial, c: F::Elem) {
        debug_assert!(m.fits(self.nvars), "monomial {m} outside {} variables", self.nvars);
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = self.field.add(existing, &c);
                if self.field.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn coeff(&self, m: &Monomial) -> F::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F::Elem)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    /// Terms sorted descending in `order`.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(Monomial, F::Elem)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        v.sort_by(|a, b| order.cmp(&b.0, &a.0));
        v
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(Monomial, F::Elem)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(a.0, b.0))
            .map(|(m, c)| (*m, c.clone()))
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Lowest total degree of a term; `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        Self::from_terms(
            self.field.clone(),
            self.nvars,
            self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (*m, c.clone())),
        )
    }

    /// Drops all terms of degree `>= n`.
    pub fn truncate(&self, n: u32) -> Self {
        Self::from_terms(
            self.field.clone(),
            self.nvars,
            self.terms.iter().filter(|(m, _)| m.degree() < n).map(|(m, c)| (*m, c.clone())),
        )
    }

    fn check_compatible(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.field != other.field {
            return Err(AlgebraError::FieldMismatch {
                left: self.field.descriptor(),
                right: other.field.descriptor(),
            });
        }
        if self.nvars != other.nvars {
            return Err(AlgebraError::VarCountMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.field.clone(), self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), self.field.mul(ca, cb));
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Self {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, self.field.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        Self::from_terms(
            self.field.clone(),
            self.nvars,
            self.terms.iter().map(|(m, a)| (*m, self.field.mul(a, c))),
        )
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Self {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.field.clone(), self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.field.clone(), self.nvars);
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e == 0 {
                continue;
            }
            let mut m2 = *m;
            m2.0[i] -= 1;
            out.add_term(m2, self.field.mul(c, &self.field.from_i64(e as i64)));
        }
        out
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars).map(|i| self.partial(i)).collect()
    }

    pub fn evaluate(&self, point: &[F::Elem]) -> F::Elem {
        assert_eq!(point.len(), self.nvars);
        let f = &self.field;
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    t = f.mul(&t, &f.pow(x, e as u64));
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Substitutes `x_i -> images[i]`; the images fix the output variable count.
    pub fn substitute(&self, images: &[MultiPoly<F>]) -> Result<MultiPoly<F>, AlgebraError> {
        if images.len() != self.nvars {
            return Err(AlgebraError::VarCountMismatch { left: self.nvars, right: images.len() });
        }
        let out_vars = images.first().map(|p| p.nvars).unwrap_or(0);
        for im in images {
            if im.field != self.field {
                return Err(AlgebraError::FieldMismatch {
                    left: self.field.descriptor(),
                    right: im.field.descriptor(),
                });
            }
            if im.nvars != out_vars {
                return Err(AlgebraError::VarCountMismatch { left: out_vars, right: im.nvars });
            }
        }
        // cache powers of each image
        let max_exp: Vec<u16> = (0..self.nvars)
            .map(|i| self.terms.keys().map(|m| m.exp(i)).max().unwrap_or(0))
            .collect();
        let powers: Vec<Vec<MultiPoly<F>>> = images
            .iter()
            .zip(&max_exp)
            .map(|(im, &e)| {
                let mut v = vec![MultiPoly::one(self.field.clone(), out_vars)];
                for k in 1..=e as usize {
                    let next = &v[k - 1] * im;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = MultiPoly::zero(self.field.clone(), out_vars);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(self.field.clone(), out_vars, c.clone());
            for i in 0..self.nvars {
                let e = m.exp(i) as usize;
                if e > 0 {
                    t = &t * &powers[i][e];
                }
            }
            for (mm, cc) in t.terms {
                out.add_term(mm, cc);
            }
        }
        Ok(out)
    }

    /// Sets variable `i` to the constant `value` and removes it.
    pub fn specialize_var(&self, i: usize, value: &F::Elem) -> Self {
        let f = &self.field;
        let mut out = Self::zero(f.clone(), self.nvars - 1);
        for (m, c) in &self.terms {
            let e = m.exp(i);
            let c2 = if e == 0 { c.clone() } else { f.mul(c, &f.pow(value, e as u64)) };
            out.add_term(m.remove_var(i), c2);
        }
        out
    }

    /// Local affine equation at `point` in the chart `x_chart != 0`: the
    /// point is scaled to have chart coordinate 1, translated to the origin,
    /// and the chart variable removed. The remaining variables keep their
    /// relative order.
    pub fn dehomogenize(&self, chart: usize, point: &[F::Elem]) -> Result<Self, AlgebraError> {
        if point.len() != self.nvars || chart >= self.nvars {
            return Err(AlgebraError::VarCountMismatch { left: self.nvars, right: point.len() });
        }
        let f = &self.field;
        let pc_inv = f.inv(&point[chart]).ok_or(AlgebraError::PointNotInChart { chart })?;
        let out_vars = self.nvars - 1;
        let mut images = Vec::with_capacity(self.nvars);
        let mut k = 0;
        for (i, pi) in point.iter().enumerate() {
            let shift = f.mul(pi, &pc_inv);
            if i == chart {
                images.push(MultiPoly::constant(f.clone(), out_vars, f.one()));
            } else {
                let mut im = MultiPoly::var(f.clone(), out_vars, k);
                im.add_term(Monomial::ONE, shift);
                images.push(im);
                k += 1;
            }
        }
        self.substitute(&images)
    }

    /// Reverse of the translation part of [`dehomogenize`] for a local
    /// polynomial: `g(u) -> g(u - shift)`.
    pub fn translate(&self, shift: &[F::Elem]) -> Result<Self, AlgebraError> {
        let f = &self.field;
        let images: Vec<_> = (0..self.nvars)
            .map(|i| {
                let mut im = MultiPoly::var(f.clone(), self.nvars, i);
                im.add_term(Monomial::ONE, shift[i].clone());
                im
            })
            .collect();
        self.substitute(&images)
    }

    /// Maps coefficients into another field; fails when a coefficient has no image.
    pub fn map_field<G: Field>(
        &self,
        target: &G,
        map: impl Fn(&F::Elem) -> Option<G::Elem>,
    ) -> Result<MultiPoly<G>, AlgebraError> {
        let mut out = MultiPoly::zero(target.clone(), self.nvars);
        for (m, c) in &self.terms {
            let c2 = map(c).ok_or(AlgebraError::NotInvertible { target: target.descriptor() })?;
            out.add_term(*m, c2);
        }
        Ok(out)
    }

    /// Same polynomial viewed in more variables.
    pub fn with_nvars(&self, n: usize) -> Self {
        assert!(n >= self.nvars || self.terms.keys().all(|m| m.fits(n)));
        Self { field: self.field.clone(), nvars: n, terms: self.terms.clone() }
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        self.field.descriptor()
    }

    pub fn format_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (idx, (m, c)) in self.sorted_terms(MonomialOrder::Grevlex).iter().enumerate() {
            let text = self.field.format(c);
            let (neg, body) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let body = if self.field.needs_parens(c) { format!("({body})") } else { body };
            if *m == Monomial::ONE {
                s.push_str(&body);
            } else if body == "1" {
                s.push_str(&m.format_with(names));
            } else {
                s.push_str(&body);
                s.push('*');
                s.push_str(&m.format_with(names));
            }
        }
        s
    }
}

impl MultiPoly<Rationals> {
    pub fn from_i64_terms(nvars: usize, terms: &[(i64, Monomial)]) -> Self {
        Self::from_terms(Rationals, nvars, terms.iter().map(|(c, m)| (*m, Rationals.from_i64(*c))))
    }

    pub fn coeff_i64(&self, m: &Monomial) -> Option<i64> {
        use num_traits::ToPrimitive;
        let c = self.coeff(m);
        if c.is_integer() {
            c.to_integer().to_i64()
        } else {
            None
        }
    }

    /// Least common multiple of all coefficient denominators.
    pub fn denominator_lcm(&self) -> num_bigint::BigInt {
        use num_integer::Integer;
        self.terms.values().fold(num_bigint::BigInt::from(1), |acc, c| acc.lcm(c.denom()))
    }

    pub fn rational_coeffs(&self) -> impl Iterator<Item = &BigRational> {
        self.terms.values()
    }
}

impl<F: Field> fmt::Display for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&default_var_names(self.nvars)))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl<F: Field> std::ops::$tr<&MultiPoly<F>> for &MultiPoly<F> {
            type Output = MultiPoly<F>;
            fn $m(self, rhs: &MultiPoly<F>) -> MultiPoly<F> {
                self.$try(rhs).expect("incompatible polynomial operands")
            }
        }
        impl<F: Field> std::ops::$tr<MultiPoly<F>> for MultiPoly<F> {
            type Output = MultiPoly<F>;
            fn $m(self, rhs: MultiPoly<F>) -> MultiPoly<F> {
                self.$try(&rhs).expect("incompatible polynomial operands")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl<F: Field> std::ops::Neg for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn neg(self) -> MultiPoly<F> {
        MultiPoly::neg(self)
    }
}
