//! Exact dense and sparse linear algebra over any [`Field`].

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::Field;

/// Row-major dense matrix.
#[derive(Clone, Debug)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> PartialEq for Matrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref<F: Field> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let z = field.zero();
        Matrix { field, rows, cols, data: vec![z; rows * cols] }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = m.field.one();
        }
        m
    }

    pub fn from_rows(field: F, rows: Vec<Vec<F::Elem>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row);
        }
        Matrix { field, rows: r, cols, data }
    }

    pub fn from_i64(field: F, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let v = rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
        Self::from_rows(field, v, cols)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let f = &self.field;
        let mut out = Self::zeros(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), &f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b))))
            .collect()
    }

    /// Appends the columns of `other`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let rows = (0..self.rows).map(|i| [self.row(i), other.row(i)].concat()).collect();
        Self::from_rows(self.field.clone(), rows, self.cols + other.cols)
    }

    pub fn rref(&self) -> Rref<F> {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else { continue };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of `{v : M v = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let Rref { matrix, pivots } = self.rref();
        let mut is_pivot = vec![None; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(r);
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = f.neg(matrix.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(self.field.clone(), n));
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let rows = (0..n).map(|i| matrix.row(i)[n..].to_vec()).collect();
        Some(Self::from_rows(self.field.clone(), rows, n))
    }

    /// Some solution of `M x = b`, if any.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let f = &self.field;
        let bcol = Self::from_rows(f.clone(), b.iter().map(|x| vec![x.clone()]).collect(), 1);
        let Rref { matrix, pivots } = self.hstack(&bcol).rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = matrix.get(r, self.cols).clone();
        }
        Some(x)
    }
}

/// Rank over the rationals by fraction-free (Bareiss) elimination after
/// clearing denominators row by row.
pub fn rank_fraction_free(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            row.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    let nrows = m.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(p, r);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Incremental row echelon basis of a subspace of `F^ncols`, stored sparsely.
/// Pivots are the leftmost nonzero column; each stored row has pivot entry 1
/// and is reduced against every pivot known when it was inserted.
#[derive(Clone, Debug)]
pub struct SparseEchelon<F: Field> {
    field: F,
    ncols: usize,
    pivot_row: HashMap<usize, usize>,
    rows: Vec<Vec<(usize, F::Elem)>>,
}

impl<F: Field> SparseEchelon<F> {
    pub fn new(field: F, ncols: usize) -> Self {
        SparseEchelon { field, ncols, pivot_row: HashMap::new(), rows: Vec::new() }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.pivot_row.contains_key(&c)
    }

    pub fn pivots(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.pivot_row.keys().copied().collect();
        v.sort_unstable();
        v
    }

    pub fn rows(&self) -> &[Vec<(usize, F::Elem)>] {
        &self.rows
    }

    /// Reduces a dense vector in place against all pivots, left to right.
    pub fn reduce_dense(&self, acc: &mut [F::Elem]) {
        let f = &self.field;
        for c in 0..self.ncols {
            if f.is_zero(&acc[c]) {
                continue;
            }
            if let Some(&ri) = self.pivot_row.get(&c) {
                let factor = acc[c].clone();
                for (j, v) in &self.rows[ri] {
                    acc[*j] = f.sub(&acc[*j], &f.mul(&factor, v));
                }
            }
        }
    }

    /// Inserts a sparse row; returns whether it enlarged the span.
    pub fn insert(&mut self, row: &[(usize, F::Elem)]) -> bool {
        let f = self.field.clone();
        let mut acc = vec![f.zero(); self.ncols];
        for (c, v) in row {
            acc[*c] = f.add(&acc[*c], v);
        }
        self.insert_dense(acc)
    }

    pub fn insert_dense(&mut self, mut acc: Vec<F::Elem>) -> bool {
        let f = self.field.clone();
        self.reduce_dense(&mut acc);
        let Some(lead) = acc.iter().position(|v| !f.is_zero(v)) else { return false };
        let inv = f.inv(&acc[lead]).expect("nonzero");
        let row: Vec<(usize, F::Elem)> = acc
            .iter()
            .enumerate()
            .filter(|(_, v)| !f.is_zero(v))
            .map(|(j, v)| (j, f.mul(v, &inv)))
            .collect();
        self.pivot_row.insert(lead, self.rows.len());
        self.rows.push(row);
        true
    }

    /// Back-substitutes so every row vanishes on every other pivot column.
    pub fn fully_reduce(&mut self) {
        let f = self.field.clone();
        let mut order: Vec<(usize, usize)> = self.pivot_row.iter().map(|(&c, &r)| (c, r)).collect();
        order.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        for &(c, ri) in &order {
            let mut acc = vec![f.zero(); self.ncols];
            for (j, v) in &self.rows[ri] {
                acc[*j] = v.clone();
            }
            for j in c + 1..self.ncols {
                if f.is_zero(&acc[j]) {
                    continue;
                }
                if let Some(&rj) = self.pivot_row.get(&j) {
                    let factor = acc[j].clone();
                    for (k, v) in &self.rows[rj] {
                        acc[*k] = f.sub(&acc[*k], &f.mul(&factor, v));
                    }
                }
            }
            self.rows[ri] = acc.iter().enumerate().filter(|(_, v)| !f.is_zero(v)).map(|(j, v)| (j, v.clone())).collect();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{PrimeField, Rationals, F2};
    use rand::{Rng, SeedableRng};

    #[test]
    fn identity_and_zero_ranks() {
        assert_eq!(Matrix::identity(Rationals, 5).rank(), 5);
        let z = Matrix::zeros(Rationals, 3, 4);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.kernel().len(), 4);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = Matrix::from_i64(Rationals, &[vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, -1, 2]]);
        let k = m.kernel();
        assert_eq!(m.rank() + k.len(), 4);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn random_f2_rank_equals_transpose_rank() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..3 {
            let rows: Vec<Vec<i64>> = (0..100).map(|_| (0..100).map(|_| rng.gen_range(0..2)).collect()).collect();
            let m = Matrix::from_i64(F2, &rows);
            assert_eq!(m.rank(), m.transpose().rank());
        }
    }

    #[test]
    fn bareiss_matches_field_rank() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let r = rng.gen_range(1..7);
            let c = rng.gen_range(1..7);
            // low-rank products exercise dependent rows
            let k = rng.gen_range(1..4);
            let a: Vec<Vec<i64>> = (0..r).map(|_| (0..k).map(|_| rng.gen_range(-3..4)).collect()).collect();
            let b: Vec<Vec<i64>> = (0..k).map(|_| (0..c).map(|_| rng.gen_range(-3..4)).collect()).collect();
            let m = Matrix::from_i64(Rationals, &a).mul(&Matrix::from_i64(Rationals, &b));
            let rows: Vec<Vec<BigRational>> = (0..r).map(|i| m.row(i).to_vec()).collect();
            assert_eq!(rank_fraction_free(&rows), m.rank());
        }
    }

    #[test]
    fn inverse_round_trip() {
        let f = PrimeField::new(101);
        let m = Matrix::from_i64(f, &[vec![2, 1, 0], vec![0, 1, 5], vec![7, 0, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(f, 3));
        let s = Matrix::from_i64(f, &[vec![1, 2], vec![2, 4]]);
        assert!(s.inverse().is_none());
    }

    #[test]
    fn sparse_echelon_agrees_with_dense() {
        let f = PrimeField::new(10007);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let rows: Vec<Vec<i64>> = (0..30)
            .map(|i| (0..20).map(|j| if (i + j) % 3 == 0 { rng.gen_range(0..5) } else { 0 }).collect())
            .collect();
        let dense = Matrix::from_i64(f, &rows);
        let mut e = SparseEchelon::new(f, 20);
        for r in &rows {
            let sparse: Vec<(usize, u32)> = r.iter().enumerate().filter(|(_, &v)| v != 0).map(|(j, &v)| (j, v as u32)).collect();
            e.insert(&sparse);
        }
        assert_eq!(e.rank(), dense.rank());
        assert_eq!(e.pivots(), dense.rref().pivots);
        e.fully_reduce();
        let p = e.pivots();
        for row in e.rows() {
            let own = row[0].0;
            assert!(row.iter().all(|(c, _)| *c == own || !p.contains(c)));
        }
    }
}
