//! Search for an `F_2`-rational line on a cubic fourfold over `F_2`.

use serde::{Deserialize, Serialize};

use crate::algebra::linalg::Matrix;
use crate::algebra::{Field, LinearChange, Monomial, MultiPoly, F2};

use super::reduce::ReducedCubic;
use super::ZetaError;

/// A line `<a, b>` of `P^5(F_2)` and a change of coordinates taking it to
/// `{x2 = x3 = x4 = x5 = 0}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "LineFile", into = "LineFile")]
pub struct LineWitness {
    change: LinearChange<F2>,
    original_line: [[u8; 6]; 2],
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct LineFile {
    original_line: [[u8; 6]; 2],
    change: Vec<[u8; 6]>,
}

impl From<LineWitness> for LineFile {
    fn from(w: LineWitness) -> Self {
        let m = w.change.matrix();
        let change = (0..6).map(|i| std::array::from_fn(|j| *m.get(i, j))).collect();
        LineFile { original_line: w.original_line, change }
    }
}

impl TryFrom<LineFile> for LineWitness {
    type Error = ZetaError;
    fn try_from(f: LineFile) -> Result<Self, ZetaError> {
        let from_bits = |v: &[u8; 6]| v.iter().enumerate().fold(0u8, |acc, (i, &b)| acc | ((b & 1) << i));
        let w = LineWitness::new(from_bits(&f.original_line[0]), from_bits(&f.original_line[1]))?;
        let m = w.change.matrix();
        let same = (0..6).all(|i| (0..6).all(|j| *m.get(i, j) == f.change.get(i).map_or(2, |r| r[j])));
        if !same {
            return Err(ZetaError::InvalidWitness);
        }
        Ok(w)
    }
}

fn bit(v: u8, i: usize) -> u8 {
    (v >> i) & 1
}

fn to_array(v: u8) -> [u8; 6] {
    std::array::from_fn(|i| bit(v, i))
}

impl LineWitness {
    /// The line spanned by the bit vectors `a` and `b` (bit `i` is `x_i`).
    /// The change has `a` and `b` as its first two columns, completed by
    /// standard basis vectors.
    pub fn new(a: u8, b: u8) -> Result<Self, ZetaError> {
        if a == 0 || b == 0 || a == b || a >= 64 || b >= 64 {
            return Err(ZetaError::InvalidWitness);
        }
        let mut cols = vec![a, b];
        let mut span: Vec<u8> = vec![a, b, a ^ b, 0];
        for k in 0..6 {
            let e = 1u8 << k;
            if cols.len() == 6 || span.contains(&e) {
                continue;
            }
            let extra: Vec<u8> = span.iter().map(|s| s ^ e).collect();
            span.extend(extra);
            cols.push(e);
        }
        let mut m = Matrix::zeros(F2, 6, 6);
        for (j, c) in cols.iter().enumerate() {
            for i in 0..6 {
                m.set(i, j, bit(*c, i));
            }
        }
        let change = LinearChange::new(m).map_err(|_| ZetaError::InvalidWitness)?;
        Ok(LineWitness { change, original_line: [to_array(a), to_array(b)] })
    }

    pub fn change(&self) -> &LinearChange<F2> {
        &self.change
    }

    pub fn original_line(&self) -> [[u8; 6]; 2] {
        self.original_line
    }

    /// `F(M x)`, which vanishes on the standard line when the witness is valid.
    pub fn transform(&self, r: &ReducedCubic) -> MultiPoly<F2> {
        self.change.apply(r.form()).expect("six variables")
    }
}

/// Every line of `P^5(F_2)` as a pair `(a, b)` with `a < b < a ^ b`, so each
/// two-dimensional subspace appears once.
pub fn lines_of_p5() -> Vec<(u8, u8)> {
    let mut out = Vec::with_capacity(651);
    for a in 1u8..64 {
        for b in a + 1..64 {
            if b < (a ^ b) {
                out.push((a, b));
            }
        }
    }
    out
}

/// Coefficients of `s^3, s^2 t, s t^2, t^3` in `F(s a + t b)`.
pub fn restrict_to_line(form: &MultiPoly<F2>, a: u8, b: u8) -> [u8; 4] {
    let images: Vec<MultiPoly<F2>> = (0..6)
        .map(|i| MultiPoly::from_terms(F2, 2, [(Monomial::var(0), bit(a, i)), (Monomial::var(1), bit(b, i))]))
        .collect();
    let g = form.substitute(&images).expect("six variables");
    std::array::from_fn(|k| g.coeff(&Monomial::from_exps(&[3 - k as u16, k as u16])))
}

/// All lines of `P^5(F_2)` lying on `X`.
pub fn lines_on(r: &ReducedCubic) -> Vec<(u8, u8)> {
    lines_of_p5().into_iter().filter(|&(a, b)| restrict_to_line(r.form(), a, b) == [0; 4]).collect()
}

/// First line on `X` in the enumeration order of [`lines_of_p5`].
pub fn find_line(r: &ReducedCubic) -> Option<LineWitness> {
    find_line_in(r, &lines_of_p5())
}

/// First line of `candidates` lying on `X`.
pub fn find_line_in(r: &ReducedCubic, candidates: &[(u8, u8)]) -> Option<LineWitness> {
    candidates
        .iter()
        .find(|&&(a, b)| restrict_to_line(r.form(), a, b) == [0; 4])
        .map(|&(a, b)| LineWitness::new(a, b).expect("distinct nonzero vectors"))
}

/// Whether the transformed cubic vanishes on `{x2 = .. = x5 = 0}`.
pub fn witness_is_valid(r: &ReducedCubic, w: &LineWitness) -> bool {
    let g = w.transform(r);
    (0..4u16).all(|k| F2.is_zero(&g.coeff(&Monomial::from_exps(&[3 - k, k, 0, 0, 0, 0]))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::FIXTURES;
    use crate::zeta::reduce::reduce_mod_2;

    #[test]
    fn there_are_651_lines() {
        let lines = lines_of_p5();
        assert_eq!(lines.len(), 651);
        let mut spans: Vec<[u8; 3]> = lines
            .iter()
            .map(|&(a, b)| {
                let mut s = [a, b, a ^ b];
                s.sort();
                s
            })
            .collect();
        spans.sort();
        spans.dedup();
        assert_eq!(spans.len(), 651);
    }

    #[test]
    fn fixtures_have_lines() {
        for fx in &FIXTURES {
            let r = reduce_mod_2(&fx.fourfold()).unwrap();
            let w = find_line(&r).unwrap_or_else(|| panic!("{} has no line", fx.tag));
            assert!(witness_is_valid(&r, &w));
        }
    }

    #[test]
    fn fermat_has_lines() {
        let r = ReducedCubic::from_text("x0^3 + x1^3 + x2^3 + x3^3 + x4^3 + x5^3").unwrap();
        let w = find_line(&r).unwrap();
        assert!(witness_is_valid(&r, &w));
        // x_i + x_j on pairs of coordinates: three disjoint pairings give many lines
        assert!(lines_on(&r).len() > 10);
    }

    // found by annealing over all cubic forms; no form without lines turned up
    const ONE_LINE: &str = "x0^3 + x0*x1^2 + x1^3 + x0*x1*x2 + x1^2*x2 + x0*x2*x3 + x2*x3^2 + x1^2*x4 + x2^2*x4 \
        + x2*x4^2 + x4^3 + x0^2*x5 + x0*x2*x5 + x0*x3*x5 + x3^2*x5 + x1*x4*x5 + x2*x4*x5 + x0*x5^2 + x2*x5^2";

    #[test]
    fn cubic_with_a_single_line() {
        let r = ReducedCubic::from_text(ONE_LINE).unwrap();
        let on = lines_on(&r);
        assert_eq!(on.len(), 1);
        let w = find_line(&r).unwrap();
        assert!(witness_is_valid(&r, &w));
        let others: Vec<(u8, u8)> = lines_of_p5().into_iter().filter(|l| *l != on[0]).collect();
        assert!(find_line_in(&r, &others).is_none());
    }

    #[test]
    fn witness_round_trips_through_json() {
        let w = LineWitness::new(3, 12).unwrap();
        let s = serde_json::to_string(&w).unwrap();
        let back: LineWitness = serde_json::from_str(&s).unwrap();
        assert_eq!(back, w);
    }
}
