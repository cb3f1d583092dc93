//! Normal-form families of cubic fourfolds `F = x5*q(x0..x5) + f_K(x0..x4)`.
//!
//! Each family fixes a few monomials of `f_K` with coefficient 1 and leaves
//! the remaining slots free; `q` is an arbitrary quadric (21 coefficients).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::linalg::Matrix;
use crate::algebra::monomial::monomials_of_degree;
use crate::algebra::{parse_poly, Field, Monomial, MultiPoly, Rationals};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyTag {
    #[serde(rename = "e6")]
    E6,
    #[serde(rename = "d6")]
    D6,
    #[serde(rename = "d5a1")]
    D5A1,
    #[serde(rename = "d4a2")]
    D4A2,
    #[serde(rename = "d4-2a1-s0")]
    D4A1A1S0,
    #[serde(rename = "d4-2a1-s1")]
    D4A1A1S1,
    #[serde(rename = "t333")]
    T333,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 7] = [
        FamilyTag::E6,
        FamilyTag::D6,
        FamilyTag::D5A1,
        FamilyTag::D4A2,
        FamilyTag::D4A1A1S0,
        FamilyTag::D4A1A1S1,
        FamilyTag::T333,
    ];

    pub fn cli_name(self) -> &'static str {
        match self {
            FamilyTag::E6 => "e6",
            FamilyTag::D6 => "d6",
            FamilyTag::D5A1 => "d5a1",
            FamilyTag::D4A2 => "d4a2",
            FamilyTag::D4A1A1S0 => "d4-2a1-s0",
            FamilyTag::D4A1A1S1 => "d4-2a1-s1",
            FamilyTag::T333 => "t333",
        }
    }

    /// Defect of the distinguished hyperplane section, fixed by construction.
    pub fn sigma(self) -> u8 {
        match self {
            FamilyTag::D4A1A1S1 => 1,
            _ => 0,
        }
    }

    /// Singularity labels the hyperplane section `x5 = 0` should carry,
    /// worst point first.
    pub fn expected_labels(self) -> Vec<&'static str> {
        match self {
            FamilyTag::E6 => vec!["E6"],
            FamilyTag::D6 => vec!["D6"],
            FamilyTag::D5A1 => vec!["D5", "A1"],
            FamilyTag::D4A2 => vec!["D4", "A2"],
            FamilyTag::D4A1A1S0 | FamilyTag::D4A1A1S1 => vec!["D4", "A1", "A1"],
            FamilyTag::T333 => vec!["T333"],
        }
    }

    /// Members of this family contain a plane, so they are special by construction.
    pub fn is_known_special(self) -> bool {
        self == FamilyTag::D4A1A1S1
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl FromStr for FamilyTag {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        FamilyTag::ALL
            .iter()
            .copied()
            .find(|t| t.cli_name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = FamilyTag::ALL.iter().map(|t| t.cli_name()).collect();
                format!("unknown family '{s}' (expected one of {})", names.join(", "))
            })
    }
}

/// A free coefficient of `f_K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Slot {
    pub monomial: Monomial,
    pub name: String,
}

/// `multiplier * (Σ c_i x_{vars[i]})^2`, the one non-linear block (D4+A2).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareBlock {
    pub multiplier: Monomial,
    pub vars: Vec<usize>,
    pub names: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FamilySchema {
    pub tag: FamilyTag,
    pub fixed_terms: Vec<Monomial>,
    pub free_slots: Vec<Slot>,
    pub square_block: Option<SquareBlock>,
}

impl FamilySchema {
    /// Number of free parameters of `f_K`.
    pub fn p_k(&self) -> usize {
        self.free_slots.len() + self.square_block.as_ref().map_or(0, |b| b.names.len())
    }

    /// Dimension of the affine family of full cubics `x5*q + f_K`.
    pub fn family_dim(&self) -> usize {
        Q_SLOTS + self.p_k()
    }
}

pub const Q_SLOTS: usize = 21;

fn mono(vars: &[usize]) -> Monomial {
    Monomial::from_vars(vars)
}

/// Adds `prefix * m` for each quadratic monomial `m` in `vars`.
fn quadric_slots(out: &mut Vec<Slot>, prefix: &[usize], vars: &[usize], label: &str) {
    for (a, &i) in vars.iter().enumerate() {
        for &j in &vars[a..] {
            let mut v = prefix.to_vec();
            v.extend([i, j]);
            out.push(Slot { monomial: mono(&v), name: format!("{label}_{i}{j}") });
        }
    }
}

fn linear_slots(out: &mut Vec<Slot>, prefix: &[usize], vars: &[usize], label: &str) {
    for &i in vars {
        let mut v = prefix.to_vec();
        v.push(i);
        out.push(Slot { monomial: mono(&v), name: format!("{label}_{i}") });
    }
}

pub fn schema(tag: FamilyTag) -> FamilySchema {
    let mut free = Vec::new();
    let mut square_block = None;
    let fixed = match tag {
        FamilyTag::E6 => {
            quadric_slots(&mut free, &[1], &[1, 3, 4], "q1");
            quadric_slots(&mut free, &[2], &[2, 3, 4], "q2");
            linear_slots(&mut free, &[1, 2], &[1, 2, 3, 4], "l");
            vec![mono(&[0, 1, 2]), mono(&[3, 3, 3])]
        }
        FamilyTag::D6 => {
            quadric_slots(&mut free, &[1], &[1, 3, 4], "q1");
            quadric_slots(&mut free, &[2], &[2, 3], "q2");
            linear_slots(&mut free, &[2, 4], &[2, 3], "h");
            linear_slots(&mut free, &[1, 2], &[1, 2, 3, 4], "l");
            vec![mono(&[0, 1, 2]), mono(&[3, 3, 4])]
        }
        FamilyTag::D5A1 => {
            quadric_slots(&mut free, &[1], &[1, 3, 4], "q1");
            quadric_slots(&mut free, &[2], &[3, 4], "q2");
            linear_slots(&mut free, &[1, 2], &[1, 2, 3, 4], "l");
            vec![mono(&[0, 1, 2]), mono(&[3, 3, 4])]
        }
        FamilyTag::D4A2 => {
            quadric_slots(&mut free, &[1], &[1, 3, 4], "q1");
            linear_slots(&mut free, &[1, 2], &[1, 2, 3, 4], "l");
            square_block = Some(SquareBlock {
                multiplier: mono(&[2]),
                vars: vec![3, 4],
                names: vec!["h_3".into(), "h_4".into()],
            });
            vec![mono(&[0, 1, 2]), mono(&[3, 3, 4]), mono(&[4, 4, 4])]
        }
        FamilyTag::D4A1A1S0 => {
            quadric_slots(&mut free, &[1], &[3, 4], "q1");
            quadric_slots(&mut free, &[2], &[3, 4], "q2");
            linear_slots(&mut free, &[1, 2], &[1, 2, 3, 4], "l");
            vec![mono(&[0, 1, 2]), mono(&[3, 3, 4]), mono(&[4, 4, 4])]
        }
        FamilyTag::D4A1A1S1 => {
            quadric_slots(&mut free, &[1], &[1, 3, 4], "q1");
            linear_slots(&mut free, &[2, 4], &[3, 4], "h");
            linear_slots(&mut free, &[1, 2], &[1, 2, 3, 4], "l");
            vec![mono(&[0, 1, 2]), mono(&[3, 3, 4]), mono(&[4, 4, 4])]
        }
        FamilyTag::T333 => {
            for m in monomials_of_degree(5, 3) {
                if m.exp(0) == 0 {
                    free.push(Slot { monomial: m, name: format!("f3_{}", exps_label(&m)) });
                }
            }
            vec![mono(&[0, 1, 1])]
        }
    };
    FamilySchema { tag, fixed_terms: fixed, free_slots: free, square_block }
}

fn exps_label(m: &Monomial) -> String {
    (1..5).map(|i| m.exp(i).to_string()).collect()
}

/// The 21 monomials `x5 * x_i * x_j`.
pub fn q_monomials() -> Vec<Monomial> {
    let mut v = Vec::with_capacity(Q_SLOTS);
    for i in 0..6 {
        for j in i..6 {
            v.push(mono(&[5, i, j]));
        }
    }
    v
}

/// A cubic form in `x0..x5` with its family metadata. The distinguished
/// hyperplane is always `x5 = 0` and the distinguished point `[1:0:0:0:0:0]`.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicFourfold {
    pub form: MultiPoly<Rationals>,
    pub family: Option<FamilyTag>,
    pub seed: Option<u64>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CubicFile {
    pub form: String,
    #[serde(default)]
    pub family: Option<FamilyTag>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub note: String,
    #[serde(default = "default_hyperplane")]
    pub distinguished_hyperplane: String,
    #[serde(default = "default_point")]
    pub distinguished_point: Vec<i64>,
}

fn default_hyperplane() -> String {
    "x5".into()
}

fn default_point() -> Vec<i64> {
    vec![1, 0, 0, 0, 0, 0]
}

#[derive(Debug, thiserror::Error)]
pub enum CubicError {
    #[error("form is not a homogeneous cubic in x0..x5")]
    NotCubic,
    #[error(transparent)]
    Parse(#[from] crate::algebra::AlgebraError),
    #[error("form does not match the {0} schema: {1}")]
    SchemaMismatch(FamilyTag, String),
}

impl CubicFourfold {
    pub fn new(form: MultiPoly<Rationals>, family: Option<FamilyTag>) -> Result<Self, CubicError> {
        if form.nvars() != 6 || !form.is_homogeneous() || form.degree() != Some(3) {
            return Err(CubicError::NotCubic);
        }
        let c = CubicFourfold { form, family, seed: None, note: String::new() };
        if let Some(tag) = family {
            c.check_schema(tag)?;
        }
        Ok(c)
    }

    pub fn parse(text: &str, family: Option<FamilyTag>) -> Result<Self, CubicError> {
        Self::new(parse_poly(text, 6)?, family)
    }

    /// Checks fixed terms and that every other monomial is a schema slot or
    /// divisible by `x5`. The square block of D4+A2 is checked for shape only.
    pub fn check_schema(&self, tag: FamilyTag) -> Result<(), CubicError> {
        let s = schema(tag);
        for m in &s.fixed_terms {
            if !Rationals.is_one(&self.form.coeff(m)) {
                return Err(CubicError::SchemaMismatch(tag, format!("fixed term {m} must have coefficient 1")));
            }
        }
        let mut allowed: Vec<Monomial> = s.fixed_terms.clone();
        allowed.extend(s.free_slots.iter().map(|sl| sl.monomial));
        if let Some(b) = &s.square_block {
            for (a, &i) in b.vars.iter().enumerate() {
                for &j in &b.vars[a..] {
                    allowed.push(b.multiplier.mul(&mono(&[i, j])));
                }
            }
        }
        for m in self.form.monomials() {
            if m.exp(5) == 0 && !allowed.contains(m) {
                return Err(CubicError::SchemaMismatch(tag, format!("monomial {m} outside the schema")));
            }
        }
        Ok(())
    }

    /// `f = F(x0..x4, 0)` in five variables.
    pub fn section(&self) -> MultiPoly<Rationals> {
        self.form.specialize_var(5, &BigRational::zero())
    }

    /// `∂F/∂x5` restricted to `x5 = 0`, in five variables.
    pub fn normal_derivative(&self) -> MultiPoly<Rationals> {
        self.form.partial(5).specialize_var(5, &BigRational::zero())
    }

    pub fn to_file(&self) -> CubicFile {
        CubicFile {
            form: self.form.to_string(),
            family: self.family,
            seed: self.seed,
            note: self.note.clone(),
            distinguished_hyperplane: default_hyperplane(),
            distinguished_point: default_point(),
        }
    }

    pub fn from_file(file: &CubicFile) -> Result<Self, CubicError> {
        let mut c = Self::parse(&file.form, file.family)?;
        c.seed = file.seed;
        c.note = file.note.clone();
        Ok(c)
    }
}

fn random_coeff(rng: &mut ChaCha8Rng, bound: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(rng.gen_range(-bound..=bound)))
}

/// Random member of family `tag`: free slots of `f_K` first (schema order),
/// then the square block parameters, then the 21 coefficients of `q`.
pub fn sample(tag: FamilyTag, seed: u64, bound: i64) -> CubicFourfold {
    assert!(bound >= 1, "coefficient bound must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = schema(tag);
    let mut form = MultiPoly::zero(Rationals, 6);
    for m in &s.fixed_terms {
        form.add_term(*m, BigRational::one());
    }
    for slot in &s.free_slots {
        let c = random_coeff(&mut rng, bound);
        form.add_term(slot.monomial, c);
    }
    if let Some(b) = &s.square_block {
        let mut h = MultiPoly::zero(Rationals, 6);
        for &v in &b.vars {
            let c = random_coeff(&mut rng, bound);
            h.add_term(Monomial::var(v), c);
        }
        let mult = MultiPoly::from_terms(Rationals, 6, [(b.multiplier, BigRational::one())]);
        form = &form + &(&mult * &h.pow(2));
    }
    for m in q_monomials() {
        let c = random_coeff(&mut rng, bound);
        form.add_term(m, c);
    }
    CubicFourfold {
        form,
        family: Some(tag),
        seed: Some(seed),
        note: format!("sampled from {tag} with coefficient bound {bound}"),
    }
}

/// Basis (as cubic forms) of the tangent directions of the family through
/// `member`. For every family except D4+A2 this is the span of the free
/// slots and the `q` slots; for D4+A2 the square block contributes its
/// derivatives `x2*h*x3`, `x2*h*x4` at the member's `h`.
pub fn family_direction_space(tag: FamilyTag, member: &MultiPoly<Rationals>) -> Vec<MultiPoly<Rationals>> {
    let s = schema(tag);
    let one = BigRational::one();
    let mut basis: Vec<MultiPoly<Rationals>> = q_monomials()
        .into_iter()
        .chain(s.free_slots.iter().map(|sl| sl.monomial))
        .map(|m| MultiPoly::from_terms(Rationals, 6, [(m, one.clone())]))
        .collect();
    if let Some(b) = &s.square_block {
        let h = square_block_linear_form(b, member);
        let mult = MultiPoly::from_terms(Rationals, 6, [(b.multiplier, one.clone())]);
        for &v in &b.vars {
            basis.push(&(&mult * &h) * &MultiPoly::var(Rationals, 6, v));
        }
    }
    basis
}

/// Recovers `h` from `multiplier * h^2` in a member (up to sign).
fn square_block_linear_form(b: &SquareBlock, member: &MultiPoly<Rationals>) -> MultiPoly<Rationals> {
    // h = c3 x3 + c4 x4 with x2*h^2 = c3^2 x2x3^2 + 2c3c4 x2x3x4 + c4^2 x2x4^2
    let (i, j) = (b.vars[0], b.vars[1]);
    let a = member.coeff(&b.multiplier.mul(&mono(&[i, i])));
    let mid = member.coeff(&b.multiplier.mul(&mono(&[i, j])));
    let c = member.coeff(&b.multiplier.mul(&mono(&[j, j])));
    let ci = rational_sqrt(&a);
    let cj = rational_sqrt(&c);
    let mut h = MultiPoly::zero(Rationals, 6);
    if let (Some(ci), Some(cj)) = (ci, cj) {
        let two = BigRational::from_integer(2.into());
        let cj = if &two * &ci * &cj == mid { cj } else { -cj };
        h.add_term(Monomial::var(i), ci);
        h.add_term(Monomial::var(j), cj);
    }
    h
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r < &BigRational::zero() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| BigRational::new(n, d))
}

/// Coefficient vector of a cubic in the 56-monomial basis (grevlex-descending).
pub fn coefficient_vector(f: &MultiPoly<Rationals>) -> Vec<BigRational> {
    monomials_of_degree(6, 3).iter().map(|m| f.coeff(m)).collect()
}

/// Dimension of `{A in gl6 : Σ A_ij x_j ∂_i F ∈ directions}`.
pub fn stabilizer_tangent_dim(form: &MultiPoly<Rationals>, directions: &[MultiPoly<Rationals>]) -> usize {
    let grad = form.gradient();
    let mut columns: Vec<Vec<BigRational>> = Vec::with_capacity(36 + directions.len());
    for gi in &grad {
        for j in 0..6 {
            columns.push(coefficient_vector(&(gi * &MultiPoly::var(Rationals, 6, j))));
        }
    }
    for d in directions {
        columns.push(coefficient_vector(d));
    }
    let ncols = columns.len();
    let rows: Vec<Vec<BigRational>> = (0..56).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
    let m = Matrix::from_rows(Rationals, rows, ncols);
    let dir_rank = {
        let drows: Vec<Vec<BigRational>> =
            (0..56).map(|r| directions.iter().map(|d| coefficient_vector(d)[r].clone()).collect()).collect();
        Matrix::from_rows(Rationals, drows, directions.len()).rank()
    };
    // kernel of [V | D] counts pairs (A, w); the directions are independent
    ncols - m.rank() - (directions.len() - dir_rank)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DimensionAudit {
    pub family: FamilyTag,
    pub p_k: usize,
    pub d_k: usize,
    pub dim_d_k: i64,
    pub per_sample: Vec<usize>,
    pub all_samples_agree: bool,
}

/// Minimum stabilizer-tangent dimension over `samples` random members.
pub fn audit_dimensions(tag: FamilyTag, samples: usize, seed: u64, bound: i64) -> DimensionAudit {
    assert!(samples >= 1, "need at least one sample");
    let s = schema(tag);
    let per_sample: Vec<usize> = (0..samples as u64)
        .map(|k| {
            let c = sample(tag, seed.wrapping_add(k), bound);
            let dirs = family_direction_space(tag, &c.form);
            stabilizer_tangent_dim(&c.form, &dirs)
        })
        .collect();
    let d_k = *per_sample.iter().min().expect("nonempty");
    DimensionAudit {
        family: tag,
        p_k: s.p_k(),
        d_k,
        dim_d_k: s.family_dim() as i64 - d_k as i64,
        all_samples_agree: per_sample.iter().all(|&v| v == d_k),
        per_sample,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_counts() {
        let p: Vec<usize> = FamilyTag::ALL.iter().map(|&t| schema(t).p_k()).collect();
        assert_eq!(p, vec![16, 15, 13, 12, 10, 12, 20]);
    }

    #[test]
    fn cli_names_round_trip() {
        for t in FamilyTag::ALL {
            assert_eq!(t.cli_name().parse::<FamilyTag>().unwrap(), t);
        }
        assert!("e7".parse::<FamilyTag>().is_err());
    }

    #[test]
    fn sampling_is_deterministic_and_in_schema() {
        for t in FamilyTag::ALL {
            let a = sample(t, 7, 100);
            let b = sample(t, 7, 100);
            assert_eq!(a, b);
            assert!(a.form.is_homogeneous() && a.form.degree() == Some(3));
            a.check_schema(t).unwrap();
            let fk = a.form.terms().filter(|(m, _)| m.exp(5) == 0).count();
            assert_eq!(a.section().len(), fk);
        }
        assert_ne!(sample(FamilyTag::E6, 1, 100), sample(FamilyTag::E6, 2, 100));
    }

    #[test]
    fn t333_has_fixed_term() {
        let c = sample(FamilyTag::T333, 3, 100);
        assert!(Rationals.is_one(&c.form.coeff(&mono(&[0, 1, 1]))));
    }

    #[test]
    fn direction_space_dimensions() {
        for t in FamilyTag::ALL {
            let c = sample(t, 11, 100);
            let dirs = family_direction_space(t, &c.form);
            assert_eq!(dirs.len(), schema(t).family_dim());
            let x5_cubed = MultiPoly::from_terms(Rationals, 6, [(mono(&[5, 5, 5]), BigRational::one())]);
            assert!(dirs.contains(&x5_cubed));
        }
        assert_eq!(schema(FamilyTag::E6).family_dim(), 37);
        assert_eq!(schema(FamilyTag::T333).family_dim(), 41);
    }

    #[test]
    fn square_block_recovered() {
        let c = sample(FamilyTag::D4A2, 5, 100);
        let s = schema(FamilyTag::D4A2);
        let b = s.square_block.unwrap();
        let h = square_block_linear_form(&b, &c.form);
        let x2 = MultiPoly::var(Rationals, 6, 2);
        let part = &x2 * &h.pow(2);
        for (m, v) in part.terms() {
            assert_eq!(&c.form.coeff(m), v);
        }
    }

    #[test]
    fn stabilizer_dimensions_match_family_counts() {
        let d: Vec<usize> = FamilyTag::ALL.iter().map(|&t| audit_dimensions(t, 5, 100, 100).d_k).collect();
        assert_eq!(d, vec![18, 17, 15, 14, 12, 14, 23]);
    }
}
