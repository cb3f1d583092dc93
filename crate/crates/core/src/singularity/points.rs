//! Locating singular points: rational ones exactly, all of them by count.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::algebra::field::random_prime;
use crate::algebra::{Field, MultiPoly, PrimeField, Rationals, UniPoly};
use crate::algebra::{LinearChange, Monomial};
use crate::algebra::linalg::Matrix;

use super::groebner::groebner_basis;
use super::SingularityError;

/// Integer coefficients (content removed) of a nonzero rational polynomial.
fn primitive_integer_coeffs(p: &UniPoly<Rationals>) -> Vec<BigInt> {
    let l = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

fn eval_mod(coeffs: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

/// `a/b ≡ r (mod m)` with `|a|, b <= sqrt(m/2)`, if one exists.
pub fn rational_reconstruction(r: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        (r0, r1) = (r1.clone(), &r0 - &q * &r1);
        (t0, t1) = (t1.clone(), &t0 - &q * &t1);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// All rational roots of a nonzero polynomial, without multiplicity, sorted.
pub fn rational_roots(p: &UniPoly<Rationals>) -> Vec<BigRational> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut sqf = p.squarefree_part();
    let mut roots = Vec::new();
    if sqf.coeff(0).is_zero() {
        roots.push(BigRational::zero());
        let shifted = sqf.coeffs()[1..].to_vec();
        sqf = UniPoly::new(Rationals, shifted);
    }
    if sqf.degree().unwrap_or(0) > 0 {
        roots.extend(nonzero_rational_roots(&sqf));
    }
    roots.sort();
    roots.dedup();
    roots
}

fn nonzero_rational_roots(sqf: &UniPoly<Rationals>) -> Vec<BigRational> {
    let a = primitive_integer_coeffs(sqf);
    let lead = a.last().expect("nonzero").abs();
    let tail = a[0].abs();
    let bound = if lead > tail { lead.clone() } else { tail.clone() };
    let target = BigInt::from(2) * &bound * &bound;
    for p in (3u32..).filter(|&q| crate::algebra::field::is_prime_u64(q as u64)) {
        let pb = BigInt::from(p);
        if (&lead % &pb).is_zero() {
            continue;
        }
        let fp = PrimeField::new(p);
        let poly_p = UniPoly::new(fp, a.iter().map(|c| fp.reduce_bigint(c)).collect());
        if poly_p.gcd(&poly_p.derivative()).degree() != Some(0) {
            continue;
        }
        let deriv: Vec<BigInt> = a.iter().enumerate().skip(1).map(|(k, c)| c * BigInt::from(k)).collect();
        let mut out = Vec::new();
        for r0 in 0..p {
            if !fp.is_zero(&poly_p.eval(&r0)) {
                continue;
            }
            // Newton lifting doubles the precision each step
            let mut m = pb.clone();
            let mut r = BigInt::from(r0);
            while m <= target {
                m = &m * &m;
                let fr = eval_mod(&a, &r, &m);
                let dfr = eval_mod(&deriv, &r, &m);
                let inv = mod_inverse(&dfr, &m).expect("simple root stays simple");
                r = (&r - fr * inv).mod_floor(&m);
            }
            if let Some(q) = rational_reconstruction(&r, &m) {
                if sqf.eval(&q).is_zero() {
                    out.push(q);
                }
            }
        }
        return out;
    }
    unreachable!("some prime keeps the polynomial squarefree")
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// A rational point of `P^4` in normalized form: first nonzero coordinate is 1.
pub type RationalPoint = Vec<BigRational>;

/// Rational singular points of a 5-variable cubic, searched stratum by
/// stratum: `x0 = .. = x_{k-1} = 0, x_k = 1`.
pub fn rational_singular_points(f: &MultiPoly<Rationals>) -> Result<Vec<RationalPoint>, SingularityError> {
    let n = f.nvars();
    let grad = f.gradient();
    let mut points = Vec::new();
    for k in 0..n {
        let free = n - k - 1;
        // substitute x_j = 0 (j < k), x_k = 1, remaining -> chart variables
        let images: Vec<MultiPoly<Rationals>> = (0..n)
            .map(|j| match j.cmp(&k) {
                std::cmp::Ordering::Less => MultiPoly::zero(Rationals, free),
                std::cmp::Ordering::Equal => MultiPoly::one(Rationals, free),
                std::cmp::Ordering::Greater => MultiPoly::var(Rationals, free, j - k - 1),
            })
            .collect();
        let gens: Vec<MultiPoly<Rationals>> = grad
            .iter()
            .map(|g| g.substitute(&images).expect("variable count"))
            .filter(|g| !g.is_zero())
            .collect();
        let lift = |chart: Vec<BigRational>| {
            let mut p = vec![BigRational::zero(); n];
            p[k] = BigRational::one();
            for (i, v) in chart.into_iter().enumerate() {
                p[k + 1 + i] = v;
            }
            p
        };
        if free == 0 {
            if gens.is_empty() {
                points.push(lift(Vec::new()));
            }
            continue;
        }
        if gens.is_empty() {
            return Err(SingularityError::NotIsolated);
        }
        let gb = groebner_basis(&gens);
        if gb.is_unit_ideal() {
            continue;
        }
        let q = gb.quotient().ok_or(SingularityError::NotIsolated)?;
        let mut candidates: Vec<Vec<BigRational>> = vec![Vec::new()];
        for v in 0..free {
            let roots = rational_roots(&q.minimal_polynomial(&MultiPoly::var(Rationals, free, v)));
            candidates = candidates
                .into_iter()
                .flat_map(|c| roots.iter().map(move |r| [c.clone(), vec![r.clone()]].concat()))
                .collect();
        }
        for c in candidates {
            if gens.iter().all(|g| g.evaluate(&c).is_zero()) {
                points.push(lift(c));
            }
        }
    }
    Ok(points)
}

/// Result of counting singular points over the algebraic closure in a
/// random chart modulo a random prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricCount {
    /// Length of the singular scheme (the global Tjurina number).
    pub length: usize,
    /// Number of distinct points.
    pub points: usize,
    pub prime: u32,
}

/// Counts singular points of a 5-variable cubic: a random linear change
/// puts every point in the chart `x0 = 1`, the Gröbner quotient there has
/// dimension `τ`, and the squarefree part of the minimal polynomial of a
/// random linear form has one root per point. Takes the best of `tries`.
pub fn count_geometric_points<R: Rng>(f: &MultiPoly<Rationals>, rng: &mut R, tries: usize) -> Result<GeometricCount, SingularityError> {
    let n = f.nvars();
    let mut best: Option<GeometricCount> = None;
    for _ in 0..tries.max(1) {
        let p = random_prime(rng);
        let fp = PrimeField::new(p);
        let Ok(fmod) = f.map_field(&fp, |c| fp.from_rational(c)) else { continue };
        let change = loop {
            let rows: Vec<Vec<u32>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..p)).collect()).collect();
            if let Ok(t) = LinearChange::new(Matrix::from_rows(fp, rows, n)) {
                break t;
            }
        };
        let g = change.apply(&fmod).expect("variable count");
        let chart = g.specialize_var(0, &fp.one());
        let mut gens: Vec<MultiPoly<PrimeField>> =
            g.gradient().iter().map(|d| d.specialize_var(0, &fp.one())).filter(|d| !d.is_zero()).collect();
        gens.push(chart);
        let gb = groebner_basis(&gens);
        let Some(q) = gb.quotient() else { return Err(SingularityError::NotIsolated) };
        let ell = MultiPoly::from_terms(fp, n - 1, (0..n - 1).map(|i| (Monomial::var(i), rng.gen_range(1..p))));
        let points = if q.dim() == 0 { 0 } else { q.minimal_polynomial(&ell).squarefree_part().degree().unwrap_or(0) };
        let cand = GeometricCount { length: q.dim(), points, prime: p };
        best = Some(match best {
            Some(b) if (b.length, b.points) >= (cand.length, cand.points) => b,
            _ => cand,
        });
    }
    best.ok_or(SingularityError::NoGoodPrime)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;
    use rand::SeedableRng;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn reconstruction_recovers_small_fractions() {
        let m = BigInt::from(1_000_000_007i64);
        for (a, b) in [(3, 7), (-5, 11), (0, 1), (123, 4)] {
            let r = (BigInt::from(a) * mod_inverse(&BigInt::from(b), &m).unwrap()).mod_floor(&m);
            assert_eq!(rational_reconstruction(&r, &m), Some(q(a, b)));
        }
    }

    #[test]
    fn finds_rational_roots_only() {
        // (2t - 3)(t + 5)^2 (t^2 + 1) t
        let p = crate::algebra::parse_unipoly("(2*t - 3)*(t + 5)^2*(t^2 + 1)*t").unwrap();
        assert_eq!(rational_roots(&p), vec![q(-5, 1), q(0, 1), q(3, 2)]);
        let irr = crate::algebra::parse_unipoly("t^2 - 2").unwrap();
        assert!(rational_roots(&irr).is_empty());
        let big = crate::algebra::parse_unipoly("(1234567*t - 7654321)*(t^2 + t + 1)").unwrap();
        assert_eq!(rational_roots(&big), vec![q(7654321, 1234567)]);
    }

    #[test]
    fn cayley_cone_points() {
        // four coordinate points, each an A2 after adding the cone variable
        let f = parse_poly("x1*x2*x3 + x0*x2*x3 + x0*x1*x3 + x0*x1*x2 + x4^3", 5).unwrap();
        let pts = rational_singular_points(&f).unwrap();
        assert_eq!(pts.len(), 4);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let c = count_geometric_points(&f, &mut rng, 2).unwrap();
        assert_eq!((c.length, c.points), (8, 4));
    }
}
