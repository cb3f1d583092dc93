//! `#X(F_{2^m})` by summing conic counts over the planes through a line,
//! plus a direct enumeration used as an oracle for small `m`.
//!
//! The fast path only classifies a fiber when its conic is singular. The
//! discriminant is a quintic in `y`; on the chart `y2 = 1` with `y3, y4`
//! fixed it is a univariate quintic in `y5`, evaluated along `y5 = g^k` with
//! one antilog lookup per monomial. Since every coefficient lies in `F_2`,
//! Frobenius permutes the fibers, and the outer loop runs over one `y3` per
//! Frobenius orbit, weighted by the orbit length.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Field, MultiPoly, F2};
use crate::gf2m::FieldCtx;

use super::conic::conic_count;
use super::fibration::{conic_fibration, ConicFibration};
use super::line::{witness_is_valid, LineWitness};
use super::reduce::{good_reduction, ReducedCubic};
use super::ZetaError;

/// Largest extension degree accepted by [`count_points`].
pub const MAX_M: u32 = 12;
/// Largest extension degree accepted by [`count_points_brute`].
pub const MAX_BRUTE_M: u32 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountAlgorithm {
    Conic,
    Brute,
}

impl std::fmt::Display for CountAlgorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CountAlgorithm::Conic => "conic",
            CountAlgorithm::Brute => "brute",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CountRecord {
    pub m: u32,
    #[serde(rename = "N")]
    pub n: u64,
    pub algorithm: CountAlgorithm,
    pub elapsed_seconds: f64,
}

pub const CSV_HEADER: &str = "m,N,algorithm,elapsed_seconds";

pub fn counts_to_csv(records: &[CountRecord]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in records {
        s.push_str(&format!("{},{},{},{:.3}\n", r.m, r.n, r.algorithm, r.elapsed_seconds));
    }
    s
}

pub fn counts_from_csv(text: &str) -> Result<Vec<CountRecord>, ZetaError> {
    let bad = |line: &str| ZetaError::Parse(format!("bad count row: {line}"));
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    if lines.next().map(str::trim) != Some(CSV_HEADER) {
        return Err(ZetaError::Parse("missing count header".into()));
    }
    lines
        .map(|line| {
            let f: Vec<&str> = line.trim().split(',').collect();
            if f.len() != 4 {
                return Err(bad(line));
            }
            let algorithm = match f[2] {
                "conic" => CountAlgorithm::Conic,
                "brute" => CountAlgorithm::Brute,
                _ => return Err(bad(line)),
            };
            Ok(CountRecord {
                m: f[0].parse().map_err(|_| bad(line))?,
                n: f[1].parse().map_err(|_| bad(line))?,
                algorithm,
                elapsed_seconds: f[3].parse().map_err(|_| bad(line))?,
            })
        })
        .collect()
}

/// A form over `F_2` as a list of exponent vectors.
#[derive(Clone, Debug)]
struct Compiled<const K: usize> {
    terms: Vec<[u8; K]>,
}

impl<const K: usize> Compiled<K> {
    fn new(p: &MultiPoly<F2>) -> Self {
        let terms = p
            .terms()
            .filter(|(_, c)| !F2.is_zero(c))
            .map(|(m, _)| std::array::from_fn(|i| m.exp(i) as u8))
            .collect();
        Compiled { terms }
    }

    #[inline]
    fn eval(&self, ctx: &FieldCtx, pw: &[[u16; 6]; K]) -> u16 {
        let mut acc = 0u16;
        for t in &self.terms {
            let mut v = 1u16;
            for i in 0..K {
                v = ctx.mul(v, pw[i][t[i] as usize]);
            }
            acc ^= v;
        }
        acc
    }
}

/// `[1, x, .., x^5]`.
#[inline]
fn powers(ctx: &FieldCtx, x: u16) -> [u16; 6] {
    let mut p = [1u16; 6];
    for k in 1..6 {
        p[k] = ctx.mul(p[k - 1], x);
    }
    p
}

/// Precomputed data for summing conic counts over `P^3(F_q)`.
#[derive(Clone, Debug)]
pub struct CountPlan {
    coeffs: [Compiled<4>; 6],
    /// Discriminant terms `(e3, e4)` grouped by the exponent of `y5`; `e2` is
    /// irrelevant on the chart `y2 = 1`.
    delta_by_y5: [Vec<(u8, u8)>; 6],
}

impl CountPlan {
    pub fn new(fib: &ConicFibration) -> Self {
        let coeffs = std::array::from_fn(|k| Compiled::new(&fib.coeffs[k]));
        let mut delta_by_y5: [Vec<(u8, u8)>; 6] = Default::default();
        for (m, _) in fib.discriminant().terms() {
            delta_by_y5[m.exp(3) as usize].push((m.exp(1) as u8, m.exp(2) as u8));
        }
        CountPlan { coeffs, delta_by_y5 }
    }

    /// `[a, b, c, d, e, f]` of `Q_y` at `y = (y2, y3, y4, y5)`.
    #[inline]
    pub fn fiber_coefficients(&self, ctx: &FieldCtx, y: [u16; 4]) -> [u16; 6] {
        let pw = [powers(ctx, y[0]), powers(ctx, y[1]), powers(ctx, y[2]), powers(ctx, y[3])];
        std::array::from_fn(|k| self.coeffs[k].eval(ctx, &pw))
    }

    #[inline]
    fn fiber(&self, ctx: &FieldCtx, y: [u16; 4]) -> u64 {
        conic_count(ctx, self.fiber_coefficients(ctx, y))
    }

    /// Sum over `y5` of the fibers at `(1, y3, y4, y5)`, classifying only
    /// the fibers where the discriminant vanishes.
    fn row_fast(&self, ctx: &FieldCtx, p3: &[u16; 6], y3: u16, y4: u16) -> u64 {
        let q = ctx.size();
        let order = q - 1;
        let p4 = powers(ctx, y4);
        let mut uc = [0u16; 6];
        for (j, terms) in self.delta_by_y5.iter().enumerate() {
            for &(e3, e4) in terms {
                uc[j] ^= ctx.mul(p3[e3 as usize], p4[e4 as usize]);
            }
        }
        if uc.iter().all(|&c| c == 0) {
            return (0..q as u16).map(|y5| self.fiber(ctx, [1, y3, y4, y5])).sum();
        }
        let (_, exp) = ctx.tables();
        let mut idx = [0usize; 5];
        let mut step = [0usize; 5];
        let mut active = 0;
        for j in 1..6 {
            if uc[j] != 0 {
                idx[active] = ctx.log(uc[j]) as usize;
                step[active] = j % order.max(1);
                active += 1;
            }
        }
        let mut smooth = 0u64;
        let mut singular = 0u64;
        if uc[0] != 0 {
            smooth += 1;
        } else {
            singular += self.fiber(ctx, [1, y3, y4, 0]);
        }
        for k in 0..order {
            let mut v = uc[0];
            for a in 0..active {
                v ^= exp[idx[a]];
                idx[a] += step[a];
                if idx[a] >= order {
                    idx[a] -= order;
                }
            }
            if v != 0 {
                smooth += 1;
            } else {
                singular += self.fiber(ctx, [1, y3, y4, exp[k]]);
            }
        }
        smooth * (q as u64 + 1) + singular
    }

    fn slice_fast(&self, ctx: &FieldCtx, y3: u16) -> u64 {
        let p3 = powers(ctx, y3);
        (0..ctx.size() as u16).map(|y4| self.row_fast(ctx, &p3, y3, y4)).sum()
    }

    fn slice_plain(&self, ctx: &FieldCtx, y3: u16) -> u64 {
        let q = ctx.size() as u16;
        let mut s = 0;
        for y4 in 0..q {
            for y5 in 0..q {
                s += self.fiber(ctx, [1, y3, y4, y5]);
            }
        }
        s
    }

    /// `Σ_{y ∈ P^3(F_q)} #Q_y(F_q)`. Runs on the current rayon pool.
    pub fn fiber_sum(&self, ctx: &FieldCtx, fast: bool) -> u64 {
        let q = ctx.size() as u16;
        let top: u64 = if fast {
            frobenius_orbits(ctx).par_iter().map(|&(y3, w)| w * self.slice_fast(ctx, y3)).sum()
        } else {
            (0..q).into_par_iter().map(|y3| self.slice_plain(ctx, y3)).sum()
        };
        let second: u64 =
            (0..q).into_par_iter().map(|y4| (0..q).map(|y5| self.fiber(ctx, [0, 1, y4, y5])).sum::<u64>()).sum();
        let third: u64 = (0..q).map(|y5| self.fiber(ctx, [0, 0, 1, y5])).sum();
        top + second + third + self.fiber(ctx, [0, 0, 0, 1])
    }
}

/// One representative per orbit of `x -> x^2` on `F_q`, with the orbit size.
pub fn frobenius_orbits(ctx: &FieldCtx) -> Vec<(u16, u64)> {
    let q = ctx.size();
    let mut seen = vec![false; q];
    let mut reps = Vec::new();
    for x in 0..q as u16 {
        if seen[x as usize] {
            continue;
        }
        let mut y = x;
        let mut size = 0;
        loop {
            seen[y as usize] = true;
            size += 1;
            y = ctx.square(y);
            if y == x {
                break;
            }
        }
        reps.push((x, size));
    }
    reps
}

/// Runs `f` on a dedicated pool; `threads = 0` means the rayon default.
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T, ZetaError> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().map_err(|e| ZetaError::ThreadPool(e.to_string()))?;
    Ok(pool.install(f))
}

/// `#P^2 * #P^1 - #P^1`, the excess of the blow-up of `X` along the line.
pub fn blowup_correction(q: u64) -> u64 {
    q * (q + 1) * (q + 1)
}

fn check_inputs(r: &ReducedCubic, w: &LineWitness, m: u32) -> Result<(), ZetaError> {
    if !(1..=MAX_M).contains(&m) {
        return Err(ZetaError::DegreeOutOfRange { m, max: MAX_M });
    }
    let smooth = match r.smooth() {
        Some(s) => s,
        None => good_reduction(&mut r.clone()),
    };
    if !smooth {
        return Err(ZetaError::BadReduction);
    }
    if !witness_is_valid(r, w) {
        return Err(ZetaError::InvalidWitness);
    }
    Ok(())
}

fn count_with(r: &ReducedCubic, w: &LineWitness, m: u32, threads: usize, fast: bool) -> Result<CountRecord, ZetaError> {
    check_inputs(r, w, m)?;
    let start = Instant::now();
    let plan = CountPlan::new(&conic_fibration(r, w)?);
    let ctx = FieldCtx::new(m);
    let sum = with_threads(threads, || plan.fiber_sum(&ctx, fast))?;
    let q = ctx.size() as u64;
    let n = sum.checked_sub(blowup_correction(q)).ok_or(ZetaError::InvalidWitness)?;
    Ok(CountRecord { m, n, algorithm: CountAlgorithm::Conic, elapsed_seconds: start.elapsed().as_secs_f64() })
}

/// `#X(F_{2^m})` through the conic bundle, on `threads` workers.
pub fn count_points(r: &ReducedCubic, w: &LineWitness, m: u32, threads: usize) -> Result<CountRecord, ZetaError> {
    count_with(r, w, m, threads, true)
}

/// The conic-bundle count classifying every fiber, without the
/// discriminant or Frobenius shortcuts.
pub fn count_points_plain(r: &ReducedCubic, w: &LineWitness, m: u32, threads: usize) -> Result<CountRecord, ZetaError> {
    count_with(r, w, m, threads, false)
}

/// Counts for `m = 1..=mmax`.
pub fn count_range(r: &ReducedCubic, w: &LineWitness, mmax: u32, threads: usize) -> Result<Vec<CountRecord>, ZetaError> {
    (1..=mmax).map(|m| count_points(r, w, m, threads)).collect()
}

/// Direct enumeration of `P^5(F_{2^m})`.
pub fn count_points_brute(r: &ReducedCubic, m: u32) -> Result<CountRecord, ZetaError> {
    if !(1..=MAX_BRUTE_M).contains(&m) {
        return Err(ZetaError::DegreeOutOfRange { m, max: MAX_BRUTE_M });
    }
    let start = Instant::now();
    let ctx = FieldCtx::new(m);
    let q = ctx.size();
    let form = Compiled::<6>::new(r.form());
    let pw_table: Vec<[u16; 6]> = (0..q as u16).map(|x| powers(&ctx, x)).collect();
    let mut n = 0u64;
    for lead in 0..6 {
        let free = 5 - lead;
        let mut x = [0u16; 6];
        x[lead] = 1;
        for code in 0..q.pow(free as u32) {
            let mut c = code;
            for i in lead + 1..6 {
                x[i] = (c % q) as u16;
                c /= q;
            }
            let pw: [[u16; 6]; 6] = std::array::from_fn(|i| pw_table[x[i] as usize]);
            n += (form.eval(&ctx, &pw) == 0) as u64;
        }
    }
    Ok(CountRecord { m, n, algorithm: CountAlgorithm::Brute, elapsed_seconds: start.elapsed().as_secs_f64() })
}
