//! Point counts of plane conics over `F_{2^m}`.

use crate::gf2m::FieldCtx;

/// `#{Q = 0} ⊂ P^2(F_q)` for `Q = a s^2 + b t^2 + c u^2 + d st + e su + f tu`,
/// coefficients given as `[a, b, c, d, e, f]`.
#[inline]
pub fn conic_count(ctx: &FieldCtx, q6: [u16; 6]) -> u64 {
    let q = ctx.size() as u64;
    let [a, b, c, d, e, f] = q6;
    if d == 0 && e == 0 && f == 0 {
        // a square of a linear form, or zero
        return if a == 0 && b == 0 && c == 0 { q * q + q + 1 } else { q + 1 };
    }
    let delta = ctx.mul(a, ctx.square(f)) ^ ctx.mul(b, ctx.square(e)) ^ ctx.mul(c, ctx.square(d)) ^ ctx.mul(ctx.mul(d, e), f);
    if delta != 0 {
        return q + 1;
    }
    line_pair_count(ctx, q6)
}

/// Two distinct lines through the vertex `[f : e : d]`. Restricting to a
/// coordinate line missing the vertex leaves `x z^2 + w z + y`, which splits
/// over `F_q` iff `Tr(xy / w^2) = 0`.
#[inline]
fn line_pair_count(ctx: &FieldCtx, [a, b, c, d, e, f]: [u16; 6]) -> u64 {
    let q = ctx.size() as u64;
    let (x, y, w) = if f != 0 {
        (b, c, f)
    } else if e != 0 {
        (a, c, e)
    } else {
        (a, b, d)
    };
    let w2 = ctx.square(w);
    let r = ctx.div(ctx.mul(x, y), w2).expect("w is nonzero");
    if ctx.trace(r) == 0 {
        2 * q + 1
    } else {
        1
    }
}

/// Direct enumeration of `P^2(F_q)`.
pub fn conic_count_brute(ctx: &FieldCtx, [a, b, c, d, e, f]: [u16; 6]) -> u64 {
    let q = ctx.size() as u16;
    let eval = |s: u16, t: u16, u: u16| {
        let m = |x, y| ctx.mul(x, y);
        m(a, m(s, s)) ^ m(b, m(t, t)) ^ m(c, m(u, u)) ^ m(d, m(s, t)) ^ m(e, m(s, u)) ^ m(f, m(t, u))
    };
    let mut n = 0u64;
    for t in 0..q {
        for u in 0..q {
            n += (eval(1, t, u) == 0) as u64;
        }
    }
    for u in 0..q {
        n += (eval(0, 1, u) == 0) as u64;
    }
    n + (eval(0, 0, 1) == 0) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn small_cases_over_f2() {
        let k = FieldCtx::new(1);
        // s t
        assert_eq!(conic_count(&k, [0, 0, 0, 1, 0, 0]), 5);
        // s^2 + st + t^2
        assert_eq!(conic_count(&k, [1, 1, 0, 1, 0, 0]), 1);
        assert_eq!(conic_count(&k, [0; 6]), 7);
        assert_eq!(conic_count(&k, [1, 0, 0, 0, 0, 0]), 3);
    }

    #[test]
    fn agrees_with_enumeration_over_f8() {
        let k = FieldCtx::new(3);
        for code in 0u32..1 << 18 {
            let q6: [u16; 6] = std::array::from_fn(|i| ((code >> (3 * i)) & 7) as u16);
            let n = conic_count(&k, q6);
            assert_eq!(n, conic_count_brute(&k, q6), "{q6:?}");
        }
    }

    #[test]
    fn values_are_the_four_possible_ones() {
        let k = FieldCtx::new(8);
        let q = 256u64;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..2000 {
            let mut q6: [u16; 6] = std::array::from_fn(|_| rng.gen_range(0..256));
            // bias towards degenerate conics
            if rng.gen_bool(0.5) {
                let [a, _, c, d, e, f] = q6;
                let num = k.mul(a, k.square(f)) ^ k.mul(c, k.square(d)) ^ k.mul(k.mul(d, e), f);
                if e != 0 {
                    q6[1] = k.div(num, k.square(e)).unwrap();
                }
            }
            let n = conic_count(&k, q6);
            assert!([1, q + 1, 2 * q + 1, q * q + q + 1].contains(&n));
        }
    }
}
