//! Table-driven arithmetic in `F_{2^m}` for `1 <= m <= 12`.
//!
//! Elements are bit-encoded polynomials in the generator `g` (a root of the
//! fixed primitive modulus for that degree). Multiplication goes through
//! discrete log / antilog tables; the antilog table is doubled so a product
//! needs no modular reduction of the exponent sum.

use std::fmt;

use thiserror::Error;

pub const MAX_M: u32 = 12;

/// One primitive polynomial per degree, bit-encoded with the leading term.
pub const PRIMITIVE_MODULI: [u32; 12] = [
    0x3,    // t + 1
    0x7,    // t^2 + t + 1
    0xB,    // t^3 + t + 1
    0x13,   // t^4 + t + 1
    0x25,   // t^5 + t^2 + 1
    0x43,   // t^6 + t + 1
    0x83,   // t^7 + t + 1
    0x11D,  // t^8 + t^4 + t^3 + t^2 + 1
    0x211,  // t^9 + t^4 + 1
    0x409,  // t^10 + t^3 + 1
    0x805,  // t^11 + t^2 + 1
    0x1053, // t^12 + t^6 + t^4 + t + 1
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("inversion of zero in F_2^{0}")]
    ZeroInverse(u32),
    #[error("extension degree {0} outside 1..=12")]
    DegreeOutOfRange(u32),
    #[error("modulus {modulus:#x} is not primitive of degree {m}")]
    NotPrimitive { m: u32, modulus: u32 },
}

/// Roots of `z^2 + b z + c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadraticRoots {
    NoRoot,
    TwoRoots(u16, u16),
    DoubleRoot(u16),
}

#[derive(Clone)]
pub struct FieldCtx {
    m: u32,
    modulus: u32,
    size: usize,
    log: Vec<u16>,
    exp: Vec<u16>,
    trace_mask: u16,
    /// `half_trace_solve[c]` is some `w` with `w^2 + w = c` when `Tr(c) = 0`.
    as_root: Vec<u16>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx").field("m", &self.m).field("modulus", &self.modulus).finish()
    }
}

/// Schoolbook product of two bit polynomials reduced by `modulus`.
pub fn poly_mulmod(mut a: u32, mut b: u32, modulus: u32, m: u32) -> u32 {
    let mut r = 0u32;
    while b != 0 {
        if b & 1 == 1 {
            r ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & (1 << m) != 0 {
            a ^= modulus;
        }
    }
    r
}

impl FieldCtx {
    /// Builds the tables for the fixed modulus of degree `m`; panics outside `1..=12`.
    pub fn new(m: u32) -> Self {
        Self::try_new(m).expect("valid extension degree")
    }

    pub fn try_new(m: u32) -> Result<Self, GfError> {
        if !(1..=MAX_M).contains(&m) {
            return Err(GfError::DegreeOutOfRange(m));
        }
        Self::with_modulus(m, PRIMITIVE_MODULI[m as usize - 1])
    }

    /// Builds tables from an arbitrary modulus, checking that `t` generates
    /// the multiplicative group (which also proves irreducibility).
    pub fn with_modulus(m: u32, modulus: u32) -> Result<Self, GfError> {
        let size = 1usize << m;
        let order = size - 1;
        let mut log = vec![0u16; size];
        let mut exp = vec![0u16; 2 * order.max(1)];
        let gen = if m == 1 { 1 } else { 2 };
        let mut x = 1u32;
        let mut seen = vec![false; size];
        for k in 0..order {
            if seen[x as usize] || x == 0 {
                return Err(GfError::NotPrimitive { m, modulus });
            }
            seen[x as usize] = true;
            exp[k] = x as u16;
            exp[k + order] = x as u16;
            log[x as usize] = k as u16;
            x = poly_mulmod(x, gen, modulus, m);
        }
        if x != 1 {
            return Err(GfError::NotPrimitive { m, modulus });
        }
        let mut ctx = FieldCtx { m, modulus, size, log, exp, trace_mask: 0, as_root: vec![0; size] };
        // trace is linear: Tr(a) = parity(a & mask) with mask bit i = Tr(g^i basis vector)
        let mut mask = 0u16;
        for i in 0..m {
            if ctx.trace_slow(1 << i) == 1 {
                mask |= 1 << i;
            }
        }
        ctx.trace_mask = mask;
        for w in 0..size as u16 {
            let c = ctx.mul(w, w) ^ w;
            ctx.as_root[c as usize] = w;
        }
        Ok(ctx)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Number of elements `q = 2^m`.
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[self.log[a as usize] as usize + self.log[b as usize] as usize]
    }

    pub fn inv(&self, a: u16) -> Result<u16, GfError> {
        if a == 0 {
            return Err(GfError::ZeroInverse(self.m));
        }
        let order = self.size - 1;
        Ok(self.exp[(order - self.log[a as usize] as usize) % order])
    }

    pub fn div(&self, a: u16, b: u16) -> Result<u16, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: u16, k: u64) -> u16 {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = (self.size - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (k % order)) % order) as usize]
    }

    #[inline]
    pub fn square(&self, a: u16) -> u16 {
        self.mul(a, a)
    }

    /// `a^(2^(m-1))`, the inverse of Frobenius.
    pub fn sqrt(&self, a: u16) -> u16 {
        let mut r = a;
        for _ in 1..self.m {
            r = self.square(r);
        }
        r
    }

    fn trace_slow(&self, a: u16) -> u16 {
        let mut t = a;
        let mut x = a;
        for _ in 1..self.m {
            x = self.square(x);
            t ^= x;
        }
        t
    }

    #[inline]
    pub fn trace(&self, a: u16) -> u8 {
        ((a & self.trace_mask).count_ones() & 1) as u8
    }

    /// Discrete log of a nonzero element with respect to the generator.
    #[inline]
    pub fn log(&self, a: u16) -> u16 {
        debug_assert!(a != 0);
        self.log[a as usize]
    }

    /// `g^k` for `0 <= k < 2(q-1)`.
    #[inline]
    pub fn exp(&self, k: usize) -> u16 {
        self.exp[k]
    }

    /// Raw tables for hot loops.
    pub fn tables(&self) -> (&[u16], &[u16]) {
        (&self.log, &self.exp)
    }

    /// Roots of `z^2 + b z + c = 0`.
    pub fn solve_artin_schreier(&self, b: u16, c: u16) -> QuadraticRoots {
        if b == 0 {
            return QuadraticRoots::DoubleRoot(self.sqrt(c));
        }
        // z = b w turns the equation into w^2 + w = c / b^2
        let b2 = self.square(b);
        let rhs = self.div(c, b2).expect("b is nonzero");
        if self.trace(rhs) == 1 {
            return QuadraticRoots::NoRoot;
        }
        let w = self.as_root[rhs as usize];
        let z0 = self.mul(b, w);
        QuadraticRoots::TwoRoots(z0, z0 ^ b)
    }

    /// The subfield image of `F_{2^k}` elements is not needed; this embeds `F_2`.
    pub fn from_bit(&self, b: u8) -> u16 {
        (b & 1) as u16
    }

    pub fn elements(&self) -> impl Iterator<Item = u16> {
        0..self.size as u16
    }
}

/// Element bundled with its context, for code outside hot loops.
#[derive(Clone, Copy, Debug)]
pub struct GfElem<'a> {
    pub bits: u16,
    pub ctx: &'a FieldCtx,
}

impl PartialEq for GfElem<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits && self.ctx.m == other.ctx.m
    }
}

impl<'a> GfElem<'a> {
    pub fn new(ctx: &'a FieldCtx, bits: u16) -> Self {
        assert!((bits as usize) < ctx.size, "element out of range");
        GfElem { bits, ctx }
    }

    pub fn inv(self) -> Result<Self, GfError> {
        Ok(GfElem { bits: self.ctx.inv(self.bits)?, ctx: self.ctx })
    }

    pub fn pow(self, k: u64) -> Self {
        GfElem { bits: self.ctx.pow(self.bits, k), ctx: self.ctx }
    }

    pub fn trace(self) -> u8 {
        self.ctx.trace(self.bits)
    }
}

impl std::ops::Add for GfElem<'_> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        GfElem { bits: self.bits ^ rhs.bits, ctx: self.ctx }
    }
}

impl std::ops::Mul for GfElem<'_> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        GfElem { bits: self.ctx.mul(self.bits, rhs.bits), ctx: self.ctx }
    }
}

impl fmt::Display for GfElem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.bits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_moduli_pass_self_test() {
        for m in 1..=MAX_M {
            let ctx = FieldCtx::new(m);
            for a in 1..ctx.size() as u16 {
                assert_eq!(ctx.exp(ctx.log(a) as usize), a);
            }
        }
        assert!(matches!(FieldCtx::try_new(13), Err(GfError::DegreeOutOfRange(13))));
        // t^4 + t^3 + t^2 + t + 1 is irreducible but not primitive
        assert!(FieldCtx::with_modulus(4, 0x1F).is_err());
    }

    #[test]
    fn f8_products_match_polynomial_reduction() {
        let f = FieldCtx::new(3);
        let x = 0b010;
        assert_eq!(f.mul(x, x), 0b100);
        assert_eq!(f.mul(0b100, x), 0b011);
        for a in 0..8u16 {
            for b in 0..8u16 {
                assert_eq!(f.mul(a, b) as u32, poly_mulmod(a as u32, b as u32, 0xB, 3));
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for m in 1..=8 {
            let f = FieldCtx::new(m);
            let q = f.size() as u64;
            for a in 1..q as u16 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                assert_eq!(f.pow(a, q - 1), 1);
            }
            assert!(f.inv(0).is_err());
        }
        for m in 1..=4 {
            let f = FieldCtx::new(m);
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.mul(a, b ^ c), f.mul(a, b) ^ f.mul(a, c));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn trace_is_balanced_and_linear() {
        for m in 1..=10 {
            let f = FieldCtx::new(m);
            let ones = f.elements().filter(|&a| f.trace(a) == 1).count();
            assert_eq!(ones, f.size() / 2);
            for a in f.elements().step_by(7) {
                assert_eq!(f.trace(a) as u16, f.trace_slow(a));
                for b in f.elements().step_by(11) {
                    assert_eq!(f.trace(a ^ b), f.trace(a) ^ f.trace(b));
                }
            }
        }
        let f4 = FieldCtx::new(2);
        // omega = g is a root of t^2 + t + 1
        assert_eq!(f4.trace(2), 1);
        assert_eq!(f4.trace(0), 0);
    }

    #[test]
    fn frobenius_fixes_only_prime_field() {
        for m in 1..=10 {
            let f = FieldCtx::new(m);
            let fixed: Vec<u16> = f.elements().filter(|&a| f.square(a) == a).collect();
            assert_eq!(fixed, vec![0, 1]);
            for a in f.elements() {
                assert_eq!(f.square(f.sqrt(a)), a);
            }
        }
    }

    #[test]
    fn artin_schreier_matches_brute_force_f16() {
        let f = FieldCtx::new(4);
        for b in f.elements() {
            let mut two_root_cs = 0;
            for c in f.elements() {
                let roots: Vec<u16> = f.elements().filter(|&z| f.square(z) ^ f.mul(b, z) ^ c == 0).collect();
                match f.solve_artin_schreier(b, c) {
                    QuadraticRoots::NoRoot => assert!(roots.is_empty()),
                    QuadraticRoots::DoubleRoot(z) => assert_eq!(roots, vec![z]),
                    QuadraticRoots::TwoRoots(z0, z1) => {
                        two_root_cs += 1;
                        let mut r = vec![z0, z1];
                        r.sort();
                        assert_eq!(roots, r);
                    }
                }
            }
            if b != 0 {
                assert_eq!(two_root_cs, 8);
            }
        }
        assert_eq!(FieldCtx::new(1).solve_artin_schreier(1, 1), QuadraticRoots::NoRoot);
    }

    #[test]
    fn sampled_axioms_large_fields() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for m in 5..=12 {
            let f = FieldCtx::new(m);
            for _ in 0..2000 {
                let a = rng.gen_range(0..f.size()) as u16;
                let b = rng.gen_range(0..f.size()) as u16;
                let c = rng.gen_range(0..f.size()) as u16;
                assert_eq!(f.mul(a, b ^ c), f.mul(a, b) ^ f.mul(a, c));
                assert_eq!(f.mul(a, b) as u32, poly_mulmod(a as u32, b as u32, f.modulus(), m));
            }
        }
    }
}
