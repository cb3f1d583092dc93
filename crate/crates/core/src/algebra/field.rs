//! Coefficient fields.
//!
//! A [`Field`] value is a lightweight context object (the prime for `F_p`, the
//! log/exp tables for `F_{2^m}`); elements are plain data and every operation
//! goes through the context. The set of fields is closed: the rationals, prime
//! fields `F_p` with `p < 2^31`, `F_2`, and `F_{2^m}` for `m <= 12`.

use std::fmt::Debug;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::gf2m::FieldCtx;

/// Serializable description of a coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum FieldDescriptor {
    Rationals,
    Prime(u32),
    Binary(u32),
}

impl std::fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::Prime(p) => write!(f, "F_{p}"),
            FieldDescriptor::Binary(m) => write!(f, "F_2^{m}"),
        }
    }
}

pub trait Field: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// Image of a rational number; `None` when the denominator is not invertible.
    fn from_rational(&self, r: &BigRational) -> Option<Self::Elem>;
    fn characteristic(&self) -> u64;
    fn descriptor(&self) -> FieldDescriptor;
    fn format(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut k: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// Whether `format` output needs parentheses when used as a coefficient.
    fn needs_parens(&self, _a: &Self::Elem) -> bool {
        false
    }
}

/// The field of rational numbers, backed by `num-rational`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

pub type BigRat = BigRational;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_rational(&self, r: &BigRational) -> Option<BigRational> {
        Some(r.clone())
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Rationals
    }
    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn needs_parens(&self, _a: &BigRational) -> bool {
        false
    }
}

/// Prime field `F_p` with `p < 2^31`; elements are canonical residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    /// Panics unless `p` is an odd or even prime below `2^31`.
    pub fn new(p: u32) -> Self {
        assert!(p >= 2 && p < (1 << 31), "prime field modulus out of range");
        assert!(is_prime_u64(p as u64), "{p} is not prime");
        PrimeField { p }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn reduce_bigint(&self, n: &BigInt) -> u32 {
        let p = BigInt::from(self.p);
        n.mod_floor(&p).to_u32().expect("residue fits")
    }

    /// Symmetric lift into `(-p/2, p/2]`.
    pub fn lift(&self, a: u32) -> i64 {
        let a = a as i64;
        let p = self.p as i64;
        if a > p / 2 {
            a - p
        } else {
            a
        }
    }
}

impl Field for PrimeField {
    type Elem = u32;

    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn one(&self) -> u32 {
        1 % self.p
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        let p = self.p as u64;
        (if s >= p { s - p } else { s }) as u32
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        Some(self.pow(a, self.p as u64 - 2))
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
    fn from_rational(&self, r: &BigRational) -> Option<u32> {
        let num = self.reduce_bigint(r.numer());
        let den = self.reduce_bigint(r.denom());
        self.inv(&den).map(|d| self.mul(&num, &d))
    }
    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Prime(self.p)
    }
    fn format(&self, a: &u32) -> String {
        a.to_string()
    }
}

/// The field with two elements. Elements are `0` or `1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct F2;

impl Field for F2 {
    type Elem = u8;

    #[inline]
    fn zero(&self) -> u8 {
        0
    }
    #[inline]
    fn one(&self) -> u8 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u8) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u8, b: &u8) -> u8 {
        a ^ b
    }
    #[inline]
    fn neg(&self, a: &u8) -> u8 {
        *a
    }
    #[inline]
    fn mul(&self, a: &u8, b: &u8) -> u8 {
        a & b
    }
    fn inv(&self, a: &u8) -> Option<u8> {
        (*a == 1).then_some(1)
    }
    fn from_i64(&self, v: i64) -> u8 {
        (v.rem_euclid(2)) as u8
    }
    fn from_rational(&self, r: &BigRational) -> Option<u8> {
        if r.denom().is_even() {
            return None;
        }
        Some(if r.numer().is_odd() { 1 } else { 0 })
    }
    fn characteristic(&self) -> u64 {
        2
    }
    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Binary(1)
    }
    fn format(&self, a: &u8) -> String {
        a.to_string()
    }
}

/// `F_{2^m}` as a polynomial coefficient field, sharing the table context.
#[derive(Clone, Debug)]
pub struct BinaryField(pub Arc<FieldCtx>);

impl BinaryField {
    pub fn new(m: u32) -> Self {
        BinaryField(Arc::new(FieldCtx::new(m)))
    }
    pub fn ctx(&self) -> &FieldCtx {
        &self.0
    }
}

impl PartialEq for BinaryField {
    fn eq(&self, other: &Self) -> bool {
        self.0.m() == other.0.m()
    }
}

impl Field for BinaryField {
    type Elem = u16;

    fn zero(&self) -> u16 {
        0
    }
    fn one(&self) -> u16 {
        1
    }
    fn is_zero(&self, a: &u16) -> bool {
        *a == 0
    }
    fn add(&self, a: &u16, b: &u16) -> u16 {
        a ^ b
    }
    fn neg(&self, a: &u16) -> u16 {
        *a
    }
    fn mul(&self, a: &u16, b: &u16) -> u16 {
        self.0.mul(*a, *b)
    }
    fn inv(&self, a: &u16) -> Option<u16> {
        self.0.inv(*a).ok()
    }
    fn from_i64(&self, v: i64) -> u16 {
        (v.rem_euclid(2)) as u16
    }
    fn from_rational(&self, r: &BigRational) -> Option<u16> {
        F2.from_rational(r).map(u16::from)
    }
    fn characteristic(&self) -> u64 {
        2
    }
    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Binary(self.0.m())
    }
    fn format(&self, a: &u16) -> String {
        format!("g{a}")
    }
}

/// Deterministic Miller-Rabin, exact for all `n < 3.3 * 10^24` (so all u64).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A prime drawn uniformly-ish from `[2^30, 2^31)` using the supplied RNG.
pub fn random_prime<R: rand::Rng>(rng: &mut R) -> u32 {
    loop {
        let c: u32 = rng.gen_range((1u32 << 30)..(1u32 << 31)) | 1;
        if is_prime_u64(c as u64) {
            return c;
        }
    }
}

/// Numerator and denominator are both odd-checked; convenience for 2-adic tests.
pub fn denominator_is_power_of_two(r: &BigRational) -> bool {
    let mut d = r.denom().abs();
    while d.is_even() && !d.is_zero() {
        d /= 2;
    }
    d.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse_round_trip() {
        let f = PrimeField::new(101);
        for a in 1..101u32 {
            let ai = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &ai), 1);
        }
        assert_eq!(f.inv(&0), None);
    }

    #[test]
    fn rational_image_mod_two() {
        let third = BigRational::new(1.into(), 3.into());
        assert_eq!(F2.from_rational(&third), Some(1));
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(F2.from_rational(&half), None);
        assert_eq!(F2.from_i64(-7), 1);
    }

    #[test]
    fn miller_rabin_small_range() {
        let sieve: Vec<u64> = (0..2000).filter(|&n| n >= 2 && (2..n).all(|d| n % d != 0)).collect();
        let mr: Vec<u64> = (0..2000).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(sieve, mr);
        assert!(is_prime_u64(2147483647));
    }
}
