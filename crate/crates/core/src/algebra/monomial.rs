//! Exponent vectors and monomial orders.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest variable count handled anywhere in the crate (`x0..x5`).
pub const MAX_VARS: usize = 6;

/// Exponent vector; unused trailing slots stay zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub [u16; MAX_VARS]);

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum MonomialOrder {
    /// Graded reverse lexicographic with `x0 > x1 > ...`.
    #[default]
    Grevlex,
    Lex,
}

impl MonomialOrder {
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Grevlex => a.grevlex_cmp(b),
            MonomialOrder::Lex => a.0.cmp(&b.0),
        }
    }
}

impl Monomial {
    pub const ONE: Monomial = Monomial([0; MAX_VARS]);

    pub fn from_exps(exps: &[u16]) -> Self {
        assert!(exps.len() <= MAX_VARS);
        let mut m = [0u16; MAX_VARS];
        m[..exps.len()].copy_from_slice(exps);
        Monomial(m)
    }

    pub fn var(i: usize) -> Self {
        let mut m = [0u16; MAX_VARS];
        m[i] = 1;
        Monomial(m)
    }

    /// Product of the listed variables, with repetition (`[0, 1, 1]` is `x0*x1^2`).
    pub fn from_vars(vars: &[usize]) -> Self {
        let mut m = [0u16; MAX_VARS];
        for &v in vars {
            m[v] += 1;
        }
        Monomial(m)
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.0[i]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        Monomial(m)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut m = other.0;
        for (a, b) in m.iter_mut().zip(self.0.iter()) {
            *a -= b;
        }
        Some(Monomial(m))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a = (*a).max(*b);
        }
        Monomial(m)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Variables beyond `nvars` must be zero.
    pub fn fits(&self, nvars: usize) -> bool {
        self.0[nvars..].iter().all(|&e| e == 0)
    }

    pub fn grevlex_cmp(&self, other: &Monomial) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (0..MAX_VARS).rev() {
            match self.0[i].cmp(&other.0[i]) {
                Ordering::Equal => continue,
                // smaller exponent in the last differing variable wins
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }

    /// Weighted degree with per-variable weights.
    pub fn weighted_degree(&self, weights: &[f64]) -> f64 {
        self.0.iter().zip(weights).map(|(&e, w)| e as f64 * w).sum()
    }

    /// Drop variable `i`, shifting later variables down.
    pub fn remove_var(&self, i: usize) -> Monomial {
        let mut m = [0u16; MAX_VARS];
        let mut k = 0;
        for (j, &e) in self.0.iter().enumerate() {
            if j != i {
                m[k] = e;
                k += 1;
            }
        }
        Monomial(m)
    }

    /// Text form using the given variable names, e.g. `x0*x3^2`; `1` for the unit.
    pub fn format_with(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&default_var_names(MAX_VARS)))
    }
}

impl Serialize for Monomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

impl std::str::FromStr for Monomial {
    type Err = String;

    /// Parses `1` or products like `x0*x3^2`.
    fn from_str(text: &str) -> Result<Self, String> {
        let text = text.trim();
        let mut m = [0u16; MAX_VARS];
        if text == "1" {
            return Ok(Monomial(m));
        }
        for factor in text.split('*') {
            let (var, exp) = match factor.split_once('^') {
                Some((v, e)) => (v, e.parse::<u16>().map_err(|e| format!("bad exponent in '{factor}': {e}"))?),
                None => (factor, 1),
            };
            let idx: usize = var
                .strip_prefix('x')
                .and_then(|i| i.parse().ok())
                .filter(|&i| i < MAX_VARS)
                .ok_or_else(|| format!("bad variable '{var}'"))?;
            m[idx] += exp;
        }
        Ok(Monomial(m))
    }
}

pub fn default_var_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

/// All monomials of total degree `d` in `n` variables, sorted grevlex-descending.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = [0u16; MAX_VARS];
    fn rec(n: usize, i: usize, left: u32, cur: &mut [u16; MAX_VARS], out: &mut Vec<Monomial>) {
        if i + 1 == n {
            cur[i] = left as u16;
            out.push(Monomial(*cur));
            cur[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as u16;
            rec(n, i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if n == 0 {
        if d == 0 {
            out.push(Monomial::ONE);
        }
        return out;
    }
    rec(n, 0, d, &mut cur, &mut out);
    out.sort_by(|a, b| b.grevlex_cmp(a));
    out
}

/// All monomials of degree `< n_max` in `n` variables, ordered by degree
/// ascending and grevlex-descending within each degree.
pub fn monomials_below_degree(n: usize, n_max: u32) -> Vec<Monomial> {
    (0..n_max).flat_map(|d| monomials_of_degree(n, d)).collect()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r = 1u64;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}
