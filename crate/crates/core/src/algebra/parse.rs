//! Text grammar for polynomials.
//!
//! ```text
//! expr   := sign* term (('+' | '-') sign* term)*
//! term   := power ('*'? power)*
//! power  := atom ('^' exponent)?
//! atom   := integer ('/' integer)? | variable | '(' expr ')'
//! ```
//!
//! Variables are `x0..x5` (also `x_0`, `x_{0}`) unless a name list is given.
//! Whitespace is ignored everywhere; exponents may be braced (`t^{13}`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::Rationals;
use super::monomial::{Monomial, MAX_VARS};
use super::poly::MultiPoly;
use super::unipoly::UniPoly;
use super::AlgebraError;

pub fn parse_poly(text: &str, nvars: usize) -> Result<MultiPoly<Rationals>, AlgebraError> {
    let mut p = Parser::new(text, nvars, None);
    p.parse_all()
}

/// Parses with custom variable names; `names[i]` is variable `i`.
pub fn parse_poly_with_names(text: &str, names: &[&str]) -> Result<MultiPoly<Rationals>, AlgebraError> {
    let mut p = Parser::new(text, names.len(), Some(names));
    p.parse_all()
}

/// Univariate polynomial in `t` with rational coefficients.
pub fn parse_unipoly(text: &str) -> Result<UniPoly<Rationals>, AlgebraError> {
    let p = parse_poly_with_names(text, &["t"])?;
    let deg = p.degree().unwrap_or(0) as usize;
    let mut coeffs = vec![BigRational::zero(); deg + 1];
    for (m, c) in p.terms() {
        coeffs[m.exp(0) as usize] = c.clone();
    }
    Ok(UniPoly::new(Rationals, coeffs))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
    names: Option<&'a [&'a str]>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, nvars: usize, names: Option<&'a [&'a str]>) -> Self {
        Parser { src: text.as_bytes(), pos: 0, nvars, names }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, AlgebraError> {
        Err(AlgebraError::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn parse_all(&mut self) -> Result<MultiPoly<Rationals>, AlgebraError> {
        if self.peek().is_none() {
            return self.err("empty input");
        }
        let e = self.expr()?;
        if self.peek().is_some() {
            return self.err(format!("unexpected character '{}'", self.src[self.pos] as char));
        }
        Ok(e)
    }

    fn signs(&mut self) -> bool {
        let mut neg = false;
        while let Some(c) = self.peek() {
            match c {
                b'+' => self.pos += 1,
                b'-' => {
                    neg = !neg;
                    self.pos += 1
                }
                _ => break,
            }
        }
        neg
    }

    fn expr(&mut self) -> Result<MultiPoly<Rationals>, AlgebraError> {
        let mut acc = MultiPoly::zero(Rationals, self.nvars);
        let mut first = true;
        loop {
            let c = self.peek();
            if !first && !matches!(c, Some(b'+') | Some(b'-')) {
                break;
            }
            let neg = self.signs();
            let t = self.term()?;
            acc = &acc + &(if neg { t.neg() } else { t });
            first = false;
            if self.peek().is_none() {
                break;
            }
        }
        Ok(acc)
    }

    fn starts_atom(&mut self) -> bool {
        match self.peek() {
            Some(c) => c.is_ascii_digit() || c == b'(' || c.is_ascii_alphabetic(),
            None => false,
        }
    }

    fn term(&mut self) -> Result<MultiPoly<Rationals>, AlgebraError> {
        let mut acc = self.power()?;
        loop {
            if self.peek() == Some(b'*') {
                self.pos += 1;
                let rhs = self.power()?;
                acc = &acc * &rhs;
            } else if self.starts_atom() {
                let rhs = self.power()?;
                acc = &acc * &rhs;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<MultiPoly<Rationals>, AlgebraError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let braced = self.peek() == Some(b'{');
            if braced {
                self.pos += 1;
            }
            let e = self.integer()?;
            if braced {
                if self.peek() != Some(b'}') {
                    return self.err("expected '}'");
                }
                self.pos += 1;
            }
            let e: u32 = match e.try_into() {
                Ok(v) if v <= 64 => v,
                _ => return self.err("exponent too large"),
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, AlgebraError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<MultiPoly<Rationals>, AlgebraError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let mut val = BigRational::from_integer(num);
                // a '/' directly after a literal makes it a rational literal
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let den = self.integer()?;
                    if den.is_zero() {
                        return self.err("zero denominator");
                    }
                    val /= BigRational::from_integer(den);
                }
                Ok(MultiPoly::constant(Rationals, self.nvars, val))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let idx = self.variable()?;
                Ok(MultiPoly::from_terms(Rationals, self.nvars, [(Monomial::var(idx), BigRational::one())]))
            }
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }

    fn variable(&mut self) -> Result<usize, AlgebraError> {
        let start = self.pos;
        if let Some(names) = self.names {
            // longest matching name wins
            let rest = &self.src[self.pos..];
            let best = names
                .iter()
                .enumerate()
                .filter(|(_, n)| rest.starts_with(n.as_bytes()))
                .max_by_key(|(_, n)| n.len());
            if let Some((i, n)) = best {
                self.pos += n.len();
                return Ok(i);
            }
            return self.err("unknown variable");
        }
        if self.src[self.pos] != b'x' {
            return self.err("unknown variable");
        }
        self.pos += 1;
        let mut braced = false;
        if self.src.get(self.pos) == Some(&b'_') {
            self.pos += 1;
            if self.src.get(self.pos) == Some(&b'{') {
                braced = true;
                self.pos += 1;
            }
        }
        let ds = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if ds == self.pos {
            self.pos = start;
            return self.err("expected variable index");
        }
        let idx: usize = std::str::from_utf8(&self.src[ds..self.pos]).unwrap().parse().unwrap_or(usize::MAX);
        if braced {
            if self.src.get(self.pos) != Some(&b'}') {
                return self.err("expected '}'");
            }
            self.pos += 1;
        }
        if idx >= self.nvars || idx >= MAX_VARS {
            self.pos = start;
            return self.err(format!("variable index {idx} out of range for {} variables", self.nvars));
        }
        Ok(idx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_implicit_products_and_rationals() {
        let p = parse_poly("-3/2 x0 x1^2 + 4x_2x_{3} - (x4 - 1)^2", 6).unwrap();
        let q = parse_poly("-3/2*x0*x1^2 + 4*x2*x3 - x4^2 + 2*x4 - 1", 6).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn tolerates_repeated_signs() {
        assert_eq!(parse_poly("x0 + + x1", 2).unwrap(), parse_poly("x0+x1", 2).unwrap());
        assert_eq!(parse_poly("x0 - - x1", 2).unwrap(), parse_poly("x0+x1", 2).unwrap());
    }

    #[test]
    fn display_round_trips() {
        let p = parse_poly("x0x1x2 + x3^3 - 93x5^2x0 + 1/2 x4 x5^2 - 7", 6).unwrap();
        let again = parse_poly(&p.to_string(), 6).unwrap();
        assert_eq!(p, again);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_poly("x6", 6).is_err());
        assert!(parse_poly("x0 +", 6).is_err());
        assert!(parse_poly("1/0", 6).is_err());
        assert!(parse_poly("", 6).is_err());
        assert!(parse_poly("x0 ) ", 6).is_err());
    }

    #[test]
    fn univariate_in_t() {
        let u = parse_unipoly("t^{22} - 1/2t^19 + 1").unwrap();
        assert_eq!(u.degree(), Some(22));
        assert_eq!(u.coeff(19), BigRational::new((-1).into(), 2.into()));
    }
}
