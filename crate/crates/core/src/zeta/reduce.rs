//! Reduction of rational cubics modulo 2.

use serde::{Deserialize, Serialize};

use crate::algebra::{parse_poly, Field, MultiPoly, F2};
use crate::family::CubicFourfold;
use crate::singularity::is_smooth_over;

use super::ZetaError;

/// A cubic form over `F_2` in `x0..x5`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ReducedFile", into = "ReducedFile")]
pub struct ReducedCubic {
    form: MultiPoly<F2>,
    smooth: Option<bool>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct ReducedFile {
    form: String,
    #[serde(default)]
    good_reduction: Option<bool>,
}

impl From<ReducedCubic> for ReducedFile {
    fn from(r: ReducedCubic) -> Self {
        ReducedFile { form: r.form.to_string(), good_reduction: r.smooth }
    }
}

impl TryFrom<ReducedFile> for ReducedCubic {
    type Error = ZetaError;
    fn try_from(f: ReducedFile) -> Result<Self, ZetaError> {
        let mut r = ReducedCubic::from_text(&f.form)?;
        r.smooth = f.good_reduction;
        Ok(r)
    }
}

impl ReducedCubic {
    pub fn new(form: MultiPoly<F2>) -> Result<Self, ZetaError> {
        if form.nvars() != 6 || form.is_zero() || !form.is_homogeneous() || form.degree() != Some(3) {
            return Err(ZetaError::NotReducedCubic);
        }
        Ok(ReducedCubic { form, smooth: None })
    }

    /// Parses the text grammar; integer coefficients are read mod 2.
    pub fn from_text(text: &str) -> Result<Self, ZetaError> {
        let p = parse_poly(text, 6).map_err(|e| ZetaError::Parse(e.to_string()))?;
        let form = p.map_field(&F2, |c| F2.from_rational(c)).map_err(|_| ZetaError::EvenDenominator)?;
        Self::new(form)
    }

    pub fn form(&self) -> &MultiPoly<F2> {
        &self.form
    }

    /// Cached result of [`good_reduction`], if it has run.
    pub fn smooth(&self) -> Option<bool> {
        self.smooth
    }
}

/// Reduces every coefficient of `F` into `F_2`. Needs odd denominators.
pub fn reduce_mod_2(cubic: &CubicFourfold) -> Result<ReducedCubic, ZetaError> {
    let form = cubic.form.map_field(&F2, |c| F2.from_rational(c)).map_err(|_| ZetaError::EvenDenominator)?;
    ReducedCubic::new(form)
}

/// Smoothness of the reduction over the algebraic closure of `F_2`.
pub fn good_reduction(r: &mut ReducedCubic) -> bool {
    if let Some(s) = r.smooth {
        return s;
    }
    let s = is_smooth_over(&r.form);
    r.smooth = Some(s);
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::FIXTURES;

    #[test]
    fn bundled_reductions_are_reproduced() {
        for fx in FIXTURES.iter() {
            let Some(text) = fx.reduction_f2.or(fx.derived_f2) else { continue };
            let r = reduce_mod_2(&fx.fourfold()).unwrap();
            let printed = ReducedCubic::from_text(text).unwrap();
            assert_eq!(r.form(), printed.form(), "{}", fx.tag);
        }
    }

    #[test]
    fn odd_denominators_invert() {
        let c = CubicFourfold::parse("1/3*x0^3 + 2*x1^3 + x2^2*x5", None).unwrap();
        let r = reduce_mod_2(&c).unwrap();
        assert_eq!(r.form().to_string(), ReducedCubic::from_text("x0^3 + x2^2*x5").unwrap().form().to_string());
        let bad = CubicFourfold::parse("1/2*x0^3 + x1^3", None).unwrap();
        assert!(matches!(reduce_mod_2(&bad), Err(ZetaError::EvenDenominator)));
    }

    #[test]
    fn smoothness_mod_2() {
        let mut fermat = ReducedCubic::from_text("x0^3 + x1^3 + x2^3 + x3^3 + x4^3 + x5^3").unwrap();
        assert!(good_reduction(&mut fermat));
        assert_eq!(fermat.smooth(), Some(true));
        let mut degenerate = ReducedCubic::from_text("x0^2*x1 + x2^3").unwrap();
        assert!(!good_reduction(&mut degenerate));
        let mut e6 = reduce_mod_2(&FIXTURES[0].fourfold()).unwrap();
        assert!(good_reduction(&mut e6));
    }

    #[test]
    fn json_round_trip() {
        let mut r = reduce_mod_2(&FIXTURES[0].fourfold()).unwrap();
        good_reduction(&mut r);
        let s = serde_json::to_string(&r).unwrap();
        let back: ReducedCubic = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
