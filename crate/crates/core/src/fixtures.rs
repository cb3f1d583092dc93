//! Worked example cubics bundled with the crate, one per family.

use crate::algebra::{parse_poly, parse_unipoly, MultiPoly, Rationals, UniPoly};
use crate::family::{CubicFourfold, FamilyTag};

pub struct Fixture {
    pub tag: FamilyTag,
    pub cubic: &'static str,
    /// Printed reduction mod 2, where available.
    pub reduction_f2: Option<&'static str>,
    /// Reduction mod 2 computed by this crate and pinned, where none is printed.
    pub derived_f2: Option<&'static str>,
    /// Printed characteristic polynomial of the transcendental lattice.
    pub chi: Option<&'static str>,
}

pub const FIXTURES: [Fixture; 7] = [
    Fixture {
        tag: FamilyTag::E6,
        cubic: include_str!("../fixtures/e6.txt"),
        reduction_f2: Some(include_str!("../fixtures/e6.f2.txt")),
        derived_f2: None,
        chi: Some(include_str!("../fixtures/e6.chi.txt")),
    },
    Fixture {
        tag: FamilyTag::D6,
        cubic: include_str!("../fixtures/d6.txt"),
        reduction_f2: Some(include_str!("../fixtures/d6.f2.txt")),
        derived_f2: None,
        chi: Some(include_str!("../fixtures/d6.chi.txt")),
    },
    Fixture {
        tag: FamilyTag::D5A1,
        cubic: include_str!("../fixtures/d5a1.txt"),
        reduction_f2: Some(include_str!("../fixtures/d5a1.f2.txt")),
        derived_f2: None,
        chi: Some(include_str!("../fixtures/d5a1.chi.txt")),
    },
    Fixture {
        tag: FamilyTag::D4A2,
        cubic: include_str!("../fixtures/d4a2.txt"),
        reduction_f2: None,
        derived_f2: Some(include_str!("../fixtures/d4a2.f2.txt")),
        chi: Some(include_str!("../fixtures/d4a2.chi.txt")),
    },
    Fixture {
        tag: FamilyTag::D4A1A1S0,
        cubic: include_str!("../fixtures/d4-2a1-s0.txt"),
        reduction_f2: None,
        derived_f2: Some(include_str!("../fixtures/d4-2a1-s0.f2.txt")),
        chi: Some(include_str!("../fixtures/d4-2a1-s0.chi.txt")),
    },
    Fixture {
        tag: FamilyTag::D4A1A1S1,
        cubic: include_str!("../fixtures/d4-2a1-s1.txt"),
        reduction_f2: None,
        derived_f2: None,
        chi: None,
    },
    Fixture {
        tag: FamilyTag::T333,
        cubic: include_str!("../fixtures/t333.txt"),
        reduction_f2: Some(include_str!("../fixtures/t333.f2.txt")),
        derived_f2: None,
        chi: Some(include_str!("../fixtures/t333.chi.txt")),
    },
];

/// An `F_2` cubic whose counts give the bundled e6 polynomial. It differs
/// from the bundled e6 reduction in the monomials `x0^3`, `x1^2 x4` and
/// `x2 x3 x4`; the bundled e6 cubic itself gives a different polynomial.
pub const E6_POLYNOMIAL_SOURCE_F2: &str = include_str!("../fixtures/e6.f2-alt.txt");

/// Family, first seed and coefficient bound at which the pipeline
/// certifies a member on its first attempt.
pub const CERTIFIED_SEEDS: [(FamilyTag, u64, i64); 1] = [(FamilyTag::E6, 80, 100)];

pub fn fixture(tag: FamilyTag) -> &'static Fixture {
    FIXTURES.iter().find(|f| f.tag == tag).expect("every family has a fixture")
}

impl Fixture {
    pub fn fourfold(&self) -> CubicFourfold {
        let mut c = CubicFourfold::parse(self.cubic, Some(self.tag)).expect("bundled fixture parses");
        c.note = format!("bundled {} example", self.tag);
        c
    }

    pub fn printed_reduction(&self) -> Option<MultiPoly<Rationals>> {
        self.reduction_f2.map(|t| parse_poly(t, 6).expect("bundled reduction parses"))
    }

    /// The printed reduction, or the pinned derived one.
    pub fn known_reduction(&self) -> Option<MultiPoly<Rationals>> {
        self.reduction_f2.or(self.derived_f2).map(|t| parse_poly(t, 6).expect("bundled reduction parses"))
    }

    pub fn printed_chi(&self) -> Option<UniPoly<Rationals>> {
        self.chi.map(|t| parse_unipoly(t).expect("bundled polynomial parses"))
    }
}
