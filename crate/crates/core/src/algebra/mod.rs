//! Exact arithmetic: fields, polynomials, and linear algebra.

pub mod bitmat;
pub mod cyclotomic;
pub mod field;
pub mod linalg;
pub mod linear_change;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod unipoly;

use thiserror::Error;

pub use field::{BigRat, BinaryField, Field, FieldDescriptor, PrimeField, Rationals, F2};
pub use linear_change::LinearChange;
pub use monomial::{Monomial, MonomialOrder};
pub use parse::{parse_poly, parse_poly_with_names, parse_unipoly};
pub use poly::MultiPoly;
pub use unipoly::UniPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("coefficient fields differ: {left} vs {right}")]
    FieldMismatch { left: FieldDescriptor, right: FieldDescriptor },
    #[error("variable counts differ: {left} vs {right}")]
    VarCountMismatch { left: usize, right: usize },
    #[error("point has zero coordinate in chart x{chart}")]
    PointNotInChart { chart: usize },
    #[error("coefficient has no image in {target}")]
    NotInvertible { target: FieldDescriptor },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
