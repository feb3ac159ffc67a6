//! Exact arithmetic in Q[q^±1, x1^±1, ..., xn^±1] and its fraction field.

mod gcd;
mod laurent;
mod ratfunc;
pub mod render;
pub mod serial;
mod series;

pub use gcd::{exact_div, poly_gcd};
pub use laurent::{int, rat, Exponents, LaurentExpr, Rational, Var};
pub use ratfunc::{arith, ArithOp, Binding, RatFunc};
pub use series::{series_expand, TruncatedSeries};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands have different variable counts ({0} vs {1})")]
    VarMismatch(usize, usize),
    #[error("denominator vanishes identically under the substitution")]
    SpecializationPole,
    #[error("denominator has no unit term of weight zero")]
    NoUnitConstantTerm,
    #[error("division is not exact")]
    InexactDivision,
    #[error("invalid grading: {0}")]
    InvalidGrading(String),
    #[error("malformed expression: {0}")]
    Malformed(String),
}
