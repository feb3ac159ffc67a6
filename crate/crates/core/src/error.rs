use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("parts {0:?} are not weakly decreasing")]
    NotDecreasing(Vec<i32>),
    #[error("expected a vector of length {expected}, got {got}")]
    BadLength { expected: usize, got: usize },
    #[error("not a permutation: {0:?}")]
    BadPermutation(Vec<usize>),
    #[error("the {0} case has no closed form")]
    NoClosedForm(&'static str),
    #[error("level {0} is too small: every valuation is undetermined")]
    LevelTooSmall(u32),
    #[error("unsupported configuration: {0}")]
    UnsupportedCase(String),
    #[error("{0} is not an odd prime")]
    BadPrime(u64),
    #[error("coefficient mismatch at {at}: oracle {oracle}, closed form {closed}")]
    MismatchBeyondTail { at: String, oracle: String, closed: String },
    #[error("element is outside the open orbit: invariant {0} vanishes at this level")]
    NotInOpenOrbit(usize),
    #[error("coset representatives do not tile the double coset: {0}")]
    CosetDecompositionFailure(String),
    #[error("transform support leaves the representable window: {0}")]
    WindowOverflow(String),
    #[error("zeta integral vanishes identically")]
    ZeroZeta,
    #[error("identity check failed: {0}")]
    MismatchFailure(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
