use thiserror::Error;

use crate::scalar::Scalar;

/// Every failure mode of the library. Mathematical failures carry the
/// offending index and, where meaningful, the exact offending value.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QlhError {
    #[error("q = {0} is excluded (q must not be 0, 1 or -1)")]
    RootOfUnity(Scalar),
    #[error("dilation by zero")]
    ZeroDilation,
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("insufficient order: need moment index {needed}, have order {available}")]
    InsufficientOrder { needed: usize, available: usize },
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("form is not invertible: first moment is zero")]
    NonInvertible,
    #[error("form is not regular: Hankel determinant {0} vanishes")]
    NotRegular(usize),
    #[error("insufficient recurrence coefficients: need {0}")]
    InsufficientCoefficients(String),
    #[error("{0} is not a root of phi")]
    NotARoot(Scalar),
    #[error("equation not satisfied: residual entry {index} = {value}")]
    NotSatisfied { index: usize, value: Scalar },
    #[error("non-admissible equation: leading coefficient vanishes at step {0}")]
    NonAdmissible(usize),
    #[error("missing seed moment of index {0}")]
    MissingSeed(usize),
    #[error("series operands have no overlapping valid range")]
    EmptyOverlap,
    #[error("transformed Phi vanishes identically, so K cannot be normalized")]
    DegenerateLeading,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, QlhError>;
