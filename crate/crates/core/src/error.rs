use thiserror::Error;

/// Errors raised by the continuant and recurrence machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid system: {0}")]
    InvalidSystem(String),

    #[error("index {index} is out of range: {reason}")]
    IndexOutOfRange { index: i64, reason: &'static str },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("division by zero: {0}")]
    DivisionByZero(&'static str),

    #[error("degenerate discriminant: {0}")]
    DegenerateDiscriminant(&'static str),

    #[error("radicand {0} is not a perfect square")]
    NotAPerfectSquare(String),

    #[error("{0} is a perfect square")]
    PerfectSquare(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("precision exhausted after {terms} terms (error {abs_error})")]
    PrecisionExhausted { terms: usize, abs_error: String },

    #[error("no admissible root: {0}")]
    NoAdmissibleRoot(String),

    #[error("x is a root of the characteristic polynomial")]
    PoleAtRoot,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("mismatched radicands {0} and {1}")]
    RadicandMismatch(String, String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
