use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no exact quotient exists")]
    NotDivisible,
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("unexpected variable {0}")]
    UnexpectedVariable(String),
    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("monomial {monomial} exceeds the staircase bound of L_{n}")]
    NotInLn { n: usize, monomial: String },
    #[error("expansion did not terminate within {0} iterations")]
    IterationGuard(usize),
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("invalid operator: {0}")]
    InvalidOperator(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
