use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("precision must be at least {min} decimal digits, got {got}")]
    Precision { min: u32, got: u32 },

    #[error("matrix is not positive definite: {0}")]
    NotPositiveDefinite(String),

    #[error("term exponent {exponent} is negative at n = {point:?}")]
    NegativeExponent { exponent: String, point: Vec<i64> },

    #[error("term exponent {exponent} is not an integer at n = {point:?}")]
    NonIntegralExponent { exponent: String, point: Vec<i64> },

    #[error("invalid datum: {0}")]
    InvalidDatum(String),

    #[error("invalid product spec: {0}")]
    InvalidProduct(String),

    #[error("series constant term is {0}, expected 1")]
    ConstantTerm(String),

    #[error("sequence of length {len} too short for max period {max_period}")]
    SequenceTooShort { len: usize, max_period: usize },

    #[error("unknown partition condition `{0}`")]
    UnknownCondition(String),

    #[error("no solution of the Q-system in the open unit cube ({0})")]
    NoSolution(String),

    #[error("Q-system has {count} distinct roots in the open unit cube: {roots}")]
    NotUnique { count: usize, roots: String },

    #[error("sum of leading coefficients vanishes: {0}")]
    Degenerate(String),

    #[error("invalid search spec: {0}")]
    InvalidSearch(String),

    #[error("unknown corpus entry `{0}`")]
    UnknownEntry(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
