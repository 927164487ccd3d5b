//! Error type shared across the library.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("declared symmetry `{declared}` does not hold at entry ({row},{col})")]
    SymmetryMismatch {
        declared: String,
        row: usize,
        col: usize,
    },

    #[error("constructed matrix failed its validator: {0}")]
    ValidatorFailed(String),

    #[error("unknown name: {0}")]
    UnknownName(String),

    #[error("search exhausted without a solution: {0}")]
    SearchExhausted(String),

    #[error("scheme and matrix index sets differ: {0}")]
    SchemeMismatch(String),

    #[error("a Gram entry matches no declared class list: {0}")]
    ValueNotCovered(String),

    #[error("predictor hypotheses not satisfied: {0}")]
    HypothesesNotSatisfied(String),

    #[error("missing eta vector for the third minor value: {0}")]
    EtaMissing(String),

    #[error("unknown closed-form source tag: {0}")]
    UnknownSource(String),

    #[error("internal identity violated: {0}")]
    IdentityViolated(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParams(msg.into())
    }

    pub fn validator(msg: impl Into<String>) -> Self {
        Error::ValidatorFailed(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
