use thiserror::Error;

use crate::verify::Verdict;

/// Errors raised by the model, verifier, factories, constructions and bound evaluator.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("point {point} is out of range for v = {v}")]
    PointOutOfRange { point: u32, v: u32 },

    #[error("point {point} appears twice in one block")]
    DuplicatePoint { point: u32 },

    #[error("block has {found} points, expected {expected}")]
    WrongBlockSize { expected: u32, found: u32 },

    #[error("v = {0} exceeds the supported capacity of {max} points", max = crate::block::MAX_POINTS)]
    Capacity(u32),

    #[error("design has no blocks")]
    EmptyDesign,

    #[error("invalid parameters: {0}")]
    InvalidParameter(String),

    #[error("design does not match spec: {0}")]
    SpecMismatch(String),

    #[error("ground sets overlap: {0}")]
    GroundSetOverlap(String),

    #[error("ground-set mismatch: {0}")]
    GroundSetMismatch(String),

    #[error("instance too large: C({n},{m}) = {count} subsets exceeds the ceiling of {ceiling} (use force to override)")]
    TooLarge {
        n: u32,
        m: u32,
        count: u128,
        ceiling: u128,
    },

    #[error("{what}: search budget of {budget} nodes exhausted")]
    BudgetExhausted { what: String, budget: u64 },

    #[error("{context}: verification failed: {verdict}")]
    VerificationFailed { context: String, verdict: Verdict },

    #[error("missing parameter `{0}`")]
    MissingParameter(String),

    #[error("unknown cover number {0}")]
    UnknownCoverNumber(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
