use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("rank must be at least 1")]
    ZeroRank,

    #[error("division by zero")]
    DivisionByZero,

    #[error("operation undefined on the infinite value")]
    InfiniteOperand,

    #[error("index {index} is below the start {start} of the affine exponent")]
    BelowStart { index: u64, start: u64 },

    #[error("sequence is not pseudo-convergent at index {index}: {reason}")]
    NotPseudoConvergent { index: usize, reason: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
