use thiserror::Error;

/// Errors shared by all modules of the crate.
///
/// `Inconsistency` is reserved for situations that the underlying theory
/// rules out; reaching it means a bug, not bad input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("stage mismatch: {0} vs {1}")]
    StageMismatch(usize, usize),

    #[error("index {index} out of range for stage {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("degree {k} out of range for stage {n}")]
    DegreeOutOfRange { k: usize, n: usize },

    #[error("stage must be at least 1")]
    ZeroStage,

    #[error("matrix entry ({i},{j}) must be zero: not strictly upper triangular")]
    NotUpperTriangular { i: usize, j: usize },

    #[error("degree-two element is not primitive")]
    NotPrimitive,

    #[error("isomorphism descriptor does not verify against the given matrices")]
    UnverifiedIso,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal consistency violation: {0}")]
    Inconsistency(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("scan budget exceeded: estimated {estimate} candidate checks > budget {budget}")]
    BudgetExceeded { estimate: u128, budget: u128 },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
