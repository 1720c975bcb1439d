use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is singular over GF(2)")]
    Singular,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("size cap exceeded: {0}")]
    SizeCap(String),

    #[error("enumeration budget of {budget} elements exceeded")]
    BudgetExceeded { budget: usize },

    #[error("element is not in the inertia subgroup")]
    NotInInertia,

    #[error("the trivial character has no conjugate partner")]
    TrivialCharacter,

    #[error("class functions live on different groups ({0} vs {1})")]
    GroupMismatch(String, String),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("map is not compatible with conjugacy classes: {0}")]
    ClassIncompatible(String),

    #[error("input character is not irreducible: <chi,chi> = {0}")]
    NotIrreducible(String),

    #[error("no suitable prime found below {0}")]
    PrimeSearchExhausted(u64),

    #[error("eigenspace splitting failed: {0}")]
    SplittingFailed(String),

    #[error("table invariant violated: {0}")]
    InvariantViolated(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cache error: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
