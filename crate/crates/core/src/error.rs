//! Error type shared by the whole crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid field `{field}`: {msg}")]
    InvalidField { field: String, msg: String },

    #[error("diagram does not meet all coordinate axes: no pure power on axis {axis}")]
    NotConvenient { axis: usize },

    #[error("unsupported dimension n = {n}: at least two variables are required")]
    UnsupportedDimension { n: usize },

    #[error("support contains the origin: the defining germ must vanish at 0")]
    OriginInSupport,

    #[error("empty support: the defining germ must be non-zero")]
    EmptySupport,

    #[error("exponent {v:?} lies outside the series box")]
    OutsideBox { v: Vec<i64> },

    #[error("series boxes differ: {msg}")]
    BoxMismatch { msg: String },

    #[error("budget {budget} is below the ambient value {base}")]
    BudgetTooSmall { budget: i64, base: i64 },

    #[error("truncation {given} is below the safe bound {required}")]
    TruncationTooSmall { given: i64, required: i64 },

    #[error("margin {given} is below the required minimum {required}")]
    MarginTooSmall { given: i64, required: i64 },

    #[error("truncated ring would have about {estimate} monomials (limit {limit}); pass a force flag to proceed")]
    TruncationTooLarge { estimate: u64, limit: u64 },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
