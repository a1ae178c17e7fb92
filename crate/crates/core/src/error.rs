use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("size cap exceeded: {what} needs dimension {needed}, cap is {cap}")]
    SizeCap { what: &'static str, needed: usize, cap: usize },

    #[error("not a valid density operator: {0}")]
    InvalidState(String),

    #[error("not a valid POVM: {0}")]
    InvalidPovm(String),

    #[error("not a valid probability distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid design: {0}")]
    InvalidDesign(String),

    #[error("cannot build measurement from group {group}: {reason}")]
    Grouping { group: usize, reason: String },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("did not converge: {0}")]
    NotConverged(String),

    #[error("bound ordering violated: {0}")]
    OrderingViolated(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn argument<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}
