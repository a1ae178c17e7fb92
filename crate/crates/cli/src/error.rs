use thiserror::Error;

/// Process exit status contract.
pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_CHECK_FAILED: u8 = 2;
pub const EXIT_NOT_CONVERGED: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    CheckFailed(String),
    #[error("{0}")]
    NotConverged(String),
    #[error(transparent)]
    Core(#[from] qdesign::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::CheckFailed(_) => EXIT_CHECK_FAILED,
            CliError::NotConverged(_) => EXIT_NOT_CONVERGED,
            CliError::Core(qdesign::Error::NotConverged(_)) => EXIT_NOT_CONVERGED,
            CliError::Core(qdesign::Error::OrderingViolated(_)) => EXIT_CHECK_FAILED,
            _ => EXIT_USAGE,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}
