use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] knutson::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

pub mod exit {
    pub const OK: i32 = 0;
    pub const VERIFY_FAILED: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const CAP: i32 = 3;
    pub const TABLE_DISCREPANCY: i32 = 4;
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Core(knutson::Error::InvalidInput(_)) => exit::USAGE,
            CliError::Core(knutson::Error::CapExceeded { .. }) => exit::CAP,
            _ => exit::VERIFY_FAILED,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
