use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{what} = {value} exceeds the configured cap {cap}")]
    CapExceeded { what: &'static str, value: u64, cap: u64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("cyclotomic order mismatch: {0} vs {1}")]
    OrderMismatch(u64, u64),
    #[error("mixed number systems in one expression: {0}")]
    SystemMismatch(String),
    #[error("table {table} failed validation: {detail}")]
    Transcription { table: String, detail: String },
    #[error("inner product is not an integer: {0}")]
    NonIntegral(String),
}

pub type Result<T> = std::result::Result<T, Error>;
