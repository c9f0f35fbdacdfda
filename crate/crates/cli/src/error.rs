use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at column {}: {message}", position + 1)]
    Parse { position: usize, message: String },
    #[error("invalid spec: {0}")]
    Validation(#[from] qbessel::Error),
    #[error("config: {0}")]
    Config(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type CliResult<T> = std::result::Result<T, CliError>;
