use std::path::PathBuf;

use thiserror::Error;

use cohort::CohortError;
use projection::ProjectionError;
use scenario_service::{ApiError, ServiceError};
use scheme_core::SchemeError;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad arguments or values outside the model's range.
    #[error("{0}")]
    Usage(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{}: {source}", path.display())]
    Input { path: PathBuf, source: CohortError },

    #[error(transparent)]
    Cohort(#[from] CohortError),

    #[error(transparent)]
    Projection(#[from] ProjectionError),

    #[error(transparent)]
    Scheme(#[from] SchemeError),

    #[error(transparent)]
    Service(#[from] ServiceError),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("writing output: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError::Usage(message.into())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

impl From<ApiError> for CliError {
    fn from(err: ApiError) -> Self {
        CliError::Usage(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
