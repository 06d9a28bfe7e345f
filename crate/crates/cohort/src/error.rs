use projection::ProjectionError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CohortError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: u64,
        column: usize,
        message: String,
    },

    #[error("row `{row}`, column `{column}`: {message}")]
    InvalidCell {
        row: String,
        column: String,
        message: String,
    },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("grid shapes differ: {0}")]
    Shape(String),

    #[error("invalid argument {field}: {message}")]
    Invalid {
        field: &'static str,
        message: String,
    },

    #[error(transparent)]
    Projection(#[from] ProjectionError),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl From<scheme_core::SchemeError> for CohortError {
    fn from(e: scheme_core::SchemeError) -> Self {
        CohortError::Projection(e.into())
    }
}

pub type Result<T> = std::result::Result<T, CohortError>;
