use scheme_core::SchemeError;
use thiserror::Error;

use crate::scenario::DcOption;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProjectionError {
    #[error(transparent)]
    Scheme(#[from] SchemeError),

    #[error("invalid scenario: {field}: {message}")]
    InvalidScenario {
        field: &'static str,
        message: String,
    },

    #[error("dc option {0:?} is not supported, only annuity")]
    UnsupportedDcOption(DcOption),

    #[error("negative income {0}")]
    NegativeIncome(f64),

    #[error("results come from different {0}")]
    Mismatch(&'static str),
}

pub type Result<T> = std::result::Result<T, ProjectionError>;
