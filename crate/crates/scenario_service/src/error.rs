use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use projection::ProjectionError;
use scheme_core::SchemeError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldError {
    pub field: String,
    pub message: String,
}

impl FieldError {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            field: field.into(),
            message: message.into(),
        }
    }
}

/// Body of every non-200 response.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub errors: Vec<FieldError>,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ApiError {
    /// Malformed or out-of-range input.
    #[error("invalid request: {}", summary(.0))]
    Invalid(Vec<FieldError>),

    /// Well-formed input the engine does not model.
    #[error("unsupported request: {}", summary(.0))]
    Unsupported(Vec<FieldError>),
}

fn summary(errors: &[FieldError]) -> String {
    errors
        .iter()
        .map(|e| format!("{}: {}", e.field, e.message))
        .collect::<Vec<_>>()
        .join("; ")
}

impl ApiError {
    pub fn invalid(field: impl Into<String>, message: impl Into<String>) -> Self {
        ApiError::Invalid(vec![FieldError::new(field, message)])
    }

    pub fn status(&self) -> StatusCode {
        match self {
            ApiError::Invalid(_) => StatusCode::BAD_REQUEST,
            ApiError::Unsupported(_) => StatusCode::UNPROCESSABLE_ENTITY,
        }
    }

    pub fn errors(&self) -> &[FieldError] {
        match self {
            ApiError::Invalid(e) | ApiError::Unsupported(e) => e,
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = self.status();
        let errors = match self {
            ApiError::Invalid(e) | ApiError::Unsupported(e) => e,
        };
        (status, Json(ErrorBody { errors })).into_response()
    }
}

/// Field error for a scheme validation failure, with the field name under `prefix`.
pub(crate) fn scheme_field_error(prefix: &str, err: &SchemeError) -> FieldError {
    let field = match err {
        SchemeError::NonFinite { field, .. } | SchemeError::OutOfRange { field, .. } => field,
        _ => "",
    };
    let path = match (prefix.is_empty(), field.is_empty()) {
        (true, _) => field.to_string(),
        (false, true) => prefix.to_string(),
        (false, false) => format!("{prefix}.{field}"),
    };
    FieldError::new(path, err.to_string())
}

pub(crate) fn projection_field_error(err: &ProjectionError) -> FieldError {
    match err {
        ProjectionError::Scheme(e) => scheme_field_error("", e),
        ProjectionError::InvalidScenario { field, message } => FieldError::new(*field, message),
        ProjectionError::UnsupportedDcOption(_) => FieldError::new("dc_option", err.to_string()),
        _ => FieldError::new("", err.to_string()),
    }
}
