use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SchemeError {
    #[error("{field} must be finite, got {value}")]
    NonFinite { field: &'static str, value: f64 },

    #[error("{field} out of range: {value} ({reason})")]
    OutOfRange {
        field: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("unknown devaluation source `{0}`, expected uuk or uss")]
    UnknownDevaluation(String),

    #[error("preset file: {0}")]
    PresetFile(String),
}

pub type Result<T> = std::result::Result<T, SchemeError>;

pub(crate) fn finite(field: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(SchemeError::NonFinite { field, value })
    }
}
