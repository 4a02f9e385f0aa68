use thiserror::Error;

use crate::complex::Face;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed face: {0}")]
    MalformedFace(String),

    #[error("{0} is not a face of the complex")]
    NotAFace(Face),

    #[error("gamma vector undefined: h-vector {0:?} is not symmetric")]
    GammaUndefined(Vec<String>),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("precondition of `{check}` failed: {reason}")]
    Precondition { check: String, reason: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn precondition(check: &str, reason: impl Into<String>) -> Self {
        Error::Precondition {
            check: check.to_owned(),
            reason: reason.into(),
        }
    }

    pub(crate) fn parameter(message: impl Into<String>) -> Self {
        Error::Parameter(message.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
