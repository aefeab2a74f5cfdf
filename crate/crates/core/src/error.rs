use thiserror::Error;

use crate::linalg::Vector;
use crate::peirce::ComponentLabel;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("not a tripotent: (eee) - e has {} nonzero coordinates", residual.nonzero_count())]
    NotATripotent { residual: Vector },

    #[error("Peirce decomposition failed: {0}")]
    Decomposition(String),

    #[error("tripotent is not a left unit")]
    NotLeftUnit,

    #[error("component {0} is nonzero, but a left unit admits only U11± and U13±")]
    UnexpectedComponent(ComponentLabel),

    #[error("circle table does not match its grading: {0}")]
    GradingMismatch(String),

    #[error("invalid model parameters: {0}")]
    Parameter(String),

    #[error("invalid scalar literal {0:?}")]
    ScalarParse(String),

    #[error("malformed input at {path}: {message}")]
    Schema { path: String, message: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            path: path.into(),
            message: message.into(),
        }
    }
}
