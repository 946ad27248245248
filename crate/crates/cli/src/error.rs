use thiserror::Error;

use qsp_core::barcheck::BarError;
use qsp_core::cartan::{CartanError, PairError};
use qsp_core::qsp::QspError;
use qsp_core::UqgError;

/// Failure of a command. Verdicts (an invalid pair, a missing bar involution,
/// a failed suite) are not errors; they are reported with exit code 1.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed input {path}: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },
    #[error("invalid input: {0}")]
    Input(String),
    #[error("engine inconsistency: {0}")]
    Inconsistent(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Inconsistent(_) => 3,
            _ => 2,
        }
    }
}

impl From<CartanError> for CliError {
    fn from(e: CartanError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<PairError> for CliError {
    fn from(e: PairError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<UqgError> for CliError {
    fn from(e: UqgError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<QspError> for CliError {
    fn from(e: QspError) -> Self {
        match e {
            QspError::Inconsistent(m) => CliError::Inconsistent(m),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<BarError> for CliError {
    fn from(e: BarError) -> Self {
        match e {
            BarError::SignInconsistent(_) => CliError::Inconsistent(e.to_string()),
            BarError::Qsp(q) => q.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}
