use thiserror::Error;

use crate::moves::Check;
use crate::validate::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),

    #[error("unknown id `{0}`")]
    UnknownId(String),

    #[error("invalid complex:\n{0}")]
    Invalid(ValidationReport),

    #[error("invalid compressionbody `{id}`: {}", reasons.join("; "))]
    InvalidCompressionbody { id: String, reasons: Vec<String> },

    #[error("move rejected by check `{check}`: {detail}")]
    Rejected { check: Check, detail: String },

    #[error("step cap reached after {0} steps")]
    CapReached(usize),
}

impl Error {
    pub(crate) fn rejected(check: Check, detail: impl Into<String>) -> Self {
        Error::Rejected { check, detail: detail.into() }
    }

    /// Exit code contract: 2 for input that could not be read or parsed,
    /// 1 for anything the engine rejected.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) | Error::Parse(_) => 2,
            _ => 1,
        }
    }
}
