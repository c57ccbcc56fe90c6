use std::path::PathBuf;

use thiserror::Error;

use crate::model::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{kind} not found: {name}")]
    NotFound { kind: &'static str, name: String },

    /// Too many records in an input file could not be parsed with the
    /// requested adapter.
    #[error("format mismatch ({format}): {skipped} of {total} records malformed; first at line {line}: {reason}")]
    FormatMismatch {
        format: String,
        skipped: usize,
        total: usize,
        line: usize,
        reason: String,
    },

    #[error("invalid corpus: {0}")]
    InvalidCorpus(ValidationReport),

    #[error("unsupported {what} schema version {found} (expected {expected})")]
    SchemaVersion {
        what: &'static str,
        found: u32,
        expected: u32,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("config: {0}")]
    Config(String),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn not_found(kind: &'static str, name: impl Into<String>) -> Self {
        Error::NotFound {
            kind,
            name: name.into(),
        }
    }
}
