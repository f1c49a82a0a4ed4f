//! Error type shared by the persistence and plotting layers.

use std::path::PathBuf;

/// Anything that can go wrong while reading, writing, or rendering
/// benchmark artifacts.
#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("i/o on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema {found:?} (expected {expected:?})")]
    SchemaMismatch { expected: String, found: String },
    #[error("malformed CSV at line {line}: {reason}")]
    Csv { line: usize, reason: String },
    #[error("trace fails its structural invariants: {0}")]
    InvalidTrace(String),
    #[error("nothing to render: {0}")]
    EmptyPayload(String),
    #[error("{0}")]
    Bench(String),
}

impl ReportError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        ReportError::Io { path: path.into(), source }
    }
}
