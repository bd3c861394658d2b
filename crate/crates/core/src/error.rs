use std::path::PathBuf;

/// Errors produced by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid precision: {0}")]
    Precision(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("q-expansion known to order {available} but order {required} is needed")]
    InsufficientOrder { available: i64, required: i64 },

    #[error("fitted coefficient bound failed: {0}")]
    GrowthBound(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("fetch failed for {label}: {msg}")]
    Fetch { label: String, msg: String },

    #[error("no convergence: {0}")]
    NoConvergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    /// True for errors caused by bad input or configuration rather than by
    /// the numerics.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Precision(_)
                | Error::Precondition(_)
                | Error::Parse { .. }
                | Error::Io { .. }
                | Error::Fetch { .. }
                | Error::Unsupported(_)
        )
    }
}
