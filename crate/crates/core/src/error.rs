use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The Fock cutoff is too small to represent the requested coherent state.
    #[error("fock cutoff {cutoff} too small for alpha = {alpha}; need N >= {minimal}")]
    Cutoff { alpha: f64, cutoff: usize, minimal: usize },

    /// A caller broke an operation contract (non-Hermitian input, unnormalized state, ...).
    #[error("contract violation: {0}")]
    Contract(String),

    /// An internal consistency check failed. Signals a bug, not bad input.
    #[error("internal consistency failure: {0}")]
    Internal(String),

    /// Propagation lost unitarity beyond tolerance.
    #[error("propagation quality: {0}")]
    Propagation(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Message without the category prefix.
    pub fn message(&self) -> String {
        match self {
            Error::Domain(m) | Error::Contract(m) | Error::Internal(m) | Error::Propagation(m) | Error::Config(m) => {
                m.clone()
            }
            other => other.to_string(),
        }
    }

    /// Process exit status for the command-line tool: 1 for bad input or
    /// configuration, 2 for contract and validation failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Domain(_) | Error::Io { .. } => 1,
            Error::Cutoff { .. } | Error::Contract(_) | Error::Internal(_) | Error::Propagation(_) => 2,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
