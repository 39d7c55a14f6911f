use std::io;
use std::path::PathBuf;

use rootcite::{DedupError, PeakError, SpectroscopyError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("permission denied: {0}")]
    PermissionDenied(PathBuf),
    #[error("{0} exists and is a regular file")]
    PathIsFile(PathBuf),
    #[error("{0} is not a rootcite project (run `rootcite create` first)")]
    LayoutMissing(PathBuf),
    #[error("no input files in {0}")]
    NoInputFiles(PathBuf),
    #[error("record store is empty (run `rootcite ingest` first)")]
    EmptyStore,
    #[error("{0} is not valid UTF-8")]
    InvalidUtf8(PathBuf),
    #[error("{path}:{line}: unreadable store entry: {source}")]
    Store { path: PathBuf, line: usize, source: serde_json::Error },
    #[error("no {0} references carry a publication year")]
    NoDatedReferences(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Dedup(#[from] DedupError),
    #[error(transparent)]
    Spectroscopy(#[from] SpectroscopyError),
    #[error(transparent)]
    Peak(#[from] PeakError),
}

impl CliError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        let path = path.into();
        if source.kind() == io::ErrorKind::PermissionDenied {
            CliError::PermissionDenied(path)
        } else {
            CliError::Io { path, source }
        }
    }

    /// Process exit status; usage errors (1) are reported by argument parsing instead.
    pub fn exit_code(&self) -> i32 {
        2
    }
}
