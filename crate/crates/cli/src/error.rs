use std::path::{Path, PathBuf};

use levelfit_core::qd_archive::ArchiveError;
use levelfit_core::GpError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid config: {0}")]
    Config(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("unknown agent {0:?}")]
    UnknownAgent(String),
    #[error("missing archive {}", .0.display())]
    MissingArchive(PathBuf),
    #[error("{}: {source}", path.display())]
    Archive { path: PathBuf, source: ArchiveError },
    #[error("archive {} was evolved under different game rules ({found}, expected {expected})", path.display())]
    GameMismatch {
        path: PathBuf,
        expected: String,
        found: String,
    },
    #[error("{}: {message}", path.display())]
    Level { path: PathBuf, message: String },
    #[error("gaussian process: {0}")]
    Gp(#[from] GpError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    /// Stable machine-readable category.
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Io { .. } => "io",
            CliError::UnknownAgent(_) => "unknown_agent",
            CliError::MissingArchive(_) => "missing_archive",
            CliError::Archive { .. } => "malformed_archive",
            CliError::GameMismatch { .. } => "game_mismatch",
            CliError::Level { .. } => "invalid_level",
            CliError::Gp(_) => "gaussian_process",
            CliError::Usage(_) => "usage",
        }
    }

    /// One-line JSON object for stderr.
    pub fn to_json(&self) -> String {
        serde_json::json!({ "error": { "kind": self.kind(), "message": self.to_string() } }).to_string()
    }
}
