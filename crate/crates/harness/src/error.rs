use std::path::{Path, PathBuf};

use thiserror::Error;
use ubopt_core::{EncodingError, SolverError};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("failed to parse {source_name}: {message}")]
    Parse { source_name: String, message: String },
    #[error("invalid configuration: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Encoding(#[from] EncodingError),
    #[error("refused: {0}")]
    GuardRail(String),
    #[error("{0}")]
    Usage(String),
    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
    #[error("json output failed: {0}")]
    Json(#[from] serde_json::Error),
}

impl HarnessError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        Self::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    /// Machine-readable category printed by the CLI.
    pub fn category(&self) -> &'static str {
        match self {
            Self::Io { .. } | Self::Csv(_) => "io",
            Self::Parse { .. } | Self::Json(_) => "parse",
            Self::Invalid(_) => "config",
            Self::Solver(_) | Self::Encoding(_) => "solver",
            Self::GuardRail(_) => "guard_rail",
            Self::Usage(_) => "usage",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.category() {
            "usage" => 2,
            "parse" => 3,
            "config" => 4,
            "io" => 5,
            "solver" => 6,
            _ => 7,
        }
    }
}
