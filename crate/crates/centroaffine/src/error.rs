use std::path::PathBuf;

use centroaffine_core::Error as MathError;
use serde_json::json;

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_SCHEMA: i32 = 4;
pub const EXIT_MATH: i32 = 5;
pub const EXIT_NOT_CONVEX: i32 = 6;
pub const EXIT_CHECK_FAILED: i32 = 7;
pub const EXIT_WARNING: i32 = 8;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("schema: {0}")]
    Schema(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Math(#[from] MathError),
    #[error("{} of {} properties failed: {}", .failed.len(), .total, .failed.join(", "))]
    CheckFailed { failed: Vec<String>, total: usize },
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => EXIT_IO,
            CliError::Schema(_) => EXIT_SCHEMA,
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Math(
                MathError::NotZeroConvex { .. } | MathError::LeftZeroConvexRegion { .. } | MathError::ReconstructionNotConvex { .. },
            ) => EXIT_NOT_CONVEX,
            CliError::Math(_) => EXIT_MATH,
            CliError::CheckFailed { .. } => EXIT_CHECK_FAILED,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Schema(_) => "schema",
            CliError::Usage(_) => "usage",
            CliError::Math(_) if self.exit_code() == EXIT_NOT_CONVEX => "not 0-convex",
            CliError::Math(_) => "math",
            CliError::CheckFailed { .. } => "check failed",
        }
    }

    /// Single-line JSON record for the error stream.
    pub fn record(&self) -> String {
        json!({ "error": self.kind(), "message": self.to_string(), "exit_code": self.exit_code() }).to_string()
    }
}

pub type CliResult<T> = Result<T, CliError>;
