//! Error type of the command-line front end.

use std::io;

use thiserror::Error;

use crate::sim::SimError;

/// Everything a subcommand can fail with.
#[derive(Debug, Error)]
pub enum CliError {
    /// Invalid or missing configuration, or a missing input file.
    #[error("config error: {0}")]
    Config(String),
    /// Config file is not valid TOML for [`crate::config::RunConfig`].
    #[error("config error: {0}")]
    Toml(#[from] toml::de::Error),
    /// Filesystem failure.
    #[error("io error: {0}")]
    Io(#[from] io::Error),
    /// CSV encoding or decoding failure.
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    /// JSON encoding or decoding failure.
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    /// Failure inside the numerical core.
    #[error("numeric error: {0}")]
    Numeric(#[from] dsw_edge_core::Error),
    /// Solver failure, including blow-up.
    #[error("solver error: {0}")]
    Sim(#[from] SimError),
    /// Some requested checks failed.
    #[error("{failed} of {total} checks failed")]
    CheckFailed {
        /// Failing rows.
        failed: usize,
        /// All rows.
        total: usize,
    },
}

impl CliError {
    /// Process exit code.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::CheckFailed { .. } => 1,
            CliError::Config(_) | CliError::Toml(_) => 2,
            CliError::Numeric(_) | CliError::Sim(_) => 3,
            CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => 4,
        }
    }
}

/// Result alias for the front end.
pub type Result<T> = std::result::Result<T, CliError>;
