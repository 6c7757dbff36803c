//! Plumbing behind the `lperiodic` binary: run configuration, point
//! acquisition, report emission, the self-test suites and the theorem
//! reproduction rows.

pub mod config;
pub mod family;
pub mod output;
pub mod repro;
pub mod selftest;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] lperiodic::Error),
    #[error(transparent)]
    Config(#[from] config::ConfigError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 2 for bad input, 1 for failures during a run.
    pub fn exit_code(&self) -> i32 {
        use lperiodic::Error as E;
        match self {
            CliError::Usage(_) | CliError::Config(_) | CliError::Json(_) => 2,
            CliError::Core(
                E::ZeroPeriod
                | E::LengthMismatch { .. }
                | E::NoParity
                | E::ZeroFunction
                | E::SupportViolation { .. }
                | E::Degenerate
                | E::Pole(_)
                | E::Zero(_)
                | E::Domain(_)
                | E::ContinuationRange(_)
                | E::CacheMismatch(_),
            ) => 2,
            _ => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
