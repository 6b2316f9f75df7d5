//! Command-line front end for `edr-core`.
//!
//! Exit codes: 0 success, 1 negative decision (not isomorphic, no
//! solution, failed verification), 2 input error, 3 internal invariant
//! violation.

pub mod app;
pub mod input;
pub mod selftest;

use std::path::Path;

use edr_core::{FpmodError, RingError, SmithError};
use thiserror::Error;

pub use app::{run, Args, Command};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    pub fn context(self, path: &Path) -> Self {
        match self {
            CliError::Input(m) => CliError::Input(format!("{}: {m}", path.display())),
            other => other,
        }
    }
}

impl From<SmithError> for CliError {
    fn from(e: SmithError) -> Self {
        match e {
            SmithError::Internal(m) | SmithError::Ring(RingError::Internal(m)) => {
                CliError::Internal(m)
            }
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<FpmodError> for CliError {
    fn from(e: FpmodError) -> Self {
        match e {
            FpmodError::Smith(s) => s.into(),
            FpmodError::InvalidComplex(m) => CliError::Input(format!("invalid chain complex: {m}")),
            FpmodError::Internal(m) => CliError::Internal(m),
        }
    }
}

/// Result of one invocation: exit code and the two output streams.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    pub fn from_error(e: CliError) -> Self {
        Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("edr: {e}\n"),
        }
    }
}
