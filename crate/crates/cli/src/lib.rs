//! Command-line front end for `ess-core`: space descriptions, built-in
//! examples, and one report per command in text and JSON.

pub mod builtins;
pub mod commands;
pub mod input;
pub mod render;
pub mod selftest;

use thiserror::Error;

pub use commands::{run, run_args, Cli, Execution, Outcome, Report};

/// Exit status for a successful run.
pub const EXIT_OK: i32 = 0;
/// Malformed input, unknown options, or a computation the input does not support.
pub const EXIT_INPUT: i32 = 2;
/// A hypothesis is not met and `--strict` was given, or a minimal complex was required.
pub const EXIT_HYPOTHESIS: i32 = 3;
/// Two independent computations disagree.
pub const EXIT_CROSS_CHECK: i32 = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Hypothesis(_) => EXIT_HYPOTHESIS,
            CliError::CrossCheck(_) => EXIT_CROSS_CHECK,
        }
    }
}

impl From<ess_core::Error> for CliError {
    fn from(e: ess_core::Error) -> Self {
        match e {
            ess_core::Error::CrossCheck(m) => CliError::CrossCheck(m),
            ess_core::Error::CompositionFailure { .. } => CliError::Input(e.to_string()),
            ess_core::Error::MinimalityViolation(_) => CliError::Hypothesis(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}
