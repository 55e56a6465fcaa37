//! Command-line surface for `unireduce`: JSON file I/O, the subcommands and
//! the seeded verification suites.
//!
//! Every command returns an [`Outcome`] instead of printing, so the binary
//! and the tests share one code path.

pub mod commands;
pub mod suites;
pub mod wire;

use thiserror::Error;
use unireduce::decompose::DecomposeError;
use unireduce::{FixedPointError, GroupError, NumericsError};

pub use commands::{
    cmd_closure, cmd_decompose, cmd_defect, cmd_eigenvector, cmd_verify, EigenMethod,
};
pub use suites::{run_suite, Failure, Suite, SuiteReport};

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Ok = 0,
    Input = 1,
    BoundFailure = 2,
    CapExceeded = 3,
    NoCommonEigenvector = 4,
    DegenerateSplit = 5,
}

/// What a command prints and how the process exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: ExitCode,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    pub fn ok(stdout: String) -> Self {
        Outcome {
            code: ExitCode::Ok,
            stdout,
            stderr: String::new(),
        }
    }
}

impl From<CliError> for Outcome {
    fn from(e: CliError) -> Self {
        Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: malformed JSON: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    FixedPoint(#[from] FixedPointError),
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Io { .. }
            | CliError::Json { .. }
            | CliError::Usage(_)
            | CliError::Numerics(_) => ExitCode::Input,
            CliError::Group(e) => group_code(e),
            CliError::FixedPoint(e) => fixed_point_code(e),
            CliError::Decompose(e) => decompose_code(e),
        }
    }
}

fn group_code(e: &GroupError) -> ExitCode {
    match e {
        GroupError::CapExceeded { .. } => ExitCode::CapExceeded,
        _ => ExitCode::Input,
    }
}

fn fixed_point_code(e: &FixedPointError) -> ExitCode {
    match e {
        FixedPointError::CertificationFailed { .. } | FixedPointError::HomomorphismFailure(_) => {
            ExitCode::BoundFailure
        }
        FixedPointError::Group(g) => group_code(g),
        _ => ExitCode::Input,
    }
}

fn decompose_code(e: &DecomposeError) -> ExitCode {
    if e.is_falsification() {
        return ExitCode::BoundFailure;
    }
    match e {
        DecomposeError::NoCommonEigenvector { .. } => ExitCode::NoCommonEigenvector,
        DecomposeError::DegenerateSplit { .. } => ExitCode::DegenerateSplit,
        DecomposeError::HomomorphismFailure(_) | DecomposeError::ZeroAverage { .. } => {
            ExitCode::BoundFailure
        }
        DecomposeError::FixedPoint(f) => fixed_point_code(f),
        DecomposeError::Group(g) => group_code(g),
        _ => ExitCode::Input,
    }
}
