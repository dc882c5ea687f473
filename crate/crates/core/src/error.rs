use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the evaluators, solvers and the scenario runner.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument or a scenario field violates its documented domain.
    #[error("{0}")]
    Invalid(String),

    /// A series or quadrature could not reach the requested tolerance.
    #[error("non-convergent {what} at argument {arg}: {reason}")]
    NonConvergent { what: &'static str, arg: f64, reason: String },

    #[error("unstable grid: {0}")]
    UnstableGrid(String),

    #[error("delta not representable: {0}")]
    DeltaNotRepresentable(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn non_convergent(what: &'static str, arg: f64, reason: impl Into<String>) -> Self {
        Error::NonConvergent { what, arg, reason: reason.into() }
    }

    /// Short machine-readable category used by the command-line front end.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Invalid(_) => "validation",
            Error::NonConvergent { .. } => "non-convergent",
            Error::UnstableGrid(_) => "unstable-grid",
            Error::DeltaNotRepresentable(_) => "delta-not-representable",
            Error::Io { .. } => "io",
        }
    }

    /// Process exit status: 1 validation, 2 numerical non-convergence, 3 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invalid(_) | Error::UnstableGrid(_) | Error::DeltaNotRepresentable(_) => 1,
            Error::NonConvergent { .. } => 2,
            Error::Io { .. } => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
