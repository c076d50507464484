//! Error type shared by all modules in this crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A caller-supplied value violated a precondition (bad dimension,
    /// non-positive power, out-of-range index, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The eigensolver did not reach its convergence threshold within the
    /// sweep budget. Carries the residual off-diagonal mass at the point of
    /// failure.
    #[error(
        "eigensolver did not converge after {sweeps} sweeps (off-diagonal residual {residual:.3e})"
    )]
    NoConvergence { sweeps: usize, residual: f64 },

    /// A mathematical domain violation, e.g. the log-determinant of a matrix
    /// with a non-positive eigenvalue.
    #[error("domain error: {0}")]
    Domain(String),

    /// An enumeration would exceed the configured work cap.
    #[error(
        "enumeration of {required} subsets exceeds the cap of {cap}; use the greedy method instead"
    )]
    EnumerationCap { required: u128, cap: u64 },

    /// A channel file could not be parsed. `context` locates the problem
    /// (file section, line, or field).
    #[error("parse error at {context}: {message}")]
    Parse { context: String, message: String },
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn parse(context: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            context: context.into(),
            message: message.into(),
        }
    }
}
