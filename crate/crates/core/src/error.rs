use thiserror::Error;

/// Failure modes shared by all modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error in {op}: {reason}")]
    Domain { op: &'static str, reason: String },
    #[error("{op} did not converge: {reason}")]
    NonConvergence { op: &'static str, reason: String },
    #[error("overflow in {op}: {reason}")]
    Overflow { op: &'static str, reason: String },
    #[error("invalid parameters for {op}: {reason}")]
    Validation { op: &'static str, reason: String },
}

impl Error {
    pub(crate) fn domain(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            op,
            reason: reason.into(),
        }
    }

    pub(crate) fn no_convergence(op: &'static str, reason: impl Into<String>) -> Self {
        Error::NonConvergence {
            op,
            reason: reason.into(),
        }
    }

    pub(crate) fn overflow(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Overflow {
            op,
            reason: reason.into(),
        }
    }

    pub(crate) fn validation(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Validation {
            op,
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
