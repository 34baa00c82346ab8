use thiserror::Error;

use crate::vector::Shape;

/// Errors produced by oracles, sets and solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: Shape, found: Shape },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("non-finite value at coordinate {index}")]
    NonFinite { index: usize },

    #[error("coordinate {index} reached {value:e}, beyond the divergence guard")]
    Diverged { index: usize, value: f64 },

    #[error("unsupported operation: {0}")]
    Unsupported(&'static str),

    #[error("{what} did not converge after {iterations} iterations")]
    NoConvergence { what: &'static str, iterations: usize },

    #[error("solver failed at iteration {k}: {source}")]
    Solver {
        k: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn at_iteration(self, k: usize) -> Self {
        match self {
            e @ Error::Solver { .. } => e,
            e => Error::Solver {
                k,
                source: Box::new(e),
            },
        }
    }

    /// True for failures raised while a solver or numerical kernel was
    /// running, as opposed to rejected input.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::NonFinite { .. } | Error::Diverged { .. } | Error::NoConvergence { .. } | Error::Solver { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
