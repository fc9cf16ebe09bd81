use thiserror::Error;

/// Errors produced by the solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("displacement fixed point did not converge after {iterations} iterations (residual {residual:e})")]
    FixedPointNotConverged { iterations: usize, residual: f64 },

    #[error("eigensolver did not converge for eigenvalue {index} after {iterations} iterations")]
    EigenNotConverged { index: usize, iterations: usize },
}

impl Error {
    /// True for failures of an iterative numerical method, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::FixedPointNotConverged { .. } | Error::EigenNotConverged { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
