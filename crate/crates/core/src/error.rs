//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A value violates a domain invariant (bad ladder, beta outside its
    /// interval, non-normalized prior, ...). Maps to a usage error at the CLI.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Inputs are individually valid but the requested quantity is outside
    /// the region where it is defined (e.g. a bound evaluated past its
    /// validity range, or a target SNR below a constraint SNR).
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// An exact verification was requested at a problem size whose cost
    /// exceeds the configured evaluation budget.
    #[error("evaluation budget exceeded: {0}")]
    BudgetExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub fn infeasible(msg: impl Into<String>) -> Self {
        Error::Infeasible(msg.into())
    }
}
