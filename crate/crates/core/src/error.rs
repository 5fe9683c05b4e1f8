//! Crate-wide error type.

use thiserror::Error;

/// Errors shared by all modules.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input lies outside the mathematical domain of the operation
    /// (the bound or identity is simply not asserted there).
    #[error("domain: {0}")]
    Domain(String),

    /// Structurally invalid argument (empty grid, non-positive parameter).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An iterative method failed to converge or to bracket its target.
    #[error("no convergence: {0}")]
    Divergence(String),

    /// The supplied function lacks a capability the operation needs,
    /// e.g. a second derivative.
    #[error("missing capability: {0}")]
    MissingCapability(String),

    /// A mathematically guaranteed ordering failed on a concrete row.
    #[error("bound violated at u={u}: lower={lower}, exact={exact}, upper={upper}")]
    BoundViolation {
        u: f64,
        lower: f64,
        exact: f64,
        upper: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
