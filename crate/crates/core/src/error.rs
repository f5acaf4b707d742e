//! Error type shared by all toolkit operations.

use thiserror::Error;

/// Failure modes of grid, transform, norm, and operator construction.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// Arguments violate a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// Two fields (or a field and a window/weight) live on incompatible grids.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    /// A requested modulation or chirp would alias past the representable band.
    #[error("aliasing guard: {0}")]
    NyquistViolation(String),
    /// A size or configuration the implementation refuses (resource caps).
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Shorthand constructor for precondition failures.
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// Shorthand constructor for grid incompatibilities.
    pub fn mismatch(msg: impl Into<String>) -> Self {
        Error::GridMismatch(msg.into())
    }
}
