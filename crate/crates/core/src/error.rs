use thiserror::Error;

/// Errors raised by the sequence constructions, geometry and estimator.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// A vector that must lie on the unit sphere does not.
    #[error("not a unit vector: |norm - 1| = {0:e}")]
    NotUnit(f64),

    /// The input collapses to a point where the construction is undefined.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("unknown polytope label `{0}`")]
    UnknownPolytope(String),

    /// Experiments passed to a comparison cannot be tabulated together.
    #[error("incompatible experiments: {0}")]
    Incompatible(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
