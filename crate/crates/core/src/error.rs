//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Two operators (or vectors) that must live on the same Hilbert space do not.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// A caller-supplied argument is outside its documented domain.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A matrix failed projector validation.
    #[error("not a projector ({reason}, residual {residual:.3e})")]
    NotProjector { reason: String, residual: f64 },

    /// A matrix failed density-matrix validation.
    #[error("not a density matrix ({reason}, residual {residual:.3e})")]
    NotDensityMatrix { reason: String, residual: f64 },

    /// Conditioning on an event/projector of (numerically) zero weight.
    #[error("conditioning on a null event: {context} has weight {weight:.3e}")]
    ConditioningOnNull { context: String, weight: f64 },

    /// Boolean-subalgebra construction was given a non-commuting generator pair.
    #[error("generators {first} and {second} do not commute (commutator norm {norm:.3e})")]
    NonCommutingGenerators {
        first: usize,
        second: usize,
        norm: f64,
    },

    /// A Monte Carlo conditioning filter accepted zero trials.
    #[error("oracle starvation: 0 of {trials} trials passed the conditioning filter; increase the trial count")]
    OracleStarved { trials: u64 },

    /// Failure while reading or writing a serialized artifact.
    #[error("serialization: {0}")]
    Serialization(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
