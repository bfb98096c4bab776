//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by sequence construction, verification and simulation.
#[derive(Debug, Error)]
pub enum Error {
    /// Two sequences that must have equal length do not.
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// A parameter violates a documented precondition.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An index is outside its valid range.
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: u64, limit: u64 },

    /// Input to a correlation routine contains a zero entry; the
    /// aperiodic definitions require unpadded, fully populated vectors.
    #[error("zero entry at position {0}: zero-padded input is rejected")]
    ZeroEntry(usize),

    /// Exact (integer) arithmetic was requested for a modulus that has no
    /// Gaussian-integer representation.
    #[error("exact arithmetic unavailable for q={0} (supported: q dividing 4)")]
    ExactUnavailable(u32),

    /// The least-squares regression matrix is rank deficient.
    #[error("regression matrix is rank deficient (rank {rank} < {cols} columns)")]
    RankDeficient { rank: usize, cols: usize },

    /// A serialized artifact could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
