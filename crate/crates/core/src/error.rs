//! Error type shared by every module in the crate.

use thiserror::Error;

/// Library-wide error. The `Display` form is a stable single-line
/// `kind: detail` string that the CLI forwards verbatim.
#[derive(Debug, Error)]
pub enum Error {
    /// Precondition violation: mismatched weights, out-of-range sizes,
    /// malformed partitions, and similar caller mistakes.
    #[error("invalid-argument: {0}")]
    InvalidArgument(String),

    /// The request is well-formed but exceeds a hard implementation limit
    /// (permutation sums past 10!, permanents past 24x24, ...).
    #[error("resource-limit: {0}")]
    ResourceLimit(String),

    /// No dominance path exists between the two partitions.
    #[error("no-path: {0}")]
    NoPath(String),

    /// A matrix that must be Hermitian is not, within tolerance.
    #[error("non-hermitian: {0}")]
    NonHermitian(String),

    /// Exact integer arithmetic overflowed; the count is reported rather
    /// than silently truncated.
    #[error("overflow: {0}")]
    Overflow(String),

    /// Malformed input file or argument string.
    #[error("parse: {0}")]
    Parse(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
