use thiserror::Error;

/// Failure modes of the floating-point significance routines.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum CoreError {
    /// Region areas must be positive and finite, and the background nonempty.
    #[error("invalid region geometry: a_src={a_src}, a_bak={a_bak} (both must be positive and finite)")]
    InvalidGeometry { a_src: f64, a_bak: f64 },

    /// A continued fraction or series did not converge within its budget.
    #[error("{what} did not converge within {iterations} iterations")]
    ConvergenceFailure { what: &'static str, iterations: usize },

    /// The adaptive series ran out of terms before its tail ratio dropped
    /// below 1. Cannot occur for f < 1; purely defensive.
    #[error("series truncation failed after {terms} terms")]
    TruncationFailure { terms: u64 },
}
