use thiserror::Error;

/// Failure modes of the bracketing checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    /// The geometric tail-ratio bound is not yet contracting at the requested
    /// truncation point; the caller must extend the partial sum.
    #[error("term ratio {ratio} is not below 1 at k_max={k_max}; extend the partial sum")]
    RatioNotContracting { k_max: u64, ratio: String },

    /// The series failed to meet the requested tolerance within the hard term
    /// budget (2^20 terms). Indicates f pathologically close to 1.
    #[error("series did not reach the requested tolerance within {budget} terms")]
    TermBudgetExceeded { budget: u64 },
}
