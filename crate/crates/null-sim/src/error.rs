use thiserror::Error;

#[derive(Debug, Error)]
pub enum NullSimError {
    #[error("null model requires mu > 0 and alpha > 0, got mu={mu}, alpha={alpha}")]
    InvalidModel { mu: f64, alpha: f64 },
    #[error("exhaustive enumeration over {total} total counts exceeds the limit of {limit}")]
    EnumerationTooLarge { total: u64, limit: u64 },
}
