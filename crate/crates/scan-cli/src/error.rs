use significance_core::CoreError;
use thiserror::Error;

/// Everything the scanner can reject, split by exit-code class: `Io` and
/// `Parse` are input problems (exit 2), the rest are internal failures
/// (exit 3). Usage errors never reach this type; clap owns those.
#[derive(Debug, Error)]
pub enum ScanError {
    #[error("{0}")]
    Usage(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// `row` and `col` are 1-based positions in the input CSV.
    #[error("map parse error at row {row}, col {col}: {reason}")]
    Parse {
        row: usize,
        col: usize,
        reason: String,
    },

    #[error("invalid aperture: r_src={r_src}, r_in={r_in}, r_out={r_out} (need 0 < r_src <= r_in < r_out, all finite)")]
    InvalidAperture { r_src: f64, r_in: f64, r_out: f64 },

    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("oracle spot-check failed at pixel ({x}, {y}): scanner p = {got:e}, exact p = {want:e}")]
    SpotCheckMismatch { x: usize, y: usize, got: f64, want: f64 },

    #[error("verification failed: {0}")]
    Verification(String),
}

impl ScanError {
    /// Process exit code this error maps to: 1 for unusable arguments,
    /// 2 for bad input data, 3 for an internal verification failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            ScanError::Usage(_) | ScanError::InvalidAperture { .. } => 1,
            ScanError::Io(_) | ScanError::Parse { .. } => 2,
            ScanError::Core(_)
            | ScanError::SpotCheckMismatch { .. }
            | ScanError::Verification(_) => 3,
        }
    }
}
