use crate::error::CoreError;
use crate::sigma::p_to_sigma;

/// Source and background region areas with the derived count fraction
/// f = A_src/(A_src+A_bak) and area ratio α = A_src/A_bak. Construction
/// rejects non-positive or non-finite areas, so f ∈ (0,1) and α > 0 hold for
/// every live value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionGeometry {
    a_src: f64,
    a_bak: f64,
    f: f64,
    alpha: f64,
}

impl RegionGeometry {
    pub fn new(a_src: f64, a_bak: f64) -> Result<Self, CoreError> {
        if !(a_src > 0.0 && a_bak > 0.0 && a_src.is_finite() && a_bak.is_finite()) {
            return Err(CoreError::InvalidGeometry { a_src, a_bak });
        }
        let f = a_src / (a_src + a_bak);
        if !(f > 0.0 && f < 1.0) {
            // Extreme area ratios can round f onto 0 or 1, where both
            // formulas degenerate.
            return Err(CoreError::InvalidGeometry { a_src, a_bak });
        }
        Ok(RegionGeometry { a_src, a_bak, f, alpha: a_src / a_bak })
    }

    /// Geometry with the given source fraction, realized as unit total area.
    /// The stored f is recomputed from the areas and may differ from the
    /// argument by one rounding.
    pub fn from_fraction(f: f64) -> Result<Self, CoreError> {
        if !(f > 0.0 && f < 1.0) {
            return Err(CoreError::InvalidGeometry { a_src: f, a_bak: 1.0 - f });
        }
        RegionGeometry::new(f, 1.0 - f)
    }

    pub fn a_src(&self) -> f64 {
        self.a_src
    }

    pub fn a_bak(&self) -> f64 {
        self.a_bak
    }

    /// Expected fraction of total counts in the source region under the null.
    pub fn f(&self) -> f64 {
        self.f
    }

    /// Area ratio A_src/A_bak; equals f/(1−f) to within 2 ulp.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// Observed counts: N in the source region, B in the background region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CountObservation {
    pub n_src: u64,
    pub n_bak: u64,
}

impl CountObservation {
    pub fn new(n_src: u64, n_bak: u64) -> Self {
        CountObservation { n_src, n_bak }
    }

    pub fn total(&self) -> u64 {
        self.n_src + self.n_bak
    }
}

/// Which evaluation path produced a p-value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Finite binomial tail sum, term by term.
    BinomialTail,
    /// Bayes-averaged Poisson form: finite complement or adaptive series.
    BayesSeries,
    /// Regularized incomplete beta continued fraction.
    IncompleteBeta,
}

/// A p-value with its natural log (finite far beyond double underflow), the
/// one-sided Gaussian-equivalent significance, the evaluation path, and the
/// proven bound on any truncated series tail (0 for exact finite sums).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PValueResult {
    pub p: f64,
    pub log_p: f64,
    pub sigma: f64,
    pub method: Method,
    pub truncation_bound: f64,
}

impl PValueResult {
    /// Builds a result from the log of the p-value; p is derived by
    /// exponentiation so the two agree to the last ulp.
    pub(crate) fn from_log(log_p: f64, method: Method, truncation_bound: f64) -> Self {
        let log_p = log_p.min(0.0);
        PValueResult {
            p: log_p.exp(),
            log_p,
            sigma: p_to_sigma(log_p),
            method,
            truncation_bound,
        }
    }

    /// Builds a result from independently computed p and log p (used when the
    /// linear value comes from a complement and is more accurate than
    /// exp(log_p) would be).
    pub(crate) fn from_p_and_log(p: f64, log_p: f64, method: Method, truncation_bound: f64) -> Self {
        let p = p.clamp(0.0, 1.0);
        let log_p = log_p.min(0.0);
        PValueResult { p, log_p, sigma: p_to_sigma(log_p), method, truncation_bound }
    }

    pub(crate) fn exact_one(method: Method) -> Self {
        PValueResult { p: 1.0, log_p: 0.0, sigma: 0.0, method, truncation_bound: 0.0 }
    }
}
