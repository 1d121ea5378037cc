//! Poisson pmf/tail and the background-rate posterior density.

use crate::error::CoreError;
use crate::special::{bd0, gamma_p_with_log, ln_factorial, stirlerr, LN_2PI};
use crate::sum::CompensatedSum;

/// Largest n_min for which the tail is computed as 1 minus the finite head
/// sum (only when μ ≥ n_min, so the complement does not cancel).
const COMPLEMENT_MAX_N: u64 = 32;

/// ln of the Poisson pmf μ^n e^(−μ)/n!, via the saddle-point decomposition
/// −stirlerr(n) − bd0(n, μ) − ½ln(2πn): accurate to ~1e-15 in the log even
/// when n! would overflow and μ^n underflow.
pub fn poisson_log_pmf(n: u64, mu: f64) -> f64 {
    debug_assert!(mu >= 0.0, "mu must be non-negative");
    if mu == 0.0 {
        return if n == 0 { 0.0 } else { f64::NEG_INFINITY };
    }
    if n == 0 {
        return -mu;
    }
    let x = n as f64;
    -stirlerr(x) - bd0(x, mu) - 0.5 * (LN_2PI + x.ln())
}

/// Poisson pmf in linear space.
pub fn poisson_pmf(n: u64, mu: f64) -> f64 {
    poisson_log_pmf(n, mu).exp()
}

/// Upper tail P(X ≥ n_min) for X ~ Poisson(μ), equal to the regularized
/// lower incomplete gamma P(n_min, μ). The finite complement
/// 1 − Σ_{n<n_min} pmf is used when n_min is small and μ ≥ n_min (tail of
/// order unity, subtraction benign); otherwise the incomplete gamma, whose
/// series branch keeps full relative accuracy for deep tails.
pub fn poisson_tail(n_min: u64, mu: f64) -> Result<f64, CoreError> {
    assert!(mu >= 0.0, "mu must be non-negative");
    if n_min == 0 {
        return Ok(1.0);
    }
    if mu == 0.0 {
        return Ok(0.0);
    }
    if n_min <= COMPLEMENT_MAX_N && mu >= n_min as f64 {
        let mut head = CompensatedSum::new();
        for n in 0..n_min {
            head.add(poisson_pmf(n, mu));
        }
        return Ok((1.0 - head.total()).clamp(0.0, 1.0));
    }
    let (p, _) = gamma_p_with_log(n_min as f64, mu)?;
    Ok(p)
}

/// Posterior density of the background rate μ given B background counts
/// under a uniform prior: the gamma(B+1, scale α) density
/// μ^B e^(−μ/α) / (α^(B+1) B!), normalized over μ ∈ [0, ∞).
pub fn posterior_density(mu: f64, n_bak: u64, alpha: f64) -> f64 {
    assert!(mu >= 0.0, "mu must be non-negative");
    assert!(alpha > 0.0, "alpha must be positive");
    if mu == 0.0 {
        return if n_bak == 0 { 1.0 / alpha } else { 0.0 };
    }
    let b = n_bak as f64;
    (b * mu.ln() - mu / alpha - (b + 1.0) * alpha.ln() - ln_factorial(n_bak)).exp()
}
