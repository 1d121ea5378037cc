//! Bayesian-averaged Poisson tail p-value: the finite complement form and
//! the direct tail series with a geometric truncation bound.

use crate::binomial::binomial_coefficient_log;
use crate::error::CoreError;
use crate::sum::CompensatedSum;
use crate::types::{CountObservation, Method, PValueResult, RegionGeometry};

/// Largest N for which the finite complement form is considered.
const COMPLEMENT_MAX_N: u64 = 64;

/// Complement results below this are treated as catastrophically cancelled
/// regardless of the requested tolerance.
const COMPLEMENT_MIN_P: f64 = 1e-6;

/// Hard cap on series terms; the term ratio tends to f < 1, so this is
/// purely defensive.
const SERIES_TERM_BUDGET: u64 = 10_000_000;

/// Bayesian-averaged p-value for n ≥ N source counts given B background
/// counts and area ratio α = f/(1−f).
///
/// For N ≤ 64 the finite complement 1 − Σ_{n<N} C(n+B,n) f^n (1−f)^(B+1) is
/// evaluated first; it is kept only when the subtraction is benign: p ≥ 1e-6
/// AND the accumulated term rounding (≈ max|ln t_n|·ε per term) stays below
/// rel_tol·p. Otherwise the tail series is summed directly — all positive
/// terms, no cancellation at any p.
pub fn p_alexandreas(
    obs: CountObservation,
    geom: RegionGeometry,
    rel_tol: f64,
) -> Result<PValueResult, CoreError> {
    assert!(rel_tol > 0.0, "rel_tol must be positive");
    if obs.n_src == 0 {
        return Ok(PValueResult::exact_one(Method::BayesSeries));
    }
    if obs.n_src <= COMPLEMENT_MAX_N {
        if let Some(result) = complement_form(obs, geom, rel_tol) {
            return Ok(result);
        }
    }
    p_alexandreas_series(obs, geom, rel_tol)
}

/// Finite complement form; None when the cancellation error would exceed
/// what the caller asked for.
fn complement_form(
    obs: CountObservation,
    geom: RegionGeometry,
    rel_tol: f64,
) -> Option<PValueResult> {
    let f = geom.f();
    let b = obs.n_bak;
    let ln_pre = (b + 1) as f64 * (-f).ln_1p();
    let ln_f = f.ln();

    let mut sum = CompensatedSum::new();
    let mut max_abs_ln = 0.0f64;
    for n in 0..obs.n_src {
        let ln_t = ln_pre + binomial_coefficient_log(n + b, n as i64) + n as f64 * ln_f;
        max_abs_ln = max_abs_ln.max(ln_t.abs());
        sum.add(ln_t.exp());
    }
    let s = sum.total();
    let p = 1.0 - s;
    // Each term carries ≈ |ln t|·ε relative error; the compensated sum adds
    // almost nothing on top. The subtraction amplifies that by s/p.
    let est_abs_err = (max_abs_ln + 8.0) * f64::EPSILON * s.max(0.0);
    if p < COMPLEMENT_MIN_P || est_abs_err > rel_tol * p {
        return None;
    }
    Some(PValueResult::from_p_and_log(p, (-s).ln_1p(), Method::BayesSeries, 0.0))
}

/// Direct evaluation of the tail series (1−f)^(B+1) Σ_{n=N}^∞ C(n+B,n) f^n,
/// always — no complement crossover. `p` holds the partial sum and
/// `truncation_bound` the geometric remainder bound, so the true value lies
/// in [p, p + truncation_bound].
///
/// Term ratios t_{n+1}/t_n = f(n+B+1)/(n+1) decrease toward f < 1; once the
/// upcoming ratio r = f(k+B+2)/(k+2) is below 1 the remainder after term k
/// is at most t_{k+1}/(1−r), and summation stops when that bound drops below
/// rel_tol times the accumulated sum.
pub fn p_alexandreas_series(
    obs: CountObservation,
    geom: RegionGeometry,
    rel_tol: f64,
) -> Result<PValueResult, CoreError> {
    assert!(rel_tol > 0.0, "rel_tol must be positive");
    if obs.n_src == 0 {
        return Ok(PValueResult::exact_one(Method::BayesSeries));
    }
    let f = geom.f();
    let b = obs.n_bak;
    let ln_pre = (b + 1) as f64 * (-f).ln_1p();
    let ln_f = f.ln();
    let ln_term = |n: u64| binomial_coefficient_log(n + b, n as i64) + n as f64 * ln_f;

    // Streaming log-sum-exp: sum holds Σ exp(ln t_n − anchor), with the
    // anchor raised whenever a term exceeds it (terms grow until
    // n ≈ f(B+1)/(1−f), then decay).
    let mut anchor = ln_term(obs.n_src);
    let mut sum = CompensatedSum::new();
    sum.add(1.0);
    let mut n = obs.n_src;
    loop {
        let ln_next = ln_term(n + 1);
        if ln_next > anchor {
            let scale = (anchor - ln_next).exp();
            let rescaled: f64 = sum.total() * scale;
            sum = CompensatedSum::new();
            sum.add(rescaled);
            anchor = ln_next;
        }
        let r = f * (n + b + 2) as f64 / (n + 2) as f64;
        if r < 1.0 {
            let bound_scaled = (ln_next - anchor).exp() / (1.0 - r);
            if bound_scaled <= rel_tol * sum.total() {
                let log_p = ln_pre + anchor + sum.total().ln();
                let bound = (ln_pre + anchor + bound_scaled.ln()).exp();
                return Ok(PValueResult::from_log(log_p, Method::BayesSeries, bound));
            }
        }
        sum.add((ln_next - anchor).exp());
        n += 1;
        if n - obs.n_src >= SERIES_TERM_BUDGET {
            return Err(CoreError::TruncationFailure { terms: SERIES_TERM_BUDGET });
        }
    }
}
