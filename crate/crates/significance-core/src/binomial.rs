//! Binomial pmf and tail probability in log space, plus the incomplete-beta
//! route for survey-scale counts.

use crate::error::CoreError;
use crate::special::{bd0, inc_beta_with_log, ln_beta, stirlerr, LN_2PI};
use crate::sum::CompensatedSum;
use crate::types::{CountObservation, Method, PValueResult, RegionGeometry};

/// Total counts above which the finite tail sum hands over to the
/// incomplete-beta continued fraction.
const DIRECT_SUM_LIMIT: u64 = 10_000;

/// ln C(a, b); −∞ when b < 0 or b > a (the pmf convention that out-of-range
/// coefficients are 0). Uses ln C(a,b) = −ln(a+1) − ln B(b+1, a−b+1), which
/// keeps the Stirling-error corrections of `ln_beta` even for a ~ 10^9.
pub fn binomial_coefficient_log(a: u64, b: i64) -> f64 {
    if b < 0 || b as u64 > a {
        return f64::NEG_INFINITY;
    }
    let b = b as u64;
    if b == 0 || b == a {
        return 0.0;
    }
    let a_f = a as f64;
    -(a_f + 1.0).ln() - ln_beta(b as f64 + 1.0, (a - b) as f64 + 1.0)
}

/// ln of the binomial pmf C(total,n) f^n (1−f)^(total−n), by the
/// saddle-point decomposition (Stirling errors plus the deviance bd0), which
/// holds ~1e-15 absolute accuracy in the log for counts up to 10^9.
pub fn binomial_log_pmf(n: u64, total: u64, f: f64) -> f64 {
    debug_assert!((0.0..1.0).contains(&f), "f must be in [0,1)");
    if n > total {
        return f64::NEG_INFINITY;
    }
    if f == 0.0 {
        return if n == 0 { 0.0 } else { f64::NEG_INFINITY };
    }
    if n == 0 {
        return total as f64 * (-f).ln_1p();
    }
    if n == total {
        return total as f64 * f.ln();
    }
    let x = n as f64;
    let nn = total as f64;
    let q = 1.0 - f;
    let lc = stirlerr(nn) - stirlerr(x) - stirlerr(nn - x)
        - bd0(x, nn * f)
        - bd0(nn - x, nn * q);
    let lf = LN_2PI + x.ln() + (-x / nn).ln_1p();
    lc - 0.5 * lf
}

/// Binomial pmf in linear space; 0 when n > total.
pub fn binomial_pmf(n: u64, total: u64, f: f64) -> f64 {
    binomial_log_pmf(n, total, f).exp()
}

/// Binomial-tail p-value (probability of n ≥ N source counts given N+B total
/// and source fraction f). Uses the finite sum through N+B ≤ 10^4 and the
/// incomplete-beta continued fraction above that; the continued fraction
/// cannot realistically fail there, but the finite sum remains as fallback
/// so this operation is total.
pub fn p_lampton(obs: CountObservation, geom: RegionGeometry) -> PValueResult {
    if obs.n_src == 0 {
        return PValueResult::exact_one(Method::BinomialTail);
    }
    if obs.total() > DIRECT_SUM_LIMIT {
        if let Ok(result) = p_lampton_beta(obs, geom) {
            return result;
        }
    }
    binomial_tail_direct(obs.n_src, obs.total(), geom.f())
}

/// Finite tail sum Σ_{n=N}^{T} pmf(n), accumulated smallest-magnitude-first
/// with compensation, anchored at the largest log term so the sum stays
/// finite even when p underflows.
fn binomial_tail_direct(n_src: u64, total: u64, f: f64) -> PValueResult {
    // The pmf is unimodal with mode near f·(T+1); the largest tail term sits
    // at the mode clamped into [N, T].
    let anchor_n = ((f * (total + 1) as f64).floor() as u64).clamp(n_src, total);
    let ln_max = binomial_log_pmf(anchor_n, total, f);

    let mut sum = CompensatedSum::new();
    if f < 0.5 {
        // Terms shrink toward n = T: add from that end.
        for n in (n_src..=total).rev() {
            sum.add((binomial_log_pmf(n, total, f) - ln_max).exp());
        }
    } else {
        for n in n_src..=total {
            sum.add((binomial_log_pmf(n, total, f) - ln_max).exp());
        }
    }
    let log_p = ln_max + sum.total().ln();
    PValueResult::from_log(log_p, Method::BinomialTail, 0.0)
}

/// Binomial tail via the identity p = I_f(N, B+1), evaluated by continued
/// fraction: O(1) in the counts, stable to N+B ~ 10^9. N = 0 returns p = 1
/// directly (the identity needs a positive first shape parameter).
pub fn p_lampton_beta(
    obs: CountObservation,
    geom: RegionGeometry,
) -> Result<PValueResult, CoreError> {
    if obs.n_src == 0 {
        return Ok(PValueResult::exact_one(Method::IncompleteBeta));
    }
    let (p, log_p) =
        inc_beta_with_log(obs.n_src as f64, (obs.n_bak + 1) as f64, geom.f())?;
    Ok(PValueResult::from_p_and_log(p, log_p, Method::IncompleteBeta, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geom_f(f: f64) -> RegionGeometry {
        RegionGeometry::from_fraction(f).unwrap()
    }

    fn assert_rel(got: f64, want: f64, tol: f64, what: &str) {
        let err = if want == 0.0 { got.abs() } else { (got / want - 1.0).abs() };
        assert!(err <= tol, "{what}: got {got:.17e}, want {want:.17e}, rel err {err:.3e}");
    }

    #[test]
    fn coefficient_log_examples() {
        assert_rel(binomial_coefficient_log(5, 2), 10.0f64.ln(), 1e-14, "ln C(5,2)");
        assert_eq!(binomial_coefficient_log(7, 9), f64::NEG_INFINITY);
        assert_eq!(binomial_coefficient_log(7, -1), f64::NEG_INFINITY);
        assert_eq!(binomial_coefficient_log(0, 0), 0.0);
        assert_eq!(binomial_coefficient_log(12, 12), 0.0);
        // ln C(1000,500); reference from exact integer arithmetic.
        assert_rel(
            binomial_coefficient_log(1000, 500),
            689.467_261_567_851_2,
            1e-15,
            "ln C(1000,500)",
        );
        // Exponentiated: 1e-12 relative against the exact coefficient.
        assert_rel(
            (binomial_coefficient_log(1000, 500) - 689.467_261_567_851_2).exp(),
            1.0,
            1e-12,
            "C(1000,500) rel",
        );
    }

    #[test]
    fn pmf_examples() {
        assert_eq!(binomial_pmf(0, 0, 0.3), 1.0);
        assert_rel(binomial_pmf(2, 4, 0.5), 0.375, 1e-15, "pmf(2,4,.5)");
        // Golden from exact rational evaluation at fl(0.2).
        assert_rel(binomial_pmf(50, 200, 0.2), 0.014_856_557_516_089_323, 1e-13, "pmf(50,200,.2)");
        assert_eq!(binomial_pmf(5, 4, 0.5), 0.0);
        assert_eq!(binomial_pmf(0, 9, 0.0), 1.0);
        assert_eq!(binomial_pmf(3, 9, 0.0), 0.0);
    }

    #[test]
    fn pmf_normalizes_at_large_total() {
        for &(total, f) in &[(2000u64, 0.37), (500, 0.004), (1234, 0.91)] {
            let mut sum = CompensatedSum::new();
            for n in 0..=total {
                sum.add(binomial_pmf(n, total, f));
            }
            assert_rel(sum.total(), 1.0, 1e-12, &format!("normalization T={total} f={f}"));
        }
    }

    #[test]
    fn lampton_boundary_cases() {
        let g = geom_f(0.3);
        let r = p_lampton(CountObservation::new(0, 12), g);
        assert_eq!((r.p, r.log_p, r.sigma), (1.0, 0.0, 0.0));
        assert_eq!(r.method, Method::BinomialTail);
        assert_eq!(r.truncation_bound, 0.0);

        // N=1: p = 1 − (1−f)^(B+1).
        for &(b, f) in &[(0u64, 0.5), (10, 0.3), (100, 0.01), (3, 0.9)] {
            let r = p_lampton(CountObservation::new(1, b), geom_f(f));
            let expect = -((1.0 - f).powi(b as i32 + 1) - 1.0);
            assert_rel(r.p, expect, 1e-12, &format!("N=1 B={b} f={f}"));
        }
    }

    #[test]
    fn lampton_golden_value() {
        // Exact rational tail at N=5, B=10, f=1/4 is
        // 336633157/1073741824 = 0.31351405847817659378...
        let r = p_lampton(CountObservation::new(5, 10), geom_f(0.25));
        assert_rel(r.p, 0.313_514_058_478_176_6, 1e-13, "golden (5,10,1/4)");
        assert_eq!(r.method, Method::BinomialTail);
        assert_rel(r.log_p, r.p.ln(), 1e-14, "log consistency");
    }

    #[test]
    fn lampton_switches_to_beta_above_limit() {
        let g = geom_f(0.5);
        let big = p_lampton(CountObservation::new(5_200, 5_200), g);
        assert_eq!(big.method, Method::IncompleteBeta);
        // The direct sum still works there; the two must agree. The beta
        // route's ln-prefactor subtracts three ~7000-magnitude logs, so a
        // few units in 1e-13 of drift is inherent at this scale.
        let direct = binomial_tail_direct(5_200, 10_400, g.f());
        assert_rel(big.p, direct.p, 5e-12, "beta vs direct at T=10400");

        let small = p_lampton(CountObservation::new(3, 3), g);
        assert_eq!(small.method, Method::BinomialTail);
    }

    #[test]
    fn lampton_survives_underflow_in_log_space() {
        // ln p ≈ −1366: underflows the linear value but not the log.
        let r = binomial_tail_direct(800, 1000, 0.1);
        assert_eq!(r.p, 0.0);
        assert!(r.log_p.is_finite());
        assert!(r.log_p < -1300.0);
        assert!(r.sigma > 50.0 && r.sigma.is_finite());
    }

    #[test]
    fn beta_route_examples() {
        let r = p_lampton_beta(CountObservation::new(1, 0), geom_f(0.5)).unwrap();
        assert_rel(r.p, 0.5, 1e-14, "I_0.5(1,1)");
        assert_eq!(r.method, Method::IncompleteBeta);

        let r = p_lampton_beta(CountObservation::new(5, 10), geom_f(0.25)).unwrap();
        assert_rel(r.p, 0.313_514_058_478_176_6, 1e-12, "beta golden (5,10,1/4)");

        let r = p_lampton_beta(CountObservation::new(0, 7), geom_f(0.25)).unwrap();
        assert_eq!(r.p, 1.0);

        // Symmetric million-count case: finite, interior, finite log.
        let r = p_lampton_beta(CountObservation::new(1_000_000, 1_000_000), geom_f(0.5)).unwrap();
        assert!(r.p > 0.0 && r.p < 1.0, "p = {}", r.p);
        assert!(r.log_p.is_finite());
    }

    #[test]
    fn beta_route_matches_direct_sum_on_grid() {
        for &n in &[1u64, 2, 7, 40, 160] {
            for &b in &[0u64, 1, 9, 77, 500] {
                for &f in &[0.05, 0.3, 0.5, 0.92] {
                    let g = geom_f(f);
                    let direct = binomial_tail_direct(n, n + b, g.f());
                    let beta = p_lampton_beta(CountObservation::new(n, b), g).unwrap();
                    assert_rel(beta.p, direct.p, 1e-12, &format!("N={n} B={b} f={f}"));
                }
            }
        }
    }
}
