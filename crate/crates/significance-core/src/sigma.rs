//! One-sided Gaussian tail and its inverse, both parameterized by ln p so
//! that significances stay finite far beyond the double underflow limit.

use crate::special::{gamma_q_with_log, LN_2PI};

const LN_HALF: f64 = -std::f64::consts::LN_2;

/// ln Q(s) where Q is the upper tail of the standard normal. Uses
/// Q(s) = ½ Q_gamma(½, s²/2); the gamma continued fraction keeps full
/// relative accuracy however deep the tail.
pub fn normal_log_tail(s: f64) -> f64 {
    if s == 0.0 {
        return LN_HALF;
    }
    if s < 0.0 {
        // Q(s) = 1 − Q(−s) with Q(−s) ≤ 1/2: no cancellation worth chasing.
        let q_mirror = normal_log_tail(-s).exp();
        return (-q_mirror).ln_1p();
    }
    if s >= 1e154 {
        // s²/2 would overflow; the leading asymptotic term is exact to
        // double precision this deep.
        return -(0.5 * s) * s;
    }
    let (_, log_q_gamma) = gamma_q_with_log(0.5, 0.5 * s * s)
        .expect("gamma tail at a=1/2 converges for all finite arguments");
    LN_HALF + log_q_gamma
}

/// Upper-tail probability Q(s) of the standard normal.
pub fn normal_tail(s: f64) -> f64 {
    normal_log_tail(s).exp()
}

/// Inverse of the one-sided normal tail in log space: returns s ≥ 0 with
/// Q(s) = p given ln p. p ≥ 1/2 maps to 0 (no excess significance);
/// log_p = −∞ maps to +∞.
pub fn p_to_sigma(log_p: f64) -> f64 {
    debug_assert!(log_p <= 1e-9, "log_p must be ≤ 0, got {log_p}");
    if log_p >= LN_HALF {
        return 0.0;
    }
    if log_p == f64::NEG_INFINITY {
        return f64::INFINITY;
    }

    let u = -log_p;
    // Initial guess: for deep tails iterate the asymptotic
    // s² = 2(u − ln s − ½ln 2π), which starts above the root; Newton on the
    // concave ln Q then descends monotonically.
    let mut s = if u >= 2.0 {
        let mut s = (2.0 * u).sqrt();
        for _ in 0..3 {
            s = (2.0 * (u - s.ln() - 0.5 * LN_2PI)).max(1e-4).sqrt();
        }
        s
    } else {
        0.3
    };

    for _ in 0..60 {
        let g = normal_log_tail(s) - log_p;
        // d/ds ln Q = −hazard, hazard = φ(s)/Q(s).
        let ln_hazard = -0.5 * s * s - 0.5 * LN_2PI - normal_log_tail(s);
        let step = g * (-ln_hazard).exp();
        s += step;
        if s < 0.0 {
            s = 0.0;
        }
        if step.abs() <= 1e-14 * (1.0 + s) {
            break;
        }
    }
    s.max(0.0)
}
