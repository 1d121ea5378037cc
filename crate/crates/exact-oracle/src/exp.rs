use num::{BigRational, One, Signed, Zero};

use crate::rational::ExactRational;

/// Brackets e^x for rational x ≥ 0 between two exact rationals:
/// returns (lo, hi) with lo ≤ e^x ≤ hi and hi − lo ≤ rel_tol × lo.
/// Taylor terms are summed exactly; the dropped tail is covered by the
/// geometric bound t_(K+1)/(1 − x/(K+2)) once K+2 > x.
pub fn exp_bracket(x: &ExactRational, rel_tol: &ExactRational) -> (ExactRational, ExactRational) {
    assert!(!x.is_negative(), "exp_bracket requires x >= 0");
    assert!(rel_tol.is_positive());
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    let mut k: u64 = 0;
    loop {
        term = term * x / BigRational::from_integer((k + 1).into());
        sum += &term;
        k += 1;
        // Next term is term·x/(k+1); the tail is geometric with ratio
        // x/(k+2) once that ratio is below 1.
        let ratio = x / BigRational::from_integer((k + 2).into());
        if ratio < BigRational::one() {
            let next = &term * x / BigRational::from_integer((k + 1).into());
            let bound = &next / (BigRational::one() - ratio);
            if bound <= rel_tol * &sum {
                return (sum.clone(), sum + bound);
            }
        }
    }
}

/// Brackets the Poisson pmf μ^n e^(-μ)/n! between exact rationals.
pub fn poisson_pmf_bracket(
    n: u64,
    mu: &ExactRational,
    rel_tol: &ExactRational,
) -> (ExactRational, ExactRational) {
    let (elo, ehi) = exp_bracket(mu, rel_tol);
    let coeff = pow_over_factorial(mu, n);
    // e^(-μ) ∈ [1/ehi, 1/elo].
    (&coeff / ehi, coeff / elo)
}

/// Brackets the Poisson tail Σ_{n≥n_min} μ^n e^(-μ)/n! between exact
/// rationals (lo ≤ tail ≤ hi).
pub fn poisson_tail_bracket(
    n_min: u64,
    mu: &ExactRational,
    rel_tol: &ExactRational,
) -> (ExactRational, ExactRational) {
    assert!(!mu.is_negative());
    if mu.is_zero() {
        let v = if n_min == 0 { BigRational::one() } else { BigRational::zero() };
        return (v.clone(), v);
    }
    // Partial sum of μ^n/n! from n_min with its own geometric tail bound.
    let mut term = pow_over_factorial(mu, n_min);
    let mut sum = term.clone();
    let mut n = n_min;
    let (raw_sum, raw_bound) = loop {
        n += 1;
        let ratio = mu / BigRational::from_integer((n + 1).into());
        if ratio < BigRational::one() {
            let next = &term * mu / BigRational::from_integer(n.into());
            let bound = &next / (BigRational::one() - ratio);
            if bound <= rel_tol * &sum {
                break (sum, bound);
            }
        }
        term = term * mu / BigRational::from_integer(n.into());
        sum += &term;
    };
    let (elo, ehi) = exp_bracket(mu, rel_tol);
    (&raw_sum / ehi, (raw_sum + raw_bound) / elo)
}

fn pow_over_factorial(x: &ExactRational, n: u64) -> ExactRational {
    let mut v = BigRational::one();
    for k in 1..=n {
        v = v * x / BigRational::from_integer(k.into());
    }
    v
}
