// `(&big).pow(..)` picks the non-consuming Pow impl; dropping the borrow as
// clippy suggests moves the base and breaks later uses.
#![allow(clippy::needless_borrow)]

use num::traits::Pow;
use num::{BigInt, BigRational, One, Signed, Zero};

use crate::binomial::binom_exact;
use crate::error::OracleError;
use crate::rational::ExactRational;

/// Result of bracketing the Lemma 2 series f^n/(1-f)^(n+1) = Σ_k C(k,n) f^k.
#[derive(Debug, Clone)]
pub struct Lemma2Check {
    /// Exact partial sum Σ_{k=0}^{k_max} C(k,n) f^k.
    pub partial: ExactRational,
    /// Geometric bound on the dropped tail Σ_{k>k_max}; exact and provably
    /// not smaller than the true remainder.
    pub remainder_bound: ExactRational,
    /// True iff the closed form lies in [partial, partial + remainder_bound].
    pub holds: bool,
}

/// Pascal's identity C(a,b) + C(a,b+1) = C(a+1,b+1), checked exactly.
/// Valid for every integer `b` thanks to the out-of-range-is-zero convention.
pub fn lemma1_holds(a: u64, b: i64) -> bool {
    binom_exact(a, b) + binom_exact(a, b + 1) == binom_exact(a + 1, b + 1)
}

/// Brackets the series form of (the binomial theorem for) f^n/(1-f)^(n+1)
/// between the exact partial sum through k_max and that sum plus a geometric
/// remainder bound. The bound uses the term ratio at k_max+1,
/// r = f·(k_max+2)/(k_max+2-n), which majorizes every later ratio.
pub fn lemma2_partial_check(
    n: u64,
    f: &ExactRational,
    k_max: u64,
) -> Result<Lemma2Check, OracleError> {
    assert!(!f.is_negative() && f < &BigRational::one(), "f must be in [0,1)");
    assert!(k_max >= n, "k_max must be at least n");
    let a = f.numer().clone();
    let d = f.denom().clone();
    let b = &d - &a;

    // r = a(k_max+2) / (d(k_max+2-n)), required < 1 for the geometric bound.
    let ratio_num = &a * (k_max + 2);
    let ratio_den = &d * (k_max + 2 - n);
    if ratio_num >= ratio_den {
        return Err(OracleError::RatioNotContracting {
            k_max,
            ratio: format!("{}", BigRational::new(ratio_num, ratio_den)),
        });
    }

    // Horner accumulation of Σ_{k=n}^{k_max} u_k d^(k_max-k) with
    // u_k = C(k,n) a^k; terms below k=n are zero.
    let mut u = (&a).pow(n as u32); // u_n
    let mut scaled = BigInt::zero();
    for k in n..=k_max {
        scaled = scaled * &d + &u;
        u = u * (k + 1) * &a / (k + 1 - n);
    }
    let partial = BigRational::new(scaled, (&d).pow(k_max as u32));

    // bound = t_(k_max+1) / (1 - r) with t_(k_max+1) = u_(k_max+1)/d^(k_max+1).
    let one_minus_r_num = &ratio_den - &ratio_num;
    let remainder_bound =
        BigRational::new(u * ratio_den, (&d).pow(k_max as u32 + 1) * one_minus_r_num);

    // Closed form f^n/(1-f)^(n+1) = a^n d / b^(n+1).
    let left = BigRational::new(a.pow(n as u32) * d, b.pow(n as u32 + 1));

    let holds = left >= partial && left <= &partial + &remainder_bound;
    Ok(Lemma2Check { partial, remainder_bound, holds })
}

/// Vandermonde-style identity C(n+N+B, n+N) = Σ_{k=0}^{B} C(N+B,N+k) C(n,k),
/// checked exactly. Rows are generated by the multiplicative recurrence so a
/// full sweep stays cheap.
pub fn lemma3_holds(n_src: u64, n_bak: u64, n: u64) -> bool {
    let (nn, b) = (n_src, n_bak);
    let lhs = binom_exact(n + nn + b, (n + nn) as i64);

    // c1 = C(N+B, N+k), c2 = C(n, k); C(n,k) = 0 past k = n.
    let mut c1 = binom_exact(nn + b, nn as i64);
    let mut c2 = BigInt::one();
    let mut rhs = BigInt::zero();
    for k in 0..=b.min(n) {
        rhs += &c1 * &c2;
        if k < b.min(n) {
            c1 = c1 * (b - k) / (nn + k + 1);
            c2 = c2 * (n - k) / (k + 1);
        }
    }
    lhs == rhs
}

/// Poisson×binomial factorization: with the common factor e^(-μ-μ/α)
/// cancelled from both sides, checks
///   μ^N (μ/α)^B / (N! B!)  =  (μ+μ/α)^(N+B)/(N+B)! · C(N+B,N) ·
///                             (α/(1+α))^N (1/(1+α))^B
/// exactly in rational arithmetic.
pub fn factorization_check(
    n_src: u64,
    n_bak: u64,
    mu: &ExactRational,
    alpha: &ExactRational,
) -> bool {
    assert!(mu.is_positive(), "mu must be positive");
    assert!(alpha.is_positive(), "alpha must be positive");
    let (nn, b) = (n_src as i32, n_bak as i32);
    let one = BigRational::one();

    let mu_bak = mu / alpha;
    let lhs = mu.pow(nn) * (&mu_bak).pow(b)
        / BigRational::from(factorial(n_src) * factorial(n_bak));

    let one_plus_alpha = &one + alpha;
    let rhs = (mu + &mu_bak).pow(nn + b) / BigRational::from(factorial(n_src + n_bak))
        * BigRational::from(binom_exact(n_src + n_bak, n_src as i64))
        * (alpha / &one_plus_alpha).pow(nn)
        * (&one / &one_plus_alpha).pow(b);

    lhs == rhs
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}
