// `(&big).pow(..)` picks the non-consuming Pow impl; dropping the borrow as
// clippy suggests moves the base and breaks later uses.
#![allow(clippy::needless_borrow)]

use num::traits::Pow;
use num::{BigInt, BigRational, One, Signed, Zero};

use crate::binomial::binom_exact;
use crate::error::OracleError;
use crate::rational::ExactRational;

/// Hard cap on series terms; reached only for f pathologically close to 1.
const TERM_BUDGET: u64 = 1 << 20;

/// Exact rational value of the binomial-tail p-value
/// Σ_{n=N}^{N+B} C(N+B,n) f^n (1-f)^(N+B-n).
pub fn p_lampton_exact(n_src: u64, n_bak: u64, f: &ExactRational) -> ExactRational {
    assert!(!f.is_negative() && f < &BigRational::one(), "f must be in [0,1)");
    let total = n_src + n_bak;
    let a = f.numer().clone();
    let d = f.denom().clone();
    let b = &d - &a;

    // Σ C(total,n) a^n b^(total-n) over n = N..total, all integer arithmetic.
    let mut bpow = vec![BigInt::one()];
    for _ in 0..n_bak {
        bpow.push(bpow.last().unwrap() * &b);
    }
    let mut c = binom_exact(total, n_src as i64);
    let mut apow = (&a).pow(n_src as u32);
    let mut sum = BigInt::zero();
    for n in n_src..=total {
        sum += &c * &apow * &bpow[(total - n) as usize];
        if n < total {
            c = c * (total - n) / (n + 1);
            apow *= &a;
        }
    }
    BigRational::new(sum, d.pow(total as u32))
}

/// Exact partial sum and remainder bound for the Bayes series
/// p = (1-f)^(B+1) Σ_{n=N}^∞ C(n+B,n) f^n.
#[derive(Debug, Clone)]
pub struct SeriesBracket {
    /// Partial sum through the last term taken, scaled by (1-f)^(B+1).
    pub partial: ExactRational,
    /// Geometric bound on the dropped tail, same scaling; the true series
    /// value provably lies in [partial, partial + remainder_bound].
    pub remainder_bound: ExactRational,
    /// Number of series terms accumulated.
    pub terms_used: u64,
}

/// Sums the series until the remainder bound drops below rel_tol × partial.
/// The stopping test is evaluated exactly, so the returned bracket is a
/// mathematical statement, not an approximation.
pub fn series_bracket(
    n_src: u64,
    n_bak: u64,
    f: &ExactRational,
    rel_tol: &ExactRational,
) -> Result<SeriesBracket, OracleError> {
    assert!(!f.is_negative() && f < &BigRational::one(), "f must be in [0,1)");
    assert!(rel_tol.is_positive(), "rel_tol must be positive");
    let a = f.numer().clone();
    let d = f.denom().clone();
    let b = &d - &a;
    let (rt_n, rt_d) = (rel_tol.numer().clone(), rel_tol.denom().clone());

    // u_n = C(n+B,n) a^n; Horner gives scaled_k = Σ_{n=N}^{k} u_n d^(k-n).
    let mut u = binom_exact(n_src + n_bak, n_src as i64) * (&a).pow(n_src as u32);
    let mut scaled = BigInt::zero();
    let mut k = n_src;
    loop {
        scaled = &scaled * &d + &u;
        // Advance u to u_(k+1) = u_k (k+B+1) a / (k+1); exact division.
        u = u * (k + n_bak + 1) * &a / (k + 1);

        // Stop once r_(k+1) = a(k+B+2)/(d(k+2)) < 1 and
        // bound = t_(k+1)/(1-r) ≤ rel_tol × partial, all compared exactly:
        //   u_(k+1)·(k+2)·rt_d ≤ rt_n·scaled·(d(k+2) − a(k+B+2)).
        let contraction = &d * (k + 2) - &a * (k + n_bak + 2);
        if contraction.is_positive()
            && &u * (k + 2) * &rt_d <= &rt_n * &scaled * &contraction
        {
            let terms_used = k - n_src + 1;
            let scale = b.pow(n_bak as u32 + 1);
            let partial = BigRational::new(&scale * scaled, (&d).pow((k + n_bak + 1) as u32));
            let remainder_bound = BigRational::new(
                scale * u * (k + 2) * &d,
                (&d).pow((k + n_bak + 2) as u32) * contraction,
            );
            return Ok(SeriesBracket { partial, remainder_bound, terms_used });
        }

        k += 1;
        if k - n_src >= TERM_BUDGET {
            let ratio_num = &a * (k + n_bak + 1);
            let ratio_den = &d * (k + 1);
            return if ratio_num >= ratio_den {
                Err(OracleError::RatioNotContracting {
                    k_max: k,
                    ratio: format!("{}", BigRational::new(ratio_num, ratio_den)),
                })
            } else {
                Err(OracleError::TermBudgetExceeded { budget: TERM_BUDGET })
            };
        }
    }
}

/// Verifies the equivalence theorem at one parameter point: the exact
/// binomial-tail value must lie inside the exact series bracket tightened to
/// rel_tol. Equality of the two expressions then follows to that tolerance.
pub fn equivalence_check(
    n_src: u64,
    n_bak: u64,
    f: &ExactRational,
    rel_tol: &ExactRational,
) -> Result<bool, OracleError> {
    assert!(f.is_positive() && f < &BigRational::one(), "f must be in (0,1)");
    let bracket = series_bracket(n_src, n_bak, f, rel_tol)?;
    let p = p_lampton_exact(n_src, n_bak, f);
    Ok(p >= bracket.partial && p <= &bracket.partial + &bracket.remainder_bound)
}
