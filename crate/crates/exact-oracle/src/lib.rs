//! Arbitrary-precision ground truth for Poisson-limited source significance.
//!
//! Everything here runs in exact integer/rational arithmetic (`num::BigInt`,
//! `num::BigRational`), so a passing check is a statement about the
//! mathematics, not about floating-point luck. The crate verifies the three
//! binomial-coefficient lemmas behind the tail/series equivalence, brackets
//! the infinite Bayes series between an exact partial sum and a proven
//! geometric remainder bound, checks the Poisson×binomial factorization
//! identity, and exposes exact reference values that the floating-point
//! library is tested against.

mod binomial;
mod error;
mod exp;
mod lemmas;
mod pvalue;
mod rational;
mod report;

pub use binomial::binom_exact;
pub use error::OracleError;
pub use exp::{exp_bracket, poisson_pmf_bracket, poisson_tail_bracket};
pub use lemmas::{factorization_check, lemma1_holds, lemma2_partial_check, lemma3_holds, Lemma2Check};
pub use pvalue::{equivalence_check, p_lampton_exact, series_bracket, SeriesBracket};
pub use rational::{ln_rational, ratio, ratio_from_f64, to_f64_lossy, ExactRational};
pub use report::{
    run_factorization_sweep, run_lemma1_sweep, run_lemma2_sweep, run_lemma3_sweep,
    run_theorem_sweep, LemmaId, LemmaReport,
};
