use std::fmt;

use rayon::prelude::*;

use crate::lemmas::{factorization_check, lemma1_holds, lemma2_partial_check, lemma3_holds};
use crate::pvalue::equivalence_check;
use crate::rational::ExactRational;

/// Identity under test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LemmaId {
    Lemma1,
    Lemma2,
    Lemma3,
    Theorem,
    Factorization,
}

impl fmt::Display for LemmaId {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            LemmaId::Lemma1 => "Lemma 1 (Pascal identity)",
            LemmaId::Lemma2 => "Lemma 2 (negative-binomial series)",
            LemmaId::Lemma3 => "Lemma 3 (coefficient convolution)",
            LemmaId::Theorem => "Theorem (tail = series)",
            LemmaId::Factorization => "Factorization (Poisson × binomial)",
        };
        out.write_str(name)
    }
}

/// Outcome of an exhaustive parameter sweep over one identity.
#[derive(Debug, Clone)]
pub struct LemmaReport {
    pub lemma_id: LemmaId,
    pub parameter_grid: String,
    pub cases_checked: u64,
    pub all_passed: bool,
    pub first_failure: Option<String>,
}

impl LemmaReport {
    /// `all_passed` is derived, keeping the invariant
    /// all_passed ⇔ first_failure is absent.
    fn from_outcome(
        lemma_id: LemmaId,
        parameter_grid: String,
        cases_checked: u64,
        first_failure: Option<String>,
    ) -> Self {
        LemmaReport {
            lemma_id,
            parameter_grid,
            cases_checked,
            all_passed: first_failure.is_none(),
            first_failure,
        }
    }
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(out, "{}", self.lemma_id)?;
        writeln!(out, "  grid:   {}", self.parameter_grid)?;
        writeln!(out, "  cases:  {}", self.cases_checked)?;
        match &self.first_failure {
            None => write!(out, "  result: PASS"),
            Some(fail) => write!(out, "  result: FAIL at {fail}"),
        }
    }
}

/// Row-parallel sweep driver: `rows` maps an outer index to
/// (cases checked in the row, first failure in the row). Row order fixes
/// which failure is reported, independent of thread scheduling.
fn sweep<F>(lemma_id: LemmaId, grid: String, outer: u64, rows: F) -> LemmaReport
where
    F: Fn(u64) -> (u64, Option<String>) + Sync + Send,
{
    let results: Vec<(u64, Option<String>)> = (0..outer).into_par_iter().map(rows).collect();
    let cases = results.iter().map(|(c, _)| c).sum();
    let first_failure = results.into_iter().find_map(|(_, f)| f);
    LemmaReport::from_outcome(lemma_id, grid, cases, first_failure)
}

/// Pascal identity over a ∈ [0, a_max], b ∈ [-2, a_max+2].
pub fn run_lemma1_sweep(a_max: u64) -> LemmaReport {
    let grid = format!("a in [0,{a_max}], b in [-2,{}]", a_max + 2);
    sweep(LemmaId::Lemma1, grid, a_max + 1, |a| {
        let mut checked = 0;
        for b in -2..=(a_max as i64 + 2) {
            checked += 1;
            if !lemma1_holds(a, b) {
                return (checked, Some(format!("(a={a}, b={b})")));
            }
        }
        (checked, None)
    })
}

/// Series bracketing of Lemma 2 over n ∈ [0, n_max] for each f, with the
/// partial sum truncated at k_max.
pub fn run_lemma2_sweep(n_max: u64, fs: &[ExactRational], k_max: u64) -> LemmaReport {
    let grid = format!("n in [0,{n_max}], {} values of f, k_max={k_max}", fs.len());
    sweep(LemmaId::Lemma2, grid, n_max + 1, |n| {
        let mut checked = 0;
        for f in fs {
            checked += 1;
            let ok = match lemma2_partial_check(n, f, k_max) {
                Ok(chk) => chk.holds,
                Err(_) => false,
            };
            if !ok {
                return (checked, Some(format!("(n={n}, f={f})")));
            }
        }
        (checked, None)
    })
}

/// Convolution identity over (N, B, n) ∈ [0, max]³.
pub fn run_lemma3_sweep(max: u64) -> LemmaReport {
    let grid = format!("(N,B,n) in [0,{max}]^3");
    sweep(LemmaId::Lemma3, grid, max + 1, |n_src| {
        let mut checked = 0;
        for n_bak in 0..=max {
            for n in 0..=max {
                checked += 1;
                if !lemma3_holds(n_src, n_bak, n) {
                    return (checked, Some(format!("(N={n_src}, B={n_bak}, n={n})")));
                }
            }
        }
        (checked, None)
    })
}

/// Equivalence theorem over (N, B) ∈ [0, nb_max]² for each f.
pub fn run_theorem_sweep(nb_max: u64, fs: &[ExactRational], rel_tol: &ExactRational) -> LemmaReport {
    let grid = format!("(N,B) in [0,{nb_max}]^2, {} values of f, rel_tol={rel_tol}", fs.len());
    sweep(LemmaId::Theorem, grid, nb_max + 1, |n_src| {
        let mut checked = 0;
        for n_bak in 0..=nb_max {
            for f in fs {
                checked += 1;
                let ok = matches!(equivalence_check(n_src, n_bak, f, rel_tol), Ok(true));
                if !ok {
                    return (checked, Some(format!("(N={n_src}, B={n_bak}, f={f})")));
                }
            }
        }
        (checked, None)
    })
}

/// Factorization identity over (N, B) ∈ [0, nb_max]² × mus × alphas.
pub fn run_factorization_sweep(
    nb_max: u64,
    mus: &[ExactRational],
    alphas: &[ExactRational],
) -> LemmaReport {
    let grid = format!(
        "(N,B) in [0,{nb_max}]^2, {} values of mu, {} of alpha",
        mus.len(),
        alphas.len()
    );
    sweep(LemmaId::Factorization, grid, nb_max + 1, |n_src| {
        let mut checked = 0;
        for n_bak in 0..=nb_max {
            for mu in mus {
                for alpha in alphas {
                    checked += 1;
                    if !factorization_check(n_src, n_bak, mu, alpha) {
                        return (
                            checked,
                            Some(format!("(N={n_src}, B={n_bak}, mu={mu}, alpha={alpha})")),
                        );
                    }
                }
            }
        }
        (checked, None)
    })
}
