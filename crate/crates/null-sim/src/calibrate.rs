//! Monte Carlo super-uniformity: under the null, P(p ≤ t) ≤ t.

use std::collections::HashMap;
use std::fmt;

use rand_distr::Distribution;
use rayon::prelude::*;
use significance_core::{p_lampton, CountObservation, RegionGeometry};

use crate::model::{sample_counts, NullModel};

/// Result of a calibration run: one row per threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationReport {
    pub trials: u64,
    pub thresholds: Vec<f64>,
    pub empirical_rates: Vec<f64>,
    pub binomial_3sigma: Vec<f64>,
    pub passed: bool,
}

impl CalibrationReport {
    /// Derives the 3σ binomial bands and the pass flag; the check is
    /// one-sided (discreteness guarantees rates dip below the threshold,
    /// only excesses falsify super-uniformity).
    pub fn new(trials: u64, thresholds: Vec<f64>, empirical_rates: Vec<f64>) -> Self {
        assert_eq!(thresholds.len(), empirical_rates.len());
        assert!(trials > 0);
        let binomial_3sigma: Vec<f64> = thresholds
            .iter()
            .map(|&t| 3.0 * (t * (1.0 - t) / trials as f64).sqrt())
            .collect();
        let passed = thresholds
            .iter()
            .zip(&empirical_rates)
            .zip(&binomial_3sigma)
            .all(|((&t, &rate), &band)| rate <= t + band);
        CalibrationReport { trials, thresholds, empirical_rates, binomial_3sigma, passed }
    }
}

impl fmt::Display for CalibrationReport {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(out, "calibration over {} trials", self.trials)?;
        writeln!(out, "  {:>10}  {:>12}  {:>10}  status", "threshold", "empirical", "3sigma")?;
        for i in 0..self.thresholds.len() {
            let ok = self.empirical_rates[i] <= self.thresholds[i] + self.binomial_3sigma[i];
            writeln!(
                out,
                "  {:>10.6}  {:>12.6e}  {:>10.3e}  {}",
                self.thresholds[i],
                self.empirical_rates[i],
                self.binomial_3sigma[i],
                if ok { "ok" } else { "EXCESS" }
            )?;
        }
        write!(out, "  result: {}", if self.passed { "PASS" } else { "FAIL" })
    }
}

/// Runs `trials` null draws, computes p = p_lampton with f = α/(1+α) for
/// each, and reports the fraction at or below each threshold.
///
/// Trials are tallied into (N, B) multiplicity bins in parallel chunks
/// (stream index = trial index, so the draw set is independent of the
/// chunking), and each distinct pair is priced exactly once.
pub fn calibrate(model: &NullModel, trials: u64, thresholds: &[f64]) -> CalibrationReport {
    assert!(trials > 0, "trials must be positive");
    assert!(
        thresholds.iter().all(|t| (0.0..1.0).contains(t) && *t > 0.0),
        "thresholds must lie in (0,1)"
    );

    const CHUNK: u64 = 65_536;
    let n_chunks = trials.div_ceil(CHUNK);
    let counts: HashMap<(u64, u64), u64> = (0..n_chunks)
        .into_par_iter()
        .map(|chunk| {
            let source = model.source_dist();
            let background = model.background_dist();
            let lo = chunk * CHUNK;
            let hi = (lo + CHUNK).min(trials);
            let mut local: HashMap<(u64, u64), u64> = HashMap::new();
            for trial in lo..hi {
                let mut rng = model.stream_rng(trial);
                let n = source.sample(&mut rng) as u64;
                let b = background.sample(&mut rng) as u64;
                *local.entry((n, b)).or_insert(0) += 1;
            }
            local
        })
        .reduce(HashMap::new, |mut acc, local| {
            for (pair, count) in local {
                *acc.entry(pair).or_insert(0) += count;
            }
            acc
        });

    // Price each distinct observation once, then read rates off the sorted
    // cumulative counts.
    let geom = RegionGeometry::new(model.alpha(), 1.0).expect("alpha > 0 by construction");
    let mut priced: Vec<(f64, u64)> = counts
        .into_iter()
        .map(|((n, b), count)| (p_lampton(CountObservation::new(n, b), geom).p, count))
        .collect();
    priced.sort_by(|a, b| a.0.total_cmp(&b.0));

    let empirical_rates = thresholds
        .iter()
        .map(|&t| {
            let below: u64 =
                priced.iter().take_while(|(p, _)| *p <= t).map(|(_, c)| *c).sum();
            below as f64 / trials as f64
        })
        .collect();
    CalibrationReport::new(trials, thresholds.to_vec(), empirical_rates)
}

/// One-trial sanity hook used by tests: the p-value the calibration loop
/// assigns to trial `index`.
pub fn trial_p_value(model: &NullModel, index: u64) -> f64 {
    let geom = RegionGeometry::new(model.alpha(), 1.0).expect("alpha > 0 by construction");
    p_lampton(sample_counts(model, index), geom).p
}
