//! The joint Poisson null model and its counter-based trial streams.

use crate::error::NullSimError;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use significance_core::CountObservation;

/// Null hypothesis: source counts ~ Poisson(μ), background counts
/// ~ Poisson(μ/α), independent, with α the source/background area ratio —
/// the same rate per unit area in both regions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NullModel {
    mu: f64,
    alpha: f64,
    seed: u64,
}

impl NullModel {
    pub fn new(mu: f64, alpha: f64, seed: u64) -> Result<Self, NullSimError> {
        // NaN fails the finiteness checks, so the comparisons can stay simple.
        if mu <= 0.0 || alpha <= 0.0 || !mu.is_finite() || !alpha.is_finite() {
            return Err(NullSimError::InvalidModel { mu, alpha });
        }
        Ok(NullModel { mu, alpha, seed })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Background-region rate μ/α.
    pub fn mu_bak(&self) -> f64 {
        self.mu / self.alpha
    }

    pub(crate) fn source_dist(&self) -> Poisson<f64> {
        Poisson::new(self.mu).expect("mu validated at construction")
    }

    pub(crate) fn background_dist(&self) -> Poisson<f64> {
        Poisson::new(self.mu_bak()).expect("mu/alpha validated at construction")
    }

    /// RNG for one logical trial: a fixed function of (seed, stream_index),
    /// so trial i is the same no matter which thread draws it or in what
    /// order.
    pub(crate) fn stream_rng(&self, stream_index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream_index);
        rng
    }
}

/// Draws one (N, B) pair from the trial stream `stream_index`: N first,
/// then B, sequentially from the same stream.
pub fn sample_counts(model: &NullModel, stream_index: u64) -> CountObservation {
    let mut rng = model.stream_rng(stream_index);
    let n = model.source_dist().sample(&mut rng) as u64;
    let b = model.background_dist().sample(&mut rng) as u64;
    CountObservation::new(n, b)
}
