//! Synthetic count-map construction: flat Poisson background plus an
//! injected point source, for end-to-end scanner tests.

use rand_distr::Distribution;

use crate::model::NullModel;

/// Row-major width×height grid of independent Poisson(μ) counts. One RNG
/// stream per row (stream index = row), so the map is a pure function of
/// (seed, dimensions, μ).
pub fn sample_poisson_grid(width: usize, height: usize, mu: f64, seed: u64) -> Vec<u64> {
    assert!(width > 0 && height > 0, "grid must be non-empty");
    let model = NullModel::new(mu, 1.0, seed).expect("mu must be positive");
    let dist = model.source_dist();
    let mut cells = Vec::with_capacity(width * height);
    for y in 0..height {
        let mut rng = model.stream_rng(y as u64);
        cells.extend((0..width).map(|_| dist.sample(&mut rng) as u64));
    }
    cells
}

/// Adds `count` counts to the pixels whose centers lie within `radius` of
/// (cx, cy), spread one at a time in row-major round-robin order —
/// deterministic, and as even as an integer split can be.
pub fn inject_disk_counts(
    cells: &mut [u64],
    width: usize,
    cx: f64,
    cy: f64,
    radius: f64,
    count: u64,
) {
    assert!(radius >= 0.0);
    let height = cells.len() / width;
    assert_eq!(cells.len(), width * height, "cells must be a full grid");
    let mut disk = Vec::new();
    for y in 0..height {
        for x in 0..width {
            let (dx, dy) = (x as f64 - cx, y as f64 - cy);
            if (dx * dx + dy * dy).sqrt() <= radius {
                disk.push(y * width + x);
            }
        }
    }
    assert!(!disk.is_empty(), "no pixel center falls inside the disk");
    for i in 0..count {
        cells[disk[(i % disk.len() as u64) as usize]] += 1;
    }
}
