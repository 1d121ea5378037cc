use std::io::{self, Write};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use significance_core::{p_lampton, p_to_sigma, CountObservation, RegionGeometry};

use crate::aperture::{ApertureSpec, RegionOffsets};
use crate::error::ScanError;
use crate::map::CountMap;

/// One scanned pixel: counts in the two clipped regions, the area fraction
/// actually used, and the resulting significance. `f` is recomputed per
/// pixel from the clipped pixel counts, so edge records stay exact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectionRecord {
    pub x: usize,
    pub y: usize,
    pub n_src: u64,
    pub n_bak: u64,
    pub f: f64,
    pub p: f64,
    pub log_p: f64,
    pub sigma: f64,
}

/// Scans every pixel, keeping those whose clipped background annulus holds
/// at least `min_bak_pixels` pixels. Output is row-major (y, then x) no
/// matter how the rows are scheduled across threads.
pub fn scan(map: &CountMap, spec: &ApertureSpec, min_bak_pixels: usize) -> Vec<DetectionRecord> {
    assert!(min_bak_pixels >= 1, "min_bak_pixels must be positive");
    let offsets = RegionOffsets::new(spec);
    let rows: Vec<Vec<DetectionRecord>> = (0..map.height())
        .into_par_iter()
        .map(|y| {
            let mut row = Vec::new();
            for x in 0..map.width() {
                let (n_src, src_px, n_bak, bak_px) = offsets.tally(map, x, y);
                if bak_px < min_bak_pixels {
                    continue;
                }
                // src always holds the center pixel, so the geometry is valid.
                let geom = RegionGeometry::new(src_px as f64, bak_px as f64)
                    .expect("pixel counts are positive");
                let r = p_lampton(CountObservation::new(n_src, n_bak), geom);
                row.push(DetectionRecord {
                    x,
                    y,
                    n_src,
                    n_bak,
                    f: geom.f(),
                    p: r.p,
                    log_p: r.log_p,
                    sigma: r.sigma,
                });
            }
            row
        })
        .collect();
    rows.into_iter().flatten().collect()
}

/// Keeps records at or above `sigma_min`, strongest first; equal sigmas
/// fall back to row-major (y, then x) order so output is a total order.
pub fn threshold_detections(records: &[DetectionRecord], sigma_min: f64) -> Vec<DetectionRecord> {
    let mut kept: Vec<DetectionRecord> = records
        .iter()
        .filter(|r| r.sigma >= sigma_min)
        .copied()
        .collect();
    kept.sort_by(|a, b| {
        b.sigma
            .total_cmp(&a.sigma)
            .then_with(|| (a.y, a.x).cmp(&(b.y, b.x)))
    });
    kept
}

/// Bonferroni-style correction for the number of apertures tried: p is
/// multiplied by `factor` and capped at 1, and log_p/sigma are recomputed
/// from the corrected value so the three stay consistent.
pub fn apply_trials_factor(records: &mut [DetectionRecord], factor: u64) {
    assert!(factor >= 1, "trials factor must be positive");
    if factor == 1 {
        return;
    }
    let ln_k = (factor as f64).ln();
    for r in records.iter_mut() {
        let log_p = (r.log_p + ln_k).min(0.0);
        r.log_p = log_p;
        r.p = (r.p * factor as f64).min(1.0);
        r.sigma = p_to_sigma(log_p);
    }
}

/// Formats with 17 significant digits, enough for exact f64 round-trips.
fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_csv<W: Write>(records: &[DetectionRecord], out: &mut W) -> io::Result<()> {
    writeln!(out, "x,y,n_src,n_bak,f,p,log_p,sigma")?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.x,
            r.y,
            r.n_src,
            r.n_bak,
            fmt_float(r.f),
            fmt_float(r.p),
            fmt_float(r.log_p),
            fmt_float(r.sigma),
        )?;
    }
    Ok(())
}

/// Re-prices `samples` randomly chosen records in exact rational arithmetic
/// and demands 1e-12 relative agreement. The rational area fraction is
/// rebuilt from the clipped pixel counts at each record's center.
pub fn spot_check(
    map: &CountMap,
    spec: &ApertureSpec,
    records: &[DetectionRecord],
    seed: u64,
    samples: usize,
) -> Result<(), ScanError> {
    if records.is_empty() {
        return Ok(());
    }
    let offsets = RegionOffsets::new(spec);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let r = &records[rng.random_range(0..records.len())];
        let (n_src, src_px, n_bak, bak_px) = offsets.tally(map, r.x, r.y);
        debug_assert_eq!((n_src, n_bak), (r.n_src, r.n_bak));
        let f = exact_oracle::ratio(src_px as i64, (src_px + bak_px) as i64);
        let exact = exact_oracle::p_lampton_exact(n_src, n_bak, &f);
        let want = exact_oracle::to_f64_lossy(&exact);
        let ok = if want > 1e-300 {
            (r.p - want).abs() <= 1e-12 * want
        } else {
            let ln_want = exact_oracle::ln_rational(&exact);
            (r.log_p - ln_want).abs() <= 1e-12 * ln_want.abs()
        };
        if !ok {
            return Err(ScanError::SpotCheckMismatch {
                x: r.x,
                y: r.y,
                got: r.p,
                want,
            });
        }
    }
    Ok(())
}
