//! Count-map scanning on top of the significance library: load a CSV count
//! map, slide a source disk + background annulus over every pixel, and
//! price each pixel's excess with the exact binomial tail. Also hosts the
//! verification entry points the `scan` binary exposes (single p-values,
//! exact-arithmetic lemma sweeps, Monte Carlo calibration).
//!
//! Scans are deterministic: records come out row-major and byte-identical
//! regardless of thread count.

pub mod aperture;
pub mod error;
pub mod map;
pub mod report;
pub mod scan;

pub use aperture::{pixel_regions, ApertureSpec, PixelList, RegionOffsets};
pub use error::ScanError;
pub use map::{load_map, parse_map, CountMap};
pub use report::{calibration_records, lemma_record};
pub use scan::{
    apply_trials_factor, scan, spot_check, threshold_detections, write_csv, DetectionRecord,
};
