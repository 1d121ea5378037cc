use crate::error::ScanError;
use crate::map::CountMap;

/// Circular source aperture plus background annulus, in pixel units.
/// Invariant: 0 < r_src <= r_in < r_out, all finite, so the two regions
/// can never share a pixel (a gap between r_src and r_in acts as a guard
/// ring and is simply ignored).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApertureSpec {
    r_src: f64,
    r_in: f64,
    r_out: f64,
}

impl ApertureSpec {
    pub fn new(r_src: f64, r_in: f64, r_out: f64) -> Result<Self, ScanError> {
        let ok = r_src.is_finite()
            && r_in.is_finite()
            && r_out.is_finite()
            && r_src > 0.0
            && r_src <= r_in
            && r_in < r_out;
        if !ok {
            return Err(ScanError::InvalidAperture { r_src, r_in, r_out });
        }
        Ok(ApertureSpec { r_src, r_in, r_out })
    }

    pub fn r_src(&self) -> f64 {
        self.r_src
    }

    pub fn r_in(&self) -> f64 {
        self.r_in
    }

    pub fn r_out(&self) -> f64 {
        self.r_out
    }
}

/// Membership is center-in-disk: pixel (x, y) lies in a disk of radius r
/// around (cx, cy) iff (x-cx)^2 + (y-cy)^2 <= r^2. The source region is the
/// r_src disk; the background is the annulus r_in < d <= r_out. Both are
/// clipped to the map, so callers must recompute the area fraction from the
/// pixel counts actually returned.
#[derive(Debug, Clone)]
pub struct RegionOffsets {
    src: Vec<(i64, i64)>,
    bak: Vec<(i64, i64)>,
}

impl RegionOffsets {
    pub fn new(spec: &ApertureSpec) -> Self {
        let r = spec.r_out().ceil() as i64;
        let src_r2 = spec.r_src() * spec.r_src();
        let in_r2 = spec.r_in() * spec.r_in();
        let out_r2 = spec.r_out() * spec.r_out();
        let mut src = Vec::new();
        let mut bak = Vec::new();
        for dy in -r..=r {
            for dx in -r..=r {
                let d2 = (dx * dx + dy * dy) as f64;
                if d2 <= src_r2 {
                    src.push((dx, dy));
                } else if d2 > in_r2 && d2 <= out_r2 {
                    bak.push((dx, dy));
                }
            }
        }
        RegionOffsets { src, bak }
    }

    pub fn src_len(&self) -> usize {
        self.src.len()
    }

    /// Counts events and pixels in both clipped regions around (cx, cy).
    /// Returns (n_src, src_pixels, n_bak, bak_pixels).
    pub fn tally(&self, map: &CountMap, cx: usize, cy: usize) -> (u64, usize, u64, usize) {
        let (n_src, src_pixels) = tally_one(&self.src, map, cx, cy);
        let (n_bak, bak_pixels) = tally_one(&self.bak, map, cx, cy);
        (n_src, src_pixels, n_bak, bak_pixels)
    }
}

fn tally_one(offsets: &[(i64, i64)], map: &CountMap, cx: usize, cy: usize) -> (u64, usize) {
    let (w, h) = (map.width() as i64, map.height() as i64);
    let mut events = 0u64;
    let mut pixels = 0usize;
    for &(dx, dy) in offsets {
        let x = cx as i64 + dx;
        let y = cy as i64 + dy;
        if x >= 0 && x < w && y >= 0 && y < h {
            events += map.get(x as usize, y as usize);
            pixels += 1;
        }
    }
    (events, pixels)
}

/// Pixel coordinates as (x, y) pairs.
pub type PixelList = Vec<(usize, usize)>;

/// Explicit pixel lists for the source disk and background annulus around
/// (cx, cy), clipped to a width x height map, each in row-major order.
pub fn pixel_regions(
    width: usize,
    height: usize,
    cx: usize,
    cy: usize,
    spec: &ApertureSpec,
) -> (PixelList, PixelList) {
    assert!(cx < width && cy < height, "center out of bounds");
    let offsets = RegionOffsets::new(spec);
    let clip = |list: &[(i64, i64)]| {
        let mut out: PixelList = list
            .iter()
            .filter_map(|&(dx, dy)| {
                let x = cx as i64 + dx;
                let y = cy as i64 + dy;
                (x >= 0 && x < width as i64 && y >= 0 && y < height as i64)
                    .then_some((x as usize, y as usize))
            })
            .collect();
        out.sort_by_key(|&(x, y)| (y, x));
        out
    };
    (clip(&offsets.src), clip(&offsets.bak))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(
        width: usize,
        height: usize,
        cx: usize,
        cy: usize,
        spec: &ApertureSpec,
    ) -> (PixelList, PixelList) {
        let mut src = Vec::new();
        let mut bak = Vec::new();
        for y in 0..height {
            for x in 0..width {
                let dx = x as f64 - cx as f64;
                let dy = y as f64 - cy as f64;
                let d2 = dx * dx + dy * dy;
                if d2 <= spec.r_src() * spec.r_src() {
                    src.push((x, y));
                } else if d2 > spec.r_in() * spec.r_in() && d2 <= spec.r_out() * spec.r_out() {
                    bak.push((x, y));
                }
            }
        }
        (src, bak)
    }

    #[test]
    fn validation_enforces_radius_ordering() {
        assert!(ApertureSpec::new(0.5, 3.0, 6.0).is_ok());
        assert!(ApertureSpec::new(3.0, 3.0, 6.0).is_ok());
        for (s, i, o) in [
            (0.0, 3.0, 6.0),
            (-1.0, 3.0, 6.0),
            (4.0, 3.0, 6.0),
            (2.0, 6.0, 6.0),
            (2.0, 6.0, 3.0),
            (f64::NAN, 3.0, 6.0),
            (2.0, 3.0, f64::INFINITY),
        ] {
            assert!(
                matches!(
                    ApertureSpec::new(s, i, o),
                    Err(ScanError::InvalidAperture { .. })
                ),
                "accepted ({s}, {i}, {o})"
            );
        }
    }

    #[test]
    fn matches_brute_force_on_interior_and_clipped_centers() {
        let spec = ApertureSpec::new(2.0, 3.0, 6.0).unwrap();
        for &(cx, cy) in &[
            (10usize, 10usize), // fully interior
            (0, 0),             // corner: hard clipping
            (31, 19),           // opposite corner
            (0, 10),            // edge
            (31, 3),
        ] {
            let (src, bak) = pixel_regions(32, 20, cx, cy, &spec);
            let (want_src, want_bak) = brute_force(32, 20, cx, cy, &spec);
            assert_eq!(src, want_src, "src at ({cx}, {cy})");
            assert_eq!(bak, want_bak, "bak at ({cx}, {cy})");
        }
    }

    #[test]
    fn interior_disk_of_radius_two_has_thirteen_pixels() {
        let spec = ApertureSpec::new(2.0, 3.0, 6.0).unwrap();
        let (src, bak) = pixel_regions(32, 20, 10, 10, &spec);
        assert_eq!(src.len(), 13);
        // Annulus 3 < d <= 6: every pixel is in exactly one region.
        for p in &src {
            assert!(!bak.contains(p));
        }
        // pi * (36 - 9) ~ 85; the integer-center count is exact and fixed.
        let brute = brute_force(32, 20, 10, 10, &spec).1.len();
        assert_eq!(bak.len(), brute);
    }

    #[test]
    fn half_pixel_source_radius_selects_only_the_center() {
        let spec = ApertureSpec::new(0.5, 1.0, 2.0).unwrap();
        let (src, _) = pixel_regions(8, 8, 4, 4, &spec);
        assert_eq!(src, vec![(4, 4)]);
        let (src, _) = pixel_regions(8, 8, 0, 0, &spec);
        assert_eq!(src, vec![(0, 0)]);
    }

    #[test]
    fn tally_agrees_with_pixel_lists() {
        let width = 16;
        let height = 12;
        let cells: Vec<u64> = (0..width * height).map(|i| (i % 7) as u64).collect();
        let map = CountMap::new(width, height, cells);
        let spec = ApertureSpec::new(1.5, 2.0, 4.0).unwrap();
        let offsets = RegionOffsets::new(&spec);
        for &(cx, cy) in &[(0usize, 0usize), (5, 5), (15, 11), (8, 0)] {
            let (n_src, s_px, n_bak, b_px) = offsets.tally(&map, cx, cy);
            let (src, bak) = pixel_regions(width, height, cx, cy, &spec);
            assert_eq!(s_px, src.len());
            assert_eq!(b_px, bak.len());
            assert_eq!(n_src, src.iter().map(|&(x, y)| map.get(x, y)).sum::<u64>());
            assert_eq!(n_bak, bak.iter().map(|&(x, y)| map.get(x, y)).sum::<u64>());
        }
    }
}
