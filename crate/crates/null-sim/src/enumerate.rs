//! Exhaustive conditional null: given N+B = total, the outcome is a
//! binomial partition, so the full p-value distribution is enumerable and
//! calibration can be checked exactly.

use significance_core::{binomial_pmf, p_lampton, CompensatedSum, CountObservation, RegionGeometry};

use crate::error::NullSimError;

/// Largest total for which enumeration is permitted.
pub const ENUMERATION_LIMIT: u64 = 2000;

/// Enumerates every outcome n = 0..=total of the conditional null,
/// returning (p-value, probability mass) pairs sorted by p ascending.
pub fn exact_null_distribution(
    total: u64,
    f: f64,
) -> Result<Vec<(f64, f64)>, NullSimError> {
    assert!(f > 0.0 && f < 1.0, "f must lie in (0,1)");
    if total > ENUMERATION_LIMIT {
        return Err(NullSimError::EnumerationTooLarge { total, limit: ENUMERATION_LIMIT });
    }
    let geom = RegionGeometry::from_fraction(f).expect("f validated above");
    let mut dist: Vec<(f64, f64)> = (0..=total)
        .map(|n| {
            let p = p_lampton(CountObservation::new(n, total - n), geom).p;
            (p, binomial_pmf(n, total, geom.f()))
        })
        .collect();
    dist.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(dist)
}

/// Exact calibration at achievable levels: for every achieved p-value ℓ,
/// the cumulative mass of outcomes with p ≤ ℓ must equal ℓ — within 1e-10
/// to absorb pmf rounding.
pub fn uniformity_check(dist: &[(f64, f64)]) -> bool {
    assert!(!dist.is_empty(), "distribution must be nonempty");
    let mut cum = CompensatedSum::new();
    let mut i = 0;
    while i < dist.len() {
        let level = dist[i].0;
        // Fold all outcomes sharing this level before comparing.
        while i < dist.len() && dist[i].0 == level {
            cum.add(dist[i].1);
            i += 1;
        }
        if (cum.total() - level).abs() > 1e-10 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_map_has_trivial_distribution() {
        let dist = exact_null_distribution(0, 0.3).unwrap();
        assert_eq!(dist, vec![(1.0, 1.0)]);
        assert!(uniformity_check(&dist));
    }

    #[test]
    fn two_outcome_enumeration() {
        // total=1, f=1/2: p(n=1) = f = 1/2 with mass 1/2; p(n=0) = 1 with
        // mass 1/2.
        let dist = exact_null_distribution(1, 0.5).unwrap();
        assert_eq!(dist, vec![(0.5, 0.5), (1.0, 0.5)]);
        assert!(uniformity_check(&dist));
    }

    #[test]
    fn masses_sum_to_one() {
        for &(total, f) in &[(2u64, 0.1), (100, 0.3), (500, 0.9), (2000, 0.5)] {
            let dist = exact_null_distribution(total, f).unwrap();
            assert_eq!(dist.len(), total as usize + 1);
            let mass: f64 = {
                let mut s = CompensatedSum::new();
                for &(_, m) in &dist {
                    s.add(m);
                }
                s.total()
            };
            assert!((mass - 1.0).abs() <= 1e-12, "total={total} f={f}: mass {mass}");
            assert!(dist.windows(2).all(|w| w[0].0 <= w[1].0), "sorted by p");
        }
    }

    #[test]
    fn exact_calibration_on_module_sweep() {
        for &total in &[2u64, 5, 10, 50, 200] {
            for &f in &[0.1, 0.3, 0.5, 0.9] {
                let dist = exact_null_distribution(total, f).unwrap();
                assert!(uniformity_check(&dist), "total={total} f={f}");
            }
        }
    }

    #[test]
    fn uniformity_check_rejects_corruption() {
        let mut dist = exact_null_distribution(10, 0.3).unwrap();
        dist[3].1 *= 1.5;
        assert!(!uniformity_check(&dist));
    }

    #[test]
    fn enumeration_bound_is_enforced() {
        assert!(exact_null_distribution(2000, 0.5).is_ok());
        match exact_null_distribution(2001, 0.5) {
            Err(NullSimError::EnumerationTooLarge { total: 2001, limit: 2000 }) => {}
            other => panic!("expected EnumerationTooLarge, got {other:?}"),
        }
    }
}
