use std::fmt;

use serde::{Deserialize, Serialize};

use crate::level_gen::BehaviorDescriptor;

/// Bins per behavior feature.
pub const BINS: u8 = 10;

/// Closed range a feature is clamped into before binning.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FeatureRange {
    pub min: f64,
    pub max: f64,
}

impl FeatureRange {
    fn bin(&self, v: f64) -> u8 {
        let t = ((v - self.min) / (self.max - self.min)).clamp(0.0, 1.0);
        ((t * f64::from(BINS)).floor() as u8).min(BINS - 1)
    }

    fn centre(&self, bin: u8) -> f64 {
        self.min + (f64::from(bin) + 0.5) * (self.max - self.min) / f64::from(BINS)
    }

    /// Rescales `v` so the range maps onto [0, 1].
    pub fn normalize(&self, v: f64) -> f64 {
        (v - self.min) / (self.max - self.min)
    }
}

pub const COVERAGE_RANGE: FeatureRange = FeatureRange { min: 0.0, max: 1.0 };
pub const LENIENCY_RANGE: FeatureRange = FeatureRange { min: 0.0, max: 9.0 };
pub const REACHABILITY_RANGE: FeatureRange = FeatureRange { min: 2.0, max: 40.0 };

/// (coverage bin, leniency bin, reachability bin).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CellId(pub [u8; 3]);

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "{a}-{b}-{c}")
    }
}

/// Behavior-space coordinates of a cell's centre.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Centroid {
    pub coverage: f64,
    pub leniency: f64,
    pub reachability: f64,
}

/// Clamps each feature into its range and bins it. Leniency gets one bin
/// per enemy count, with nine or more enemies sharing the last bin.
pub fn cell_index(d: &BehaviorDescriptor) -> CellId {
    CellId([
        COVERAGE_RANGE.bin(d.coverage),
        d.leniency.min(u32::from(BINS - 1)) as u8,
        REACHABILITY_RANGE.bin(f64::from(d.reachability)),
    ])
}

impl CellId {
    pub fn centroid(&self) -> Centroid {
        let [c, l, r] = self.0;
        Centroid {
            coverage: COVERAGE_RANGE.centre(c),
            leniency: f64::from(l),
            reachability: REACHABILITY_RANGE.centre(r),
        }
    }

    /// Centroid with every feature rescaled to [0, 1] by its range; this is
    /// the input space of the Gaussian process.
    pub fn unit_point(&self) -> [f64; 3] {
        let c = self.centroid();
        [
            COVERAGE_RANGE.normalize(c.coverage),
            LENIENCY_RANGE.normalize(c.leniency),
            REACHABILITY_RANGE.normalize(c.reachability),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(coverage: f64, leniency: u32, reachability: u32) -> BehaviorDescriptor {
        BehaviorDescriptor {
            coverage,
            leniency,
            reachability,
        }
    }

    #[test]
    fn range_extremes() {
        assert_eq!(cell_index(&d(0.0, 0, 2)), CellId([0, 0, 0]));
        assert_eq!(cell_index(&d(1.0, 9, 40)), CellId([9, 9, 9]));
        assert_eq!(cell_index(&d(0.5, 12, 100)), CellId([5, 9, 9]));
    }

    #[test]
    fn bin_edges() {
        assert_eq!(cell_index(&d(0.0999, 3, 5)).0, [0, 3, 0]);
        assert_eq!(cell_index(&d(0.1, 3, 6)).0, [1, 3, 1]);
        // 2 + 3.8 * 9 = 36.2
        assert_eq!(cell_index(&d(0.95, 0, 36)).0, [9, 0, 8]);
        assert_eq!(cell_index(&d(0.95, 0, 37)).0, [9, 0, 9]);
    }

    #[test]
    fn centroids_fall_in_their_cell() {
        for c in 0..BINS {
            for l in 0..BINS {
                for r in 0..BINS {
                    let id = CellId([c, l, r]);
                    let cen = id.centroid();
                    assert_eq!(COVERAGE_RANGE.bin(cen.coverage), c);
                    assert_eq!(REACHABILITY_RANGE.bin(cen.reachability), r);
                    assert_eq!(cen.leniency, f64::from(l));
                    assert!(id.unit_point().iter().all(|x| (0.0..=1.0).contains(x)));
                }
            }
        }
    }
}
