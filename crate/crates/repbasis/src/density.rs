//! Counting functions and empirical density profiles.
//!
//! Asymptotic density is not decidable from finite data, so nothing here
//! proves density zero; profiles are diagnostics. A zero-set description
//! whose ratios refuse to fall is the usual culprit behind an exhausted
//! augmentation search.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{IntSet, ZeroSetSpec};

/// Anything whose members in a closed interval can be counted exactly.
pub trait Countable {
    fn count_between(&self, x1: i64, x2: i64) -> u64;
}

impl Countable for IntSet {
    fn count_between(&self, x1: i64, x2: i64) -> u64 {
        IntSet::count_between(self, x1, x2)
    }
}

impl Countable for ZeroSetSpec {
    fn count_between(&self, x1: i64, x2: i64) -> u64 {
        ZeroSetSpec::count_between(self, x1, x2)
    }
}

/// Number of members in [x1, x2]; 0 when the interval is empty.
pub fn counting_function<S: Countable + ?Sized>(s: &S, x1: i64, x2: i64) -> u64 {
    s.count_between(x1, x2)
}

/// Exact counts and ratios count(-x, x) / (2x + 1) at increasing radii.
#[derive(Debug, Clone, Serialize)]
pub struct DensityProfile {
    pub radii: Vec<i64>,
    pub counts: Vec<u64>,
    pub ratios: Vec<f64>,
    /// Whether the ratio sequence never rises; reported, not enforced.
    pub monotone_nonincreasing: bool,
}

impl DensityProfile {
    /// CSV rows `radius,count,ratio`, one per radius, with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("radius,count,ratio\n");
        for i in 0..self.radii.len() {
            out.push_str(&format!(
                "{},{},{}\n",
                self.radii[i], self.counts[i], self.ratios[i]
            ));
        }
        out
    }
}

/// Profiles a zero-set description at the given radii (positive, strictly
/// increasing). Each ratio is exact up to the final f64 division.
pub fn density_profile(spec: &ZeroSetSpec, radii: &[i64]) -> Result<DensityProfile> {
    if radii.is_empty() {
        return Err(Error::InvalidParams("at least one radius required".into()));
    }
    for pair in radii.windows(2) {
        if pair[0] >= pair[1] {
            return Err(Error::InvalidParams(format!(
                "radii must be strictly increasing, got {} then {}",
                pair[0], pair[1]
            )));
        }
    }
    if radii[0] < 1 {
        return Err(Error::InvalidParams(format!(
            "radii must be positive, got {}",
            radii[0]
        )));
    }
    let mut counts = Vec::with_capacity(radii.len());
    let mut ratios = Vec::with_capacity(radii.len());
    for &x in radii {
        let count = spec.count_between(-x, x);
        counts.push(count);
        ratios.push(count as f64 / (2 * x + 1) as f64);
    }
    let monotone_nonincreasing = ratios.windows(2).all(|p| p[1] <= p[0]);
    Ok(DensityProfile {
        radii: radii.to_vec(),
        counts,
        ratios,
        monotone_nonincreasing,
    })
}
