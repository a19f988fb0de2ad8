//! Empirical dimensions from point clouds.
//!
//! Everything here is a finite-scale proxy.  Box dimension comes from the
//! slope of mesh counts, Assouad and lower dimension from the extreme
//! exponents `log N_r(B(x,R)) / log(R/r)` over sampled centers and chosen
//! scale pairs.  None of these converge to the true value at any fixed set of
//! scales; they are useful for cross-checking exact formulas with declared
//! tolerances.

mod balls;
mod suite;

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use crate::attractor::PointCloud;

pub use balls::{assouad_estimate, lower_estimate, Centers, PairEstimate, ScalePairStat, CENTER_SAMPLE};
pub use suite::{property_suite, NamedCloud, PropertyCheck, PropertyReport, SuiteSettings};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EstimateError {
    #[error("scale {scale:e} is below the cloud resolution {resolution:e}")]
    BelowResolution { scale: f64, resolution: f64 },
    #[error("need at least {needed} scales, got {got}")]
    TooFewScales { needed: usize, got: usize },
    #[error("scale pair R = {big:e}, r = {small:e} must satisfy 0 < r < R")]
    InvalidPair { big: f64, small: f64 },
    #[error("empty point cloud")]
    EmptyCloud,
    #[error("invalid ladder {0:?}: expected base:Rlo..Rhi:jlo..jhi, e.g. 2:2..5:2..6")]
    Ladder(String),
}

/// Slack applied before flooring so that points on a mesh line land in the
/// cell to their right despite rounding.
const SNAP: f64 = 1e-9;

#[inline]
pub(crate) fn cell(x: f64, r: f64) -> i64 {
    (x / r + SNAP).floor() as i64
}

/// Number of cells of the origin-anchored `r`-mesh that contain a point.
pub fn covering_count(cloud: &PointCloud, r: f64) -> usize {
    let mut keys: Vec<(i64, i64)> = cloud
        .points
        .iter()
        .map(|p| (cell(p[0], r), cell(p[1], r)))
        .collect();
    keys.sort_unstable();
    keys.dedup();
    keys.len()
}

fn check_scale(cloud: &PointCloud, r: f64) -> Result<(), EstimateError> {
    if r < cloud.resolution * (1.0 - 1e-9) {
        return Err(EstimateError::BelowResolution { scale: r, resolution: cloud.resolution });
    }
    Ok(())
}

/// Least-squares slope of `log N_r` against `log(1/r)`.
pub fn box_estimate(cloud: &PointCloud, scales: &[f64]) -> Result<f64, EstimateError> {
    if cloud.is_empty() {
        return Err(EstimateError::EmptyCloud);
    }
    if scales.len() < 3 {
        return Err(EstimateError::TooFewScales { needed: 3, got: scales.len() });
    }
    for &r in scales {
        check_scale(cloud, r)?;
    }
    let xy: Vec<(f64, f64)> = scales
        .iter()
        .map(|&r| ((1.0 / r).ln(), (covering_count(cloud, r) as f64).ln()))
        .collect();
    Ok(slope(&xy))
}

fn slope(xy: &[(f64, f64)]) -> f64 {
    let n = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / n;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / n;
    let cov: f64 = xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let var: f64 = xy.iter().map(|p| (p.0 - mx).powi(2)).sum();
    cov / var
}

/// A geometric family of scales: outer radii `R = base^{-a}` for `a` in
/// `big`, inner scales `r = R·base^{-j}` for `j` in `small`.
///
/// Written `base:alo..ahi:jlo..jhi`; the default is `2:2..5:2..6`.
#[derive(Clone, Debug, PartialEq)]
pub struct Ladder {
    pub base: f64,
    pub big: RangeInclusive<i32>,
    pub small: RangeInclusive<i32>,
}

impl Default for Ladder {
    fn default() -> Self {
        Ladder { base: 2.0, big: 2..=5, small: 2..=6 }
    }
}

impl Ladder {
    /// All `(R, r)` pairs with `r` at or above `resolution`.
    pub fn pairs(&self, resolution: f64) -> Vec<(f64, f64)> {
        let mut out = Vec::new();
        for a in self.big.clone() {
            let big = self.base.powi(-a);
            for j in self.small.clone() {
                let small = big * self.base.powi(-j);
                if small >= resolution * (1.0 - 1e-9) {
                    out.push((big, small));
                }
            }
        }
        out
    }

    /// Single scales `base^{-k}` from the largest outer radius down to the
    /// smallest inner scale, stopping at `resolution`.
    pub fn scales(&self, resolution: f64) -> Vec<f64> {
        (*self.big.start()..=self.big.end() + self.small.end())
            .map(|k| self.base.powi(-k))
            .filter(|&r| r >= resolution * (1.0 - 1e-9))
            .collect()
    }
}

impl FromStr for Ladder {
    type Err = EstimateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || EstimateError::Ladder(s.to_string());
        let range = |t: &str| -> Result<RangeInclusive<i32>, EstimateError> {
            let (lo, hi) = t.split_once("..").ok_or_else(bad)?;
            let lo: i32 = lo.trim().parse().map_err(|_| bad())?;
            let hi: i32 = hi.trim().parse().map_err(|_| bad())?;
            if lo > hi || lo < 0 {
                return Err(bad());
            }
            Ok(lo..=hi)
        };
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let base: f64 = parts[0].trim().parse().map_err(|_| bad())?;
        if !(base > 1.0 && base.is_finite()) {
            return Err(bad());
        }
        let small = range(parts[2])?;
        if *small.start() < 1 {
            return Err(bad());
        }
        Ok(Ladder { base, big: range(parts[1])?, small })
    }
}

impl fmt::Display for Ladder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}..{}:{}..{}",
            self.base,
            self.big.start(),
            self.big.end(),
            self.small.start(),
            self.small.end()
        )
    }
}
