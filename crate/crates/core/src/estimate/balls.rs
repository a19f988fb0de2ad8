use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{cell, check_scale, EstimateError};
use crate::attractor::PointCloud;

/// Largest number of centers used before sampling kicks in.
pub const CENTER_SAMPLE: usize = 4096;

/// Where balls are centered.
#[derive(Clone, Debug, PartialEq)]
pub enum Centers {
    /// Every cloud point when there are at most [`CENTER_SAMPLE`], otherwise
    /// a seeded uniform sample of that size plus the lexicographically
    /// smallest and largest points.
    Sampled { seed: u64 },
    Explicit(Vec<[f64; 2]>),
}

impl Centers {
    fn resolve(&self, cloud: &PointCloud) -> Vec<[f64; 2]> {
        match self {
            Centers::Explicit(c) => c.clone(),
            Centers::Sampled { .. } if cloud.len() <= CENTER_SAMPLE => cloud.points.clone(),
            Centers::Sampled { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let mut idx = sample(&mut rng, cloud.len(), CENTER_SAMPLE).into_vec();
                let lex = |a: &&[f64; 2], b: &&[f64; 2]| a.partial_cmp(b).expect("finite coordinates");
                let lo = cloud.points.iter().min_by(lex).expect("non-empty");
                let hi = cloud.points.iter().max_by(lex).expect("non-empty");
                idx.sort_unstable();
                let mut out: Vec<[f64; 2]> = idx.into_iter().map(|k| cloud.points[k]).collect();
                out.push(*lo);
                out.push(*hi);
                out
            }
        }
    }
}

/// Count statistic at one scale pair.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalePairStat {
    #[serde(rename = "R")]
    pub big_r: f64,
    pub r: f64,
    /// Extreme (max or min) over centers of `N_r(B(x, R) ∩ cloud)`.
    pub value: usize,
    pub exponent: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairEstimate {
    pub estimate: f64,
    pub stats: Vec<ScalePairStat>,
}

/// Occupied mesh cells at one scale, sorted, with the points of each cell.
struct Mesh {
    r: f64,
    cells: Vec<(i64, i64)>,
    starts: Vec<usize>,
    members: Vec<[f64; 2]>,
}

impl Mesh {
    fn new(cloud: &PointCloud, r: f64) -> Mesh {
        let mut keyed: Vec<((i64, i64), [f64; 2])> = cloud
            .points
            .iter()
            .map(|p| ((cell(p[0], r), cell(p[1], r)), *p))
            .collect();
        keyed.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let mut cells = Vec::new();
        let mut starts = Vec::new();
        let mut members = Vec::with_capacity(keyed.len());
        for (k, (key, p)) in keyed.into_iter().enumerate() {
            if cells.last() != Some(&key) {
                cells.push(key);
                starts.push(k);
            }
            members.push(p);
        }
        starts.push(members.len());
        Mesh { r, cells, starts, members }
    }

    /// `N_r` of the open max-metric ball `B(x, R)` intersected with the cloud.
    ///
    /// Cells strictly inside the index range are inside the ball; cells on
    /// the edge of the range are counted only if one of their points is.
    fn ball_count(&self, x: [f64; 2], big: f64) -> usize {
        let (xlo, xhi) = (cell(x[0] - big, self.r), cell(x[0] + big, self.r));
        let (ylo, yhi) = (cell(x[1] - big, self.r), cell(x[1] + big, self.r));
        let inside = |p: &[f64; 2]| (p[0] - x[0]).abs() < big && (p[1] - x[1]).abs() < big;
        let mut count = 0;
        for ix in xlo..=xhi {
            let from = self.cells.partition_point(|c| *c < (ix, ylo));
            let to = self.cells.partition_point(|c| *c <= (ix, yhi));
            if from == to {
                continue;
            }
            let edge_column = ix == xlo || ix == xhi;
            for k in from..to {
                let iy = self.cells[k].1;
                if !edge_column && iy != ylo && iy != yhi {
                    count += 1;
                } else if self.members[self.starts[k]..self.starts[k + 1]].iter().any(inside) {
                    count += 1;
                }
            }
        }
        count
    }
}

fn check_pairs(cloud: &PointCloud, pairs: &[(f64, f64)]) -> Result<(), EstimateError> {
    if cloud.is_empty() {
        return Err(EstimateError::EmptyCloud);
    }
    if pairs.is_empty() {
        return Err(EstimateError::TooFewScales { needed: 1, got: 0 });
    }
    for &(big, small) in pairs {
        if !(small > 0.0 && small < big) {
            return Err(EstimateError::InvalidPair { big, small });
        }
        check_scale(cloud, small)?;
    }
    Ok(())
}

fn extreme_counts(
    cloud: &PointCloud,
    pairs: &[(f64, f64)],
    centers: &Centers,
    pick: fn(usize, usize) -> usize,
) -> Result<Vec<ScalePairStat>, EstimateError> {
    check_pairs(cloud, pairs)?;
    let xs = centers.resolve(cloud);
    if xs.is_empty() {
        return Err(EstimateError::EmptyCloud);
    }
    let mut stats = Vec::with_capacity(pairs.len());
    for &(big, small) in pairs {
        let mesh = Mesh::new(cloud, small);
        let value = xs
            .par_iter()
            .map(|&x| mesh.ball_count(x, big))
            .reduce_with(pick)
            .expect("at least one center");
        let exponent = if value == 0 { 0.0 } else { (value as f64).ln() / (big / small).ln() };
        stats.push(ScalePairStat { big_r: big, r: small, value, exponent });
    }
    Ok(stats)
}

/// `max_(R,r) log(sup_x N_r(B(x,R))) / log(R/r)` over the given pairs.
pub fn assouad_estimate(
    cloud: &PointCloud,
    pairs: &[(f64, f64)],
    centers: &Centers,
) -> Result<PairEstimate, EstimateError> {
    let stats = extreme_counts(cloud, pairs, centers, usize::max)?;
    let estimate = stats.iter().map(|s| s.exponent).fold(f64::NEG_INFINITY, f64::max);
    Ok(PairEstimate { estimate, stats })
}

/// `min_(R,r) log(inf_x N_r(B(x,R))) / log(R/r)` over the given pairs.
pub fn lower_estimate(
    cloud: &PointCloud,
    pairs: &[(f64, f64)],
    centers: &Centers,
) -> Result<PairEstimate, EstimateError> {
    let stats = extreme_counts(cloud, pairs, centers, usize::min)?;
    let estimate = stats.iter().map(|s| s.exponent).fold(f64::INFINITY, f64::min);
    Ok(PairEstimate { estimate, stats })
}
