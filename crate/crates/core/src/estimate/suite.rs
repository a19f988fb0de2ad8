use serde::Serialize;

use super::{assouad_estimate, box_estimate, lower_estimate, Centers, EstimateError, Ladder};
use crate::attractor::PointCloud;
use crate::exact::{product_bounds, DimPair, Interval};

/// Slack for the `lower <= box` comparison, which is exact in theory and
/// often an equality on self-similar clouds.
const ROUNDING: f64 = 1e-9;

/// Product clouds above this many points are skipped.
const PRODUCT_CAP: usize = 1 << 21;

#[derive(Clone, Debug)]
pub struct NamedCloud {
    pub name: String,
    pub cloud: PointCloud,
}

#[derive(Clone, Debug)]
pub struct SuiteSettings {
    pub ladder: Ladder,
    pub seed: u64,
    pub tolerance: f64,
}

impl Default for SuiteSettings {
    fn default() -> Self {
        SuiteSettings { ladder: Ladder::default(), seed: 0, tolerance: 0.05 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyCheck {
    pub name: String,
    pub observed: f64,
    pub expected_lo: f64,
    pub expected_hi: f64,
    pub passed: bool,
}

impl PropertyCheck {
    fn within(name: String, observed: f64, expected: Interval, slack: f64) -> Self {
        PropertyCheck {
            name,
            observed,
            expected_lo: expected.lo - slack,
            expected_hi: expected.hi + slack,
            passed: expected.contains(observed, slack),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct PropertyReport {
    pub checks: Vec<PropertyCheck>,
}

impl PropertyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Copy, Clone, Debug)]
struct Estimates {
    lower: f64,
    boxd: f64,
    assouad: f64,
}

fn estimates(cloud: &PointCloud, s: &SuiteSettings) -> Result<Estimates, EstimateError> {
    let pairs = s.ladder.pairs(cloud.resolution);
    let centers = Centers::Sampled { seed: s.seed };
    Ok(Estimates {
        lower: lower_estimate(cloud, &pairs, &centers)?.estimate,
        boxd: box_estimate(cloud, &s.ladder.scales(cloud.resolution))?,
        assouad: assouad_estimate(cloud, &pairs, &centers)?.estimate,
    })
}

/// Numerical checks of the stability properties of the dimensions:
///
/// * on every cloud, `lower ≤ box ≤ assouad + tol`;
/// * for each pair of line clouds `X`, `Y`, the union of `X/3` and
///   `Y/3 + 2/3` (a gap of at least `1/3`) has lower estimate within `tol` of
///   the smaller of the parts' estimates;
/// * for each pair of line clouds small enough, the planar product has box
///   estimate within `tol` of the sum and lower/Assouad estimates inside the
///   product intervals widened by `tol`.
///
/// All estimates use the same ladder, clipped to each cloud's resolution.
pub fn property_suite(clouds: &[NamedCloud], settings: &SuiteSettings) -> Result<PropertyReport, EstimateError> {
    let tol = settings.tolerance;
    let mut checks = Vec::new();
    for c in clouds {
        let e = estimates(&c.cloud, settings)?;
        checks.push(PropertyCheck::within(
            format!("{}: lower <= box", c.name),
            e.lower,
            Interval { lo: f64::NEG_INFINITY, hi: e.boxd },
            ROUNDING,
        ));
        checks.push(PropertyCheck::within(
            format!("{}: box <= assouad + tol", c.name),
            e.boxd,
            Interval { lo: f64::NEG_INFINITY, hi: e.assouad },
            tol,
        ));
    }

    let lines: Vec<&NamedCloud> = clouds.iter().filter(|c| c.cloud.dim == 1).collect();
    for (i, x) in lines.iter().enumerate() {
        for y in &lines[i..] {
            let left = x.cloud.scaled(1.0 / 3.0, [0.0, 0.0]);
            let right = y.cloud.scaled(1.0 / 3.0, [2.0 / 3.0, 0.0]);
            let ex = estimates(&left, settings)?;
            let ey = estimates(&right, settings)?;
            let union = estimates(&left.union(&right), settings)?;
            checks.push(PropertyCheck::within(
                format!("{} | {}: separated union lower ~ min", x.name, y.name),
                union.lower,
                Interval::point(ex.lower.min(ey.lower)),
                tol,
            ));

            if x.cloud.len().saturating_mul(y.cloud.len()) > PRODUCT_CAP {
                continue;
            }
            let ex = estimates(&x.cloud, settings)?;
            let ey = estimates(&y.cloud, settings)?;
            let prod = estimates(&x.cloud.product(&y.cloud), settings)?;
            let tag = format!("{} x {}", x.name, y.name);
            checks.push(PropertyCheck::within(
                format!("{tag}: box ~ sum"),
                prod.boxd,
                Interval::point(ex.boxd + ey.boxd),
                tol,
            ));
            match (DimPair::new(ex.lower, ex.assouad), DimPair::new(ey.lower, ey.assouad)) {
                (Some(px), Some(py)) => {
                    let (lower, assouad) = product_bounds(px, py);
                    checks.push(PropertyCheck::within(format!("{tag}: lower in bounds"), prod.lower, lower, tol));
                    checks.push(PropertyCheck::within(
                        format!("{tag}: assouad in bounds"),
                        prod.assouad,
                        assouad,
                        tol,
                    ));
                }
                _ => checks.push(PropertyCheck {
                    name: format!("{tag}: factor estimates form a dimension pair"),
                    observed: f64::NAN,
                    expected_lo: f64::NAN,
                    expected_hi: f64::NAN,
                    passed: false,
                }),
            }
        }
    }
    Ok(PropertyReport { checks })
}
