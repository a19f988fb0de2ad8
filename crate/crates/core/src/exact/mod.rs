//! Closed-form dimensions of carpets: projections, slices, the Barański
//! exponents `D_A`/`D_B`, the carpet Assouad/lower formulas, and the
//! Lalley-Gatzouras Hausdorff variational formula.

mod bounds;
mod hausdorff;
mod report;

use std::fmt;

use serde::Serialize;

use crate::model::{classify, Carpet, CarpetClass, ModelError, SimilarityIfs1D, SimilarityMap1D, Strip};
use crate::moran::{self, MoranEquation, MoranError, MoranTerm};

pub use bounds::{product_bounds, self_product_lower, union_bounds, DimPair, Interval};
pub use hausdorff::{
    hausdorff_dimension_lg, hausdorff_objective, HausdorffOptimum, HausdorffSettings,
};
pub use report::{
    carpet_report, dichotomy_check, self_similar_report, Dichotomy, DichotomyVerdict, Dim,
    DimensionReport, EQUALITY_TOLERANCE,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExactError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Moran(#[from] MoranError),
    #[error("{direction} {what} is not defined for column carpets")]
    UnsupportedDirection { direction: Direction, what: &'static str },
    #[error("map index {0} out of range")]
    MapIndex(usize),
    #[error("carpet formulas do not apply to the {0} class; use the self-similar report")]
    Class(CarpetClass),
    #[error("optimizer did not converge; best value found {best}")]
    NumericalFailure { best: f64 },
}

/// Which of the two coordinate directions a projection or slice refers to.
///
/// `First` pairs the projection onto the horizontal axis with the vertical
/// slices; `Second` pairs the projection onto the vertical axis with the
/// horizontal slices.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Direction {
    First,
    Second,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::First => "direction 1",
            Direction::Second => "direction 2",
        })
    }
}

/// Box dimensions of the projections and the extreme slice dimensions, plus
/// the implicit exponents `D_A` and `D_B`.  The second-direction fields are
/// only defined for grid carpets.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CarpetQuantities {
    pub s1: f64,
    pub t1: f64,
    pub u1: f64,
    pub da: f64,
    pub s2: Option<f64>,
    pub t2: Option<f64>,
    pub u2: Option<f64>,
    pub db: Option<f64>,
}

/// The self-similar system generating `π_j(F)`: one map per non-empty column
/// (first direction) or row (second direction).
pub fn projection_ifs(carpet: &Carpet, direction: Direction) -> Result<SimilarityIfs1D, ExactError> {
    let strips = strips(carpet, direction, "projection")?;
    let maps = strips
        .into_iter()
        .map(|s| SimilarityMap1D::new(s.size, s.offset))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SimilarityIfs1D::new(maps)?)
}

/// The self-similar system generating the slice through the fixed point of
/// map `map`: the heights of the cells sharing its column (first direction)
/// or the widths of the cells sharing its row (second direction).
pub fn slice_ifs(carpet: &Carpet, direction: Direction, map: usize) -> Result<SimilarityIfs1D, ExactError> {
    let all = carpet.maps();
    if map >= all.len() {
        return Err(ExactError::MapIndex(map));
    }
    let strip = strips(carpet, direction, "slice")?
        .into_iter()
        .find(|s| s.members.contains(&map))
        .ok_or(ExactError::MapIndex(map))?;
    slice_of_strip(carpet, direction, &strip)
}

fn slice_of_strip(carpet: &Carpet, direction: Direction, strip: &Strip) -> Result<SimilarityIfs1D, ExactError> {
    let all = carpet.maps();
    let maps = strip
        .members
        .iter()
        .map(|&k| {
            let m = &all[k];
            match direction {
                Direction::First => SimilarityMap1D::new(m.d.clone(), m.b.clone()),
                Direction::Second => SimilarityMap1D::new(m.c.clone(), m.a.clone()),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SimilarityIfs1D::new(maps)?)
}

fn strips(carpet: &Carpet, direction: Direction, what: &'static str) -> Result<Vec<Strip>, ExactError> {
    match direction {
        Direction::First => Ok(carpet.columns()),
        Direction::Second => carpet
            .rows()
            .ok_or(ExactError::UnsupportedDirection { direction, what }),
    }
}

/// Dimensions of every distinct slice in `direction`, one per strip.
fn slice_dimensions(carpet: &Carpet, direction: Direction, tol: f64) -> Result<Vec<f64>, ExactError> {
    strips(carpet, direction, "slice")?
        .iter()
        .map(|s| {
            let ifs = slice_of_strip(carpet, direction, s)?;
            Ok(moran::similarity_dimension_of(&ifs.ratios(), tol))
        })
        .collect()
}

fn extremes(values: &[f64]) -> (f64, f64) {
    values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)))
}

/// Solves `Σ_i major_i^{s} · minor_i^{x} = 1` for `x` and returns `s + x`.
fn implicit_exponent(pairs: &[(f64, f64)], s: f64, tol: f64) -> Result<f64, ExactError> {
    let terms = pairs
        .iter()
        .map(|&(major, minor)| MoranTerm::new(major.powf(s), minor))
        .collect::<Result<Vec<_>, _>>()?;
    let eq = MoranEquation::new(terms)?;
    Ok(s + moran::solve_moran(&eq, tol)?)
}

pub fn carpet_quantities(carpet: &Carpet) -> Result<CarpetQuantities, ExactError> {
    carpet_quantities_with(carpet, moran::DEFAULT_TOLERANCE)
}

pub fn carpet_quantities_with(carpet: &Carpet, tol: f64) -> Result<CarpetQuantities, ExactError> {
    let maps = carpet.maps();
    let s1 = moran::similarity_dimension_of(&projection_ifs(carpet, Direction::First)?.ratios(), tol);
    let (u1, t1) = extremes(&slice_dimensions(carpet, Direction::First, tol)?);
    let cd: Vec<(f64, f64)> = maps.iter().map(|m| (m.c.value(), m.d.value())).collect();
    let da = implicit_exponent(&cd, s1, tol)?;
    let mut q = CarpetQuantities { s1, t1, u1, da, s2: None, t2: None, u2: None, db: None };
    if let Carpet::Baranski(_) = carpet {
        let s2 = moran::similarity_dimension_of(&projection_ifs(carpet, Direction::Second)?.ratios(), tol);
        let (u2, t2) = extremes(&slice_dimensions(carpet, Direction::Second, tol)?);
        let dc: Vec<(f64, f64)> = cd.iter().map(|&(c, d)| (d, c)).collect();
        q.s2 = Some(s2);
        q.t2 = Some(t2);
        q.u2 = Some(u2);
        q.db = Some(implicit_exponent(&dc, s2, tol)?);
    }
    Ok(q)
}

fn second(q: &CarpetQuantities) -> Result<(f64, f64, f64), ExactError> {
    match (q.s2, q.t2, q.u2) {
        (Some(s2), Some(t2), Some(u2)) => Ok((s2, t2, u2)),
        _ => Err(ExactError::UnsupportedDirection { direction: Direction::Second, what: "slice" }),
    }
}

/// Assouad dimension from the projection and maximal slice dimensions.
pub fn assouad_dimension(carpet: &Carpet) -> Result<f64, ExactError> {
    let q = carpet_quantities(carpet)?;
    assouad_from(classify(carpet), &q)
}

pub(crate) fn assouad_from(class: CarpetClass, q: &CarpetQuantities) -> Result<f64, ExactError> {
    match class {
        CarpetClass::Horizontal => Ok(q.s1 + q.t1),
        CarpetClass::Vertical => second(q).map(|(s2, t2, _)| s2 + t2),
        CarpetClass::Mixed => second(q).map(|(s2, t2, _)| (q.s1 + q.t1).max(s2 + t2)),
        CarpetClass::SelfSimilar => Err(ExactError::Class(class)),
    }
}

/// Lower dimension from the projection and minimal slice dimensions.
pub fn lower_dimension(carpet: &Carpet) -> Result<f64, ExactError> {
    let q = carpet_quantities(carpet)?;
    lower_from(classify(carpet), &q)
}

pub(crate) fn lower_from(class: CarpetClass, q: &CarpetQuantities) -> Result<f64, ExactError> {
    match class {
        CarpetClass::Horizontal => Ok(q.s1 + q.u1),
        CarpetClass::Vertical => second(q).map(|(s2, _, u2)| s2 + u2),
        CarpetClass::Mixed => second(q).map(|(s2, _, u2)| (q.s1 + q.u1).min(s2 + u2)),
        CarpetClass::SelfSimilar => Err(ExactError::Class(class)),
    }
}

/// `max(D_A, D_B)` for grid carpets, `D_A` for column carpets.
pub fn box_dimension(carpet: &Carpet) -> Result<f64, ExactError> {
    Ok(box_from(&carpet_quantities(carpet)?))
}

pub(crate) fn box_from(q: &CarpetQuantities) -> f64 {
    q.db.map_or(q.da, |db| q.da.max(db))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-10
    }

    #[test]
    fn mixed_example_projections() {
        let c = fixtures::mixed_carpet();
        let p1 = projection_ifs(&c, Direction::First).unwrap();
        assert_eq!(p1.ratios(), vec![0.2, 0.8]);
        assert!(p1.osc());
        assert!(close(moran::similarity_dimension(&p1), 1.0));
        let p2 = projection_ifs(&c, Direction::Second).unwrap();
        assert_eq!(p2.ratios(), vec![0.25; 4]);
        assert!(close(moran::similarity_dimension(&p2), 1.0));
    }

    #[test]
    fn mixed_example_slices() {
        let c = fixtures::mixed_carpet();
        for i in 0..4 {
            let v = slice_ifs(&c, Direction::First, i).unwrap();
            assert_eq!(v.ratios(), vec![0.25, 0.25]);
            assert!(close(moran::similarity_dimension(&v), 0.5));
            let h = slice_ifs(&c, Direction::Second, i).unwrap();
            assert_eq!(h.len(), 1);
            assert_eq!(moran::similarity_dimension(&h), 0.0);
        }
        assert!(matches!(slice_ifs(&c, Direction::First, 4), Err(ExactError::MapIndex(4))));
    }

    #[test]
    fn lg_slices_and_unsupported_direction() {
        let c = fixtures::lg_carpet();
        let v = slice_ifs(&c, Direction::First, 0).unwrap();
        assert_eq!(v.len(), 2);
        assert!(close(moran::similarity_dimension(&v), 2f64.ln() / 3f64.ln()));
        assert!(matches!(
            slice_ifs(&c, Direction::Second, 0),
            Err(ExactError::UnsupportedDirection { .. })
        ));
    }

    #[test]
    fn mixed_example_quantities() {
        let q = carpet_quantities(&fixtures::mixed_carpet()).unwrap();
        assert!(close(q.s1, 1.0) && close(q.s2.unwrap(), 1.0));
        assert!(close(q.t1, 0.5) && close(q.u1, 0.5));
        assert!(close(q.t2.unwrap(), 0.0) && close(q.u2.unwrap(), 0.0));
        // 2·(1/4)^{D_A − 1} = 1
        assert!(close(q.da, 1.5));
        // 2(1/5)^x + 2(4/5)^x = 4 forces x = 0
        assert!(close(q.db.unwrap(), 1.0));
    }

    #[test]
    fn full_grid_quantities() {
        let q = carpet_quantities(&fixtures::full_grid()).unwrap();
        for v in [q.s1, q.t1, q.u1, q.s2.unwrap(), q.t2.unwrap(), q.u2.unwrap()] {
            assert!(close(v, 1.0));
        }
        assert!(close(q.da, 2.0) && close(q.db.unwrap(), 2.0));
        assert!(close(box_dimension(&fixtures::full_grid()).unwrap(), 2.0));
    }

    #[test]
    fn lg_fixture_quantities() {
        let q = carpet_quantities(&fixtures::lg_carpet()).unwrap();
        let l23 = 2f64.ln() / 3f64.ln();
        assert!(close(q.s1, 1.0));
        assert!(close(q.t1, l23));
        assert_eq!(q.u1, 0.0);
        assert!(close(q.da, 2.0 - l23));
        assert!(q.db.is_none());
    }

    #[test]
    fn mixed_example_dimensions() {
        let c = fixtures::mixed_carpet();
        assert!(close(assouad_dimension(&c).unwrap(), 1.5));
        assert!(close(lower_dimension(&c).unwrap(), 1.0));
        assert!(close(box_dimension(&c).unwrap(), 1.5));
    }

    #[test]
    fn lg_fixture_dimensions() {
        let c = fixtures::lg_carpet();
        let l23 = 2f64.ln() / 3f64.ln();
        assert!(close(assouad_dimension(&c).unwrap(), 1.0 + l23));
        assert!(close(lower_dimension(&c).unwrap(), 1.0));
        assert!(close(box_dimension(&c).unwrap(), 2.0 - l23));
    }

    #[test]
    fn uniform_slices_make_assouad_equal_lower() {
        // Horizontal grid, every column holds two rows of height 1/3.
        let c = fixtures::baranski(&[(1, 2), (1, 2)], &[(1, 3); 3], &[(0, 0), (0, 2), (1, 1), (1, 2)]);
        assert!(close(assouad_dimension(&c).unwrap(), lower_dimension(&c).unwrap()));
    }

    #[test]
    fn self_similar_class_rejected() {
        let c = fixtures::full_grid();
        assert!(matches!(assouad_dimension(&c), Err(ExactError::Class(CarpetClass::SelfSimilar))));
        assert!(matches!(lower_dimension(&c), Err(ExactError::Class(CarpetClass::SelfSimilar))));
    }

    #[test]
    fn tolerance_is_respected() {
        let q = carpet_quantities_with(&fixtures::lg_carpet(), 1e-4).unwrap();
        assert!((q.da - (2.0 - 2f64.ln() / 3f64.ln())).abs() < 1e-4);
    }
}
