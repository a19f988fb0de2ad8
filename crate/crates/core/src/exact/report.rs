//! The four-dimension report for carpets and one-dimensional self-similar
//! systems, and the dichotomy classification of a report.

use serde::Serialize;

use super::{
    assouad_from, box_from, carpet_quantities_with, hausdorff_dimension_lg, lower_from,
    CarpetQuantities, ExactError, HausdorffSettings,
};
use crate::model::{classify, Carpet, CarpetClass, SimilarityIfs1D};
use crate::moran;

/// Absolute slack for equality when comparing reported dimensions.
pub const EQUALITY_TOLERANCE: f64 = 1e-9;

/// A reported dimension: a number when the theory pins it down, otherwise the
/// best available bounds.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Dim {
    Value { value: f64 },
    /// Bounded above by the similarity dimension; the true value is unknown.
    AtMost { bound: f64 },
    Interval { lo: f64, hi: f64 },
    Unavailable { reason: String },
}

impl Dim {
    pub fn value(&self) -> Option<f64> {
        match self {
            Dim::Value { value } => Some(*value),
            _ => None,
        }
    }

    /// Largest value consistent with the report.
    pub fn upper(&self) -> Option<f64> {
        match self {
            Dim::Value { value } => Some(*value),
            Dim::AtMost { bound } => Some(*bound),
            Dim::Interval { hi, .. } => Some(*hi),
            Dim::Unavailable { .. } => None,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum DichotomyVerdict {
    AllEqual,
    StrictChain,
    LowerDropsOnly,
    Other,
}

/// Outcome of [`dichotomy_check`]: the verdict, the observed ordering
/// written out (e.g. `"lower < box = assouad"`), and what went wrong when the
/// verdict is `Other`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Dichotomy {
    pub verdict: DichotomyVerdict,
    pub configuration: String,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DimensionReport {
    pub class: CarpetClass,
    pub lower: Dim,
    pub hausdorff: Dim,
    #[serde(rename = "box")]
    pub box_dim: Dim,
    pub assouad: Dim,
    /// Carpet inputs to the formulas; absent for one-dimensional systems.
    pub quantities: Option<CarpetQuantities>,
    /// Similarity dimension and open set condition, for self-similar input.
    pub similarity_dimension: Option<f64>,
    pub osc: Option<bool>,
    /// Absent when the dimensions are only bounded.
    pub dichotomy: Option<Dichotomy>,
    pub tolerance: f64,
    pub notes: Vec<String>,
}

/// Dimensions of a self-similar subset of the line.
///
/// With the open set condition all four dimensions equal the similarity
/// dimension `s`.  Without it only `min(s, 1)` bounds the lower, Hausdorff
/// and box dimensions from above, and the Assouad dimension may sit anywhere
/// in `[min(s, 1), 1]`.
pub fn self_similar_report(ifs: &SimilarityIfs1D, tol: f64) -> DimensionReport {
    let s = moran::similarity_dimension_of(&ifs.ratios(), tol);
    let osc = ifs.osc();
    let mut report = DimensionReport {
        class: CarpetClass::SelfSimilar,
        lower: Dim::Value { value: s },
        hausdorff: Dim::Value { value: s },
        box_dim: Dim::Value { value: s },
        assouad: Dim::Value { value: s },
        quantities: None,
        similarity_dimension: Some(s),
        osc: Some(osc),
        dichotomy: None,
        tolerance: tol,
        notes: Vec::new(),
    };
    if osc {
        report.dichotomy = Some(dichotomy_check(&report, CarpetClass::SelfSimilar));
    } else {
        let bound = s.min(1.0);
        report.lower = Dim::AtMost { bound };
        report.hausdorff = Dim::AtMost { bound };
        report.box_dim = Dim::AtMost { bound };
        report.assouad = Dim::Interval { lo: bound, hi: 1.0 };
        report.notes.push(
            "images overlap: lower, Hausdorff and box dimension are bounded by the similarity \
             dimension; the Assouad dimension can exceed the box dimension and may equal 1"
                .into(),
        );
    }
    report
}

/// Dimensions of a carpet.
///
/// Horizontal and vertical carpets get all four values (Hausdorff through the
/// variational formula, after transposing a vertical carpet).  Mixed carpets
/// get the Hausdorff dimension as the interval `[lower, box]`.  Carpets whose
/// maps are all similarities are self-similar with the open set condition, so
/// every dimension is the similarity dimension.
pub fn carpet_report(
    carpet: &Carpet,
    tol: f64,
    settings: &HausdorffSettings,
) -> Result<DimensionReport, ExactError> {
    let class = classify(carpet);
    let q = carpet_quantities_with(carpet, tol)?;
    let mut notes = Vec::new();
    let (lower, hausdorff, box_dim, assouad) = match class {
        CarpetClass::SelfSimilar => {
            let ratios: Vec<f64> = carpet.maps().iter().map(|m| m.c.value()).collect();
            let s = moran::similarity_dimension_of(&ratios, tol);
            notes.push("all maps are similarities: self-similar set with the open set condition".into());
            (s, Dim::Value { value: s }, s, s)
        }
        CarpetClass::Horizontal | CarpetClass::Vertical => {
            let lg = match (carpet, class) {
                (Carpet::LalleyGatzouras(l), _) => l.clone(),
                (Carpet::Baranski(b), CarpetClass::Horizontal) => b.to_lalley_gatzouras()?,
                (Carpet::Baranski(b), _) => b.transpose().to_lalley_gatzouras()?,
            };
            let h = hausdorff_dimension_lg(&lg, settings)?;
            (
                lower_from(class, &q)?,
                Dim::Value { value: h.dimension },
                box_from(&q),
                assouad_from(class, &q)?,
            )
        }
        CarpetClass::Mixed => {
            let lower = lower_from(class, &q)?;
            let b = box_from(&q);
            notes.push("no Hausdorff formula for the mixed class; reporting [lower, box]".into());
            (lower, Dim::Interval { lo: lower, hi: b }, b, assouad_from(class, &q)?)
        }
    };
    let mut report = DimensionReport {
        class,
        lower: Dim::Value { value: lower },
        hausdorff,
        box_dim: Dim::Value { value: box_dim },
        assouad: Dim::Value { value: assouad },
        quantities: Some(q),
        similarity_dimension: None,
        osc: None,
        dichotomy: None,
        tolerance: tol,
        notes,
    };
    report.dichotomy = Some(dichotomy_check(&report, class));
    Ok(report)
}

fn relation(a: f64, b: f64) -> &'static str {
    if (a - b).abs() <= EQUALITY_TOLERANCE {
        "="
    } else if a < b {
        "<"
    } else {
        ">"
    }
}

/// Classifies the ordering of a report's dimensions.
///
/// Horizontal and vertical carpets must show either four equal values or
/// `lower < hausdorff < box < assouad`; any carpet must show four equal
/// values or `lower < box`.  Failures come back as `Other` with the reasons
/// listed, since they can only come from an implementation error.
pub fn dichotomy_check(report: &DimensionReport, class: CarpetClass) -> Dichotomy {
    let mut named: Vec<(&str, f64)> = Vec::new();
    let mut violations = Vec::new();
    for (name, dim) in [
        ("lower", &report.lower),
        ("hausdorff", &report.hausdorff),
        ("box", &report.box_dim),
        ("assouad", &report.assouad),
    ] {
        match dim.value() {
            Some(v) => named.push((name, v)),
            None if name == "hausdorff" => {}
            None => violations.push(format!("{name} dimension is not a single value")),
        }
    }
    let mut configuration = String::new();
    for (k, (name, v)) in named.iter().enumerate() {
        if k > 0 {
            let rel = relation(named[k - 1].1, *v);
            configuration.push_str(&format!(" {rel} "));
            if rel == ">" {
                violations.push(format!("{} exceeds {name}", named[k - 1].0));
            }
        }
        configuration.push_str(name);
    }
    if !violations.is_empty() {
        return Dichotomy { verdict: DichotomyVerdict::Other, configuration, violations };
    }
    let values: Vec<f64> = named.iter().map(|(_, v)| *v).collect();
    let all_equal = values.windows(2).all(|w| relation(w[0], w[1]) == "=")
        && relation(values[0], values[values.len() - 1]) == "=";
    let strict = values.windows(2).all(|w| relation(w[0], w[1]) == "<");
    let get = |n: &str| named.iter().find(|(k, _)| *k == n).map(|(_, v)| *v);
    let verdict = if all_equal {
        DichotomyVerdict::AllEqual
    } else {
        match class {
            CarpetClass::Horizontal | CarpetClass::Vertical => {
                if strict && named.len() == 4 {
                    DichotomyVerdict::StrictChain
                } else {
                    violations.push(format!(
                        "{class} carpet must have all dimensions equal or strictly increasing, found {configuration}"
                    ));
                    DichotomyVerdict::Other
                }
            }
            _ => match (get("lower"), get("box")) {
                (Some(l), Some(b)) if relation(l, b) == "<" => DichotomyVerdict::LowerDropsOnly,
                _ => {
                    violations.push(format!(
                        "expected all dimensions equal or lower < box, found {configuration}"
                    ));
                    DichotomyVerdict::Other
                }
            },
        }
    };
    Dichotomy { verdict, configuration, violations }
}
