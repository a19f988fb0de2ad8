//! Self-consistency checks on a system and its exact report.  A failure here
//! means a bug in the library, not bad input.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use fracdim::exact::{DichotomyVerdict, Dim, DimensionReport, HausdorffSettings};
use fracdim::model::{AffineMap2D, Carpet, CarpetClass, Scalar, System};

use crate::dims::exact_report;
use crate::Failure;

/// Slack for comparisons between computed dimensions.
const SLACK: f64 = 1e-9;

/// Test hooks.  The command line always uses the default.
#[derive(Clone, Debug, Default)]
pub struct CheckOptions {
    /// Added to `D_A` after the report is computed, to confirm that the
    /// checks notice a wrong exponent.
    pub perturb_da: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub lines: Vec<CheckLine>,
}

impl CheckOutcome {
    pub fn all_passed(&self) -> bool {
        self.lines.iter().all(|l| l.passed)
    }

    fn push(&mut self, name: &str, passed: bool, detail: String) {
        self.lines.push(CheckLine { name: name.to_string(), passed, detail });
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            let tag = if l.passed { "PASS" } else { "FAIL" };
            if l.detail.is_empty() {
                writeln!(f, "{tag} {}", l.name)?;
            } else {
                writeln!(f, "{tag} {}: {}", l.name, l.detail)?;
            }
        }
        let failed = self.lines.iter().filter(|l| !l.passed).count();
        writeln!(f, "{} checks, {failed} failed", self.lines.len())
    }
}

fn inside_unit(lo: &Scalar, len: &Scalar) -> bool {
    let end = lo.add(len);
    lo.cmp_tolerant(&Scalar::zero()) != Ordering::Less && end.cmp_tolerant(&Scalar::one()) != Ordering::Greater
}

/// Open intervals `(a, a+s)` and `(b, b+t)` meet.
fn overlap(a: &Scalar, s: &Scalar, b: &Scalar, t: &Scalar) -> bool {
    a.cmp_tolerant(&b.add(t)) == Ordering::Less && b.cmp_tolerant(&a.add(s)) == Ordering::Less
}

fn map_checks(out: &mut CheckOutcome, maps: &[AffineMap2D], planar: bool) {
    let bad: Vec<usize> = maps
        .iter()
        .enumerate()
        .filter(|(_, m)| !(inside_unit(&m.a, &m.c) && (!planar || inside_unit(&m.b, &m.d))))
        .map(|(k, _)| k)
        .collect();
    out.push("map images inside the unit square", bad.is_empty(), if bad.is_empty() { String::new() } else { format!("maps {bad:?}") });
    if planar {
        let mut clash = Vec::new();
        for i in 0..maps.len() {
            for j in i + 1..maps.len() {
                let (p, q) = (&maps[i], &maps[j]);
                if overlap(&p.a, &p.c, &q.a, &q.c) && overlap(&p.b, &p.d, &q.b, &q.d) {
                    clash.push((i, j));
                }
            }
        }
        out.push(
            "map images have disjoint interiors",
            clash.is_empty(),
            if clash.is_empty() { String::new() } else { format!("pairs {clash:?}") },
        );
    }
}

fn bounds(d: &Dim) -> Option<(f64, f64)> {
    match *d {
        Dim::Value { value } => Some((value, value)),
        Dim::AtMost { bound } => Some((0.0, bound)),
        Dim::Interval { lo, hi } => Some((lo, hi)),
        Dim::Unavailable { .. } => None,
    }
}

fn report_checks(out: &mut CheckOutcome, r: &DimensionReport, carpet: Option<&Carpet>) {
    let dims = [("lower", &r.lower), ("hausdorff", &r.hausdorff), ("box", &r.box_dim), ("assouad", &r.assouad)];
    let ranges: Vec<(&str, (f64, f64))> = dims.iter().filter_map(|(n, d)| bounds(d).map(|b| (*n, b))).collect();
    let mut broken = Vec::new();
    for w in ranges.windows(2) {
        let ((n0, (lo0, _)), (n1, (_, hi1))) = (w[0], w[1]);
        if lo0 > hi1 + SLACK {
            broken.push(format!("{n0} {lo0} > {n1} {hi1}"));
        }
    }
    out.push("lower <= hausdorff <= box <= assouad", broken.is_empty(), broken.join("; "));

    if let Some(q) = &r.quantities {
        let ok = q.s1 + q.u1 <= q.da + SLACK && q.da <= q.s1 + q.t1 + SLACK;
        out.push(
            "s1 + u1 <= DA <= s1 + t1",
            ok,
            format!("{:.12} <= {:.12} <= {:.12}", q.s1 + q.u1, q.da, q.s1 + q.t1),
        );
        if let (Some(s2), Some(t2), Some(u2), Some(db)) = (q.s2, q.t2, q.u2, q.db) {
            let ok = s2 + u2 <= db + SLACK && db <= s2 + t2 + SLACK;
            out.push("s2 + u2 <= DB <= s2 + t2", ok, format!("{:.12} <= {db:.12} <= {:.12}", s2 + u2, s2 + t2));
        }
        let expected = match carpet {
            Some(Carpet::Baranski(_)) => q.da.max(q.db.unwrap_or(q.da)),
            _ => q.da,
        };
        if r.class != CarpetClass::SelfSimilar {
            let got = r.box_dim.value().unwrap_or(f64::NAN);
            out.push(
                "box dimension matches the exponents",
                (got - expected).abs() <= SLACK,
                format!("box {got:.12}, exponents give {expected:.12}"),
            );
        }
    }
    if let (Some(s), Some(true)) = (r.similarity_dimension, r.osc) {
        out.push("similarity dimension <= 1 under the open set condition", s <= 1.0 + SLACK, format!("{s:.12}"));
    }
    if let Some(d) = &r.dichotomy {
        out.push(
            "dichotomy",
            d.verdict != DichotomyVerdict::Other,
            format!("{:?}: {}{}", d.verdict, d.configuration, if d.violations.is_empty() { String::new() } else { format!(" ({})", d.violations.join("; ")) }),
        );
    }
}

/// Runs every check on `system`.  Errors are input or numerical failures;
/// broken invariants are reported in the outcome.
pub fn check_system(
    system: &System,
    tol: f64,
    settings: &HausdorffSettings,
    opts: &CheckOptions,
) -> Result<CheckOutcome, Failure> {
    let mut out = CheckOutcome { lines: Vec::new() };
    out.push("document parses and validates", true, system.kind().to_string());
    let carpet = match system {
        System::Carpet(c) => {
            map_checks(&mut out, &c.maps(), true);
            Some(c)
        }
        System::SelfSimilar1D(ifs) => {
            let maps: Vec<AffineMap2D> = ifs
                .maps()
                .iter()
                .map(|m| AffineMap2D { c: m.ratio().clone(), d: m.ratio().clone(), a: m.translate().clone(), b: Scalar::zero() })
                .collect();
            map_checks(&mut out, &maps, false);
            None
        }
    };
    let mut report = exact_report(system, tol, settings)?;
    if let (Some(delta), Some(q)) = (opts.perturb_da, report.quantities.as_mut()) {
        q.da += delta;
    }
    report_checks(&mut out, &report, carpet);
    Ok(out)
}
