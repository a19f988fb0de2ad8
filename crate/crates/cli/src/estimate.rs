use std::fmt::Write as _;
use std::io::Write;
use std::time::Instant;

use serde::Serialize;

use fracdim::attractor::{refined_cloud, Generator, PointCloud, DEFAULT_WORD_CAP};
use fracdim::estimate::{assouad_estimate, box_estimate, lower_estimate, Centers, Ladder};
use fracdim::exact::Dim;

use crate::dims::{exact_report, show_dim};
use crate::document::{Document, InputInfo, SolverInfo};
use crate::manifest::{Entry, DEFAULT_ORDERING_TOLERANCE};
use crate::{emit, Context, Exit, Failure, Input, Outcome};

pub(crate) const DEFAULT_DEPTH: usize = 6;

/// `lower <= box` holds in theory; the slack only absorbs rounding.
const ROUNDING: f64 = 1e-9;

pub(crate) struct Options {
    pub depth: Option<usize>,
    pub seed: Option<u64>,
    pub ladder: Option<Ladder>,
    pub entry: Option<Entry>,
    pub json: bool,
}

#[derive(Serialize)]
struct Row {
    dimension: &'static str,
    exact: Dim,
    estimate: f64,
    tolerance: Option<f64>,
    passed: Option<bool>,
}

#[derive(Serialize)]
struct OrderingCheck {
    lower: f64,
    #[serde(rename = "box")]
    box_dim: f64,
    assouad: f64,
    tolerance: f64,
    passed: bool,
}

#[derive(Serialize)]
struct EstimateResult {
    kind: &'static str,
    depth: usize,
    points: usize,
    resolution: f64,
    ladder: String,
    scales: usize,
    pairs: usize,
    rows: Vec<Row>,
    ordering: OrderingCheck,
    all_passed: bool,
}

/// Cloud whose resolution is the largest shorter side of a letter, to the
/// power `depth`.
pub(crate) fn depth_cloud(gen: &Generator, depth: usize) -> Result<PointCloud, Failure> {
    let step = gen
        .letters()
        .iter()
        .map(|m| m.c.value().min(m.d.value()))
        .fold(0.0, f64::max);
    let delta = step.powi(i32::try_from(depth).unwrap_or(i32::MAX));
    if delta <= 0.0 {
        return Err(Failure::numerical(anyhow::anyhow!("depth {depth} underflows the resolution")));
    }
    Ok(refined_cloud(gen, delta, DEFAULT_WORD_CAP)?)
}

fn within(exact: &Dim, estimate: f64, tol: f64) -> Option<bool> {
    match *exact {
        Dim::Value { value } => Some((estimate - value).abs() <= tol),
        Dim::AtMost { bound } => Some(estimate <= bound + tol),
        Dim::Interval { lo, hi } => Some(estimate >= lo - tol && estimate <= hi + tol),
        Dim::Unavailable { .. } => None,
    }
}

fn table(r: &EstimateResult, seed: u64) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "estimate   {}: {} points at resolution {:.3e}, ladder {} ({} scales, {} pairs), seed {seed}",
        r.kind, r.points, r.resolution, r.ladder, r.scales, r.pairs
    );
    let _ = writeln!(s, "{:<10} {:<40} {:>10} {:>8}  status", "dimension", "exact", "estimate", "tol");
    for row in &r.rows {
        let tol = row.tolerance.map_or_else(|| "-".into(), |t| format!("{t:.3}"));
        let status = match row.passed {
            Some(true) => "pass",
            Some(false) => "FAIL",
            None => "-",
        };
        let _ = writeln!(
            s,
            "{:<10} {:<40} {:>10.6} {:>8}  {status}",
            row.dimension,
            show_dim(&row.exact),
            row.estimate,
            tol
        );
    }
    let o = &r.ordering;
    let _ = writeln!(
        s,
        "ordering   lower <= box <= assouad + {}: {}",
        o.tolerance,
        if o.passed { "pass" } else { "FAIL" }
    );
    s
}

pub(crate) fn run(ctx: &Context, input: &Input, opts: &Options, out: &mut dyn Write) -> Outcome {
    let started = Instant::now();
    let entry = opts.entry.clone();
    let depth = opts.depth.or(entry.as_ref().and_then(|e| e.depth)).unwrap_or(DEFAULT_DEPTH);
    let ladder = match (&opts.ladder, entry.as_ref().and_then(|e| e.ladder.as_deref())) {
        (Some(l), _) => l.clone(),
        (None, Some(text)) => text.parse().map_err(Failure::input)?,
        (None, None) => Ladder::default(),
    };
    let seed = opts.seed.or(entry.as_ref().and_then(|e| e.seed)).unwrap_or(0);
    let tol = entry.as_ref().map(|e| e.tolerance.clone()).unwrap_or_default();
    let ordering_tol = entry
        .as_ref()
        .and_then(|e| e.ordering_tolerance)
        .unwrap_or(DEFAULT_ORDERING_TOLERANCE);

    let report = exact_report(&input.system, ctx.tol, &ctx.settings)?;
    let gen = Generator::from_system(&input.system);
    let cloud = depth_cloud(&gen, depth)?;
    let scales = ladder.scales(cloud.resolution);
    let pairs = ladder.pairs(cloud.resolution);
    let centers = Centers::Sampled { seed };
    let b = box_estimate(&cloud, &scales)?;
    let l = lower_estimate(&cloud, &pairs, &centers)?.estimate;
    let a = assouad_estimate(&cloud, &pairs, &centers)?.estimate;

    let rows: Vec<Row> = [
        ("lower", &report.lower, l, tol.lower),
        ("box", &report.box_dim, b, tol.box_dim),
        ("assouad", &report.assouad, a, tol.assouad),
    ]
    .into_iter()
    .map(|(dimension, exact, estimate, tolerance)| Row {
        dimension,
        exact: exact.clone(),
        estimate,
        tolerance,
        passed: tolerance.and_then(|t| within(exact, estimate, t)),
    })
    .collect();
    let ordering = OrderingCheck {
        lower: l,
        box_dim: b,
        assouad: a,
        tolerance: ordering_tol,
        passed: l <= b + ROUNDING && b <= a + ordering_tol,
    };
    let all_passed = ordering.passed && rows.iter().all(|r| r.passed != Some(false));
    let result = EstimateResult {
        kind: "finite-scale proxy",
        depth,
        points: cloud.len(),
        resolution: cloud.resolution,
        ladder: ladder.to_string(),
        scales: scales.len(),
        pairs: pairs.len(),
        rows,
        ordering,
        all_passed,
    };
    let text = if opts.json {
        let solver = SolverInfo { tolerance: ctx.tol, restarts: ctx.settings.restarts, seed };
        Document::new("estimate", InputInfo::new(&input.bytes, &input.system), solver, &result, started).to_json()
    } else {
        table(&result, seed)
    };
    emit(out, &text)?;
    Ok(if all_passed { Exit::Ok } else { Exit::Invariant })
}
