use std::fmt::Write as _;
use std::io::Write;
use std::time::Instant;

use fracdim::exact::{carpet_report, self_similar_report, Dim, DimensionReport, HausdorffSettings};
use fracdim::model::System;

use crate::document::{Document, InputInfo, SolverInfo};
use crate::{emit, Context, Exit, Failure, Input, Outcome};

pub(crate) fn exact_report(system: &System, tol: f64, settings: &HausdorffSettings) -> Result<DimensionReport, Failure> {
    Ok(match system {
        System::SelfSimilar1D(ifs) => self_similar_report(ifs, tol),
        System::Carpet(c) => carpet_report(c, tol, settings)?,
    })
}

pub(crate) fn show_dim(d: &Dim) -> String {
    match d {
        Dim::Value { value } => format!("{value:.12}"),
        Dim::AtMost { bound } => format!("<= {bound:.12}"),
        Dim::Interval { lo, hi } => format!("in [{lo:.12}, {hi:.12}]"),
        Dim::Unavailable { reason } => format!("unavailable ({reason})"),
    }
}

fn table(input: &Input, r: &DimensionReport) -> String {
    let mut s = String::new();
    let info = InputInfo::new(&input.bytes, &input.system);
    let _ = writeln!(s, "system     {} ({} maps), class {}", info.kind, info.maps, r.class);
    for (name, d) in [("lower", &r.lower), ("hausdorff", &r.hausdorff), ("box", &r.box_dim), ("assouad", &r.assouad)] {
        let _ = writeln!(s, "{name:<10} {}", show_dim(d));
    }
    if let Some(sd) = r.similarity_dimension {
        let _ = writeln!(s, "similarity dimension {sd:.12}");
    }
    if let Some(osc) = r.osc {
        let _ = writeln!(s, "open set condition   {}", if osc { "yes" } else { "no" });
    }
    if let Some(q) = &r.quantities {
        let _ = writeln!(s, "quantities");
        let opt = |x: Option<f64>| x.map_or_else(|| "-".to_string(), |v| format!("{v:.12}"));
        let _ = writeln!(s, "  s1 {:.12}  t1 {:.12}  u1 {:.12}  DA {:.12}", q.s1, q.t1, q.u1, q.da);
        let _ = writeln!(s, "  s2 {}  t2 {}  u2 {}  DB {}", opt(q.s2), opt(q.t2), opt(q.u2), opt(q.db));
    }
    match &r.dichotomy {
        Some(d) => {
            let _ = writeln!(s, "dichotomy  {:?}: {}", d.verdict, d.configuration);
            for v in &d.violations {
                let _ = writeln!(s, "  violation: {v}");
            }
        }
        None => {
            let _ = writeln!(s, "dichotomy  not applicable (dimensions only bounded)");
        }
    }
    for n in &r.notes {
        let _ = writeln!(s, "note: {n}");
    }
    s
}

pub(crate) fn run(ctx: &Context, input: &Input, json: bool, out: &mut dyn Write) -> Outcome {
    let started = Instant::now();
    let report = exact_report(&input.system, ctx.tol, &ctx.settings)?;
    let text = if json {
        let solver = SolverInfo { tolerance: ctx.tol, restarts: ctx.settings.restarts, seed: ctx.settings.seed };
        Document::new("dims", InputInfo::new(&input.bytes, &input.system), solver, &report, started).to_json()
    } else {
        table(input, &report)
    };
    emit(out, &text)?;
    Ok(Exit::Ok)
}
