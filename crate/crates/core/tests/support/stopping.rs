//! Independent checks of r-stoppings and approximate squares, shared by the
//! core integration tests and the acceptance harness.

use std::cmp::Ordering;
use std::collections::HashSet;

use fracdim::attractor::{
    approximate_square, r_stopping, Generator, SymbolicSequence, Word, DEFAULT_WORD_CAP,
};
use fracdim::model::{BaranskiCarpet, Carpet, Scalar};
use fracdim::sample::{random_baranski, random_lg};
use rand::Rng;

/// Slack for comparisons involving inexact scalars.
pub const REAL_SLACK: f64 = 1e-12;

pub struct Triple {
    pub label: String,
    pub gen: Generator,
    pub r: Scalar,
    pub seq: SymbolicSequence,
}

fn le(a: &Scalar, b: &Scalar) -> bool {
    match (a.is_exact() && b.is_exact(), a.cmp_strict(b)) {
        (true, o) => o != Ordering::Greater,
        (false, _) => a.value() <= b.value() + REAL_SLACK,
    }
}

fn lt(a: &Scalar, b: &Scalar) -> bool {
    match (a.is_exact() && b.is_exact(), a.cmp_strict(b)) {
        (true, o) => o == Ordering::Less,
        (false, _) => a.value() < b.value() + REAL_SLACK,
    }
}

/// The same grid with every width and height nudged by an irrational factor,
/// so that all arithmetic is inexact.
fn realify(carpet: &Carpet) -> Carpet {
    let Carpet::Baranski(g) = carpet else { unreachable!("grid expected") };
    let nudge = |parts: &[Scalar]| -> Vec<Scalar> {
        let raw: Vec<f64> = parts
            .iter()
            .enumerate()
            .map(|(k, p)| p.value() * (1.0 + 0.01 * ((k + 2) as f64).sqrt()))
            .collect();
        let total: f64 = raw.iter().sum();
        raw.into_iter().map(|v| Scalar::approx(v / total)).collect()
    };
    Carpet::Baranski(
        BaranskiCarpet::new(nudge(g.columns()), nudge(g.rows()), g.cells().to_vec())
            .expect("nudged grid stays valid"),
    )
}

/// A random carpet (grid, column or irrational grid), a scale below every
/// letter's longer side, and an eventually periodic sequence.
pub fn random_triple<R: Rng>(rng: &mut R, k: usize) -> Triple {
    let (label, carpet) = match k % 5 {
        0 | 1 => ("grid", random_baranski(rng)),
        2 | 3 => ("column", random_lg(rng)),
        _ => ("real grid", realify(&random_baranski(rng))),
    };
    let gen = Generator::from_carpet(&carpet);
    let ceiling = gen
        .letters()
        .iter()
        .map(|m| if m.c.value() > m.d.value() { m.c.value() } else { m.d.value() })
        .fold(1.0, f64::min);
    let r = loop {
        let den = rng.gen_range(3..=60);
        let num = rng.gen_range(1..den);
        let r = Scalar::ratio(num, den);
        if r.value() < ceiling {
            break r;
        }
    };
    let n = gen.len();
    let prefix = (0..rng.gen_range(0..=3)).map(|_| rng.gen_range(0..n)).collect();
    let period = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(0..n)).collect();
    let seq = SymbolicSequence::new(prefix, period).expect("non-empty period");
    Triple { label: format!("{label} #{k}"), gen, r, seq }
}

/// `α_min·r ≤ α2(w) < r ≤ α2(parent)` for every stopping word.
pub fn check_stop_bounds(gen: &Generator, r: &Scalar, words: &[Word]) -> Result<(), String> {
    let floor = gen.alpha_min().mul(r);
    for w in words {
        let parent = Word::from_indices(gen, &w.indices[..w.len() - 1]);
        let a2 = w.alpha2();
        if !le(&floor, a2) || !lt(a2, r) || !le(r, parent.alpha2()) {
            return Err(format!(
                "word {:?}: alpha2 = {a2}, parent alpha2 = {}, r = {r}",
                w.indices,
                parent.alpha2()
            ));
        }
    }
    Ok(())
}

/// Every infinite sequence has exactly one prefix in the stopping.  Walks the
/// tree of words: a stopping word must have no stopping descendant, every
/// other node must branch, and no branch may outgrow the longest stopping
/// word.
pub fn check_tiling(gen: &Generator, words: &[Word]) -> Result<(), String> {
    let set: HashSet<&[usize]> = words.iter().map(|w| w.indices.as_slice()).collect();
    if set.len() != words.len() {
        return Err("duplicate stopping words".into());
    }
    let proper: HashSet<&[usize]> =
        words.iter().flat_map(|w| (0..w.len()).map(move |k| &w.indices[..k])).collect();
    let depth = words.iter().map(Word::len).max().unwrap_or(0);
    let mut hits = 0;
    let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
    while let Some(w) = stack.pop() {
        if !w.is_empty() && set.contains(w.as_slice()) {
            if proper.contains(w.as_slice()) {
                return Err(format!("stopping word {w:?} is a prefix of another"));
            }
            hits += 1;
            continue;
        }
        if w.len() == depth {
            return Err(format!("depth-{depth} word {w:?} has no prefix in the stopping"));
        }
        for k in 0..gen.len() {
            let mut child = w.clone();
            child.push(k);
            stack.push(child);
        }
    }
    if hits != words.len() {
        return Err(format!("{} of {} stopping words reachable", hits, words.len()));
    }
    Ok(())
}

/// Side bounds `r ≤ width ≤ r/c_min`, `r ≤ height ≤ r/d_min`, the coded
/// point inside `Q`, and `Q` inside the Euclidean ball of radius
/// `√2·r/α_min` about it.
pub fn check_square(gen: &Generator, seq: &SymbolicSequence, r: &Scalar) -> Result<(), String> {
    let q = approximate_square(gen, seq, r).map_err(|e| e.to_string())?;
    let fail = |what: &str| Err(format!("{what}: {q:?}"));
    if !le(r, &q.width) || !le(&q.width, &r.div(&gen.c_min())) {
        return fail("width out of range");
    }
    if !le(r, &q.height) || !le(&q.height, &r.div(&gen.d_min())) {
        return fail("height out of range");
    }
    let [px, py] = seq.point(gen).map_err(|e| e.to_string())?;
    let x1 = q.x0.add(&q.width);
    let y1 = q.y0.add(&q.height);
    if !le(&q.x0, &px) || !le(&px, &x1) || !le(&q.y0, &py) || !le(&py, &y1) {
        return fail("coded point outside the square");
    }
    let radius = r.div(&gen.alpha_min());
    let bound = radius.mul(&radius).mul(&Scalar::integer(2));
    for x in [&q.x0, &x1] {
        for y in [&q.y0, &y1] {
            let dx = x.sub(&px);
            let dy = y.sub(&py);
            if !le(&dx.mul(&dx).add(&dy.mul(&dy)), &bound) {
                return fail("corner outside the containing ball");
            }
        }
    }
    Ok(())
}

/// All invariants for one triple.
pub fn check_triple(t: &Triple) -> Result<(), String> {
    let words = r_stopping(&t.gen, &t.r, DEFAULT_WORD_CAP).map_err(|e| e.to_string())?;
    check_stop_bounds(&t.gen, &t.r, &words)?;
    check_tiling(&t.gen, &words)?;
    check_square(&t.gen, &t.seq, &t.r)
}
