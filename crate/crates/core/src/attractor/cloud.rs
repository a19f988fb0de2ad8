use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use rayon::prelude::*;

use super::{check_budget, AttractorError, Generator};

/// A finite point set standing in for an attractor.
///
/// Every point of the set it approximates lies within `resolution` (in the
/// max metric) of a listed point, and every listed point lies within
/// `resolution` of the set.  Clouds of subsets of the line have `dim == 1`
/// and all second coordinates zero.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud {
    pub points: Vec<[f64; 2]>,
    pub dim: usize,
    pub resolution: f64,
}

impl PointCloud {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Both point sets together, at the coarser resolution.
    pub fn union(&self, other: &PointCloud) -> PointCloud {
        let mut points = self.points.clone();
        points.extend_from_slice(&other.points);
        PointCloud {
            points,
            dim: self.dim.max(other.dim),
            resolution: self.resolution.max(other.resolution),
        }
    }

    /// Image under `p ↦ scale·p + shift`.
    pub fn scaled(&self, scale: f64, shift: [f64; 2]) -> PointCloud {
        PointCloud {
            points: self
                .points
                .iter()
                .map(|p| [scale * p[0] + shift[0], scale * p[1] + shift[1]])
                .collect(),
            dim: self.dim,
            resolution: self.resolution * scale,
        }
    }

    /// Cartesian product of two clouds on the line, as a planar cloud.  The
    /// max metric makes the resolution the larger of the two.
    pub fn product(&self, other: &PointCloud) -> PointCloud {
        let points = self
            .points
            .iter()
            .flat_map(|p| other.points.iter().map(move |q| [p[0], q[0]]))
            .collect();
        PointCloud { points, dim: 2, resolution: self.resolution.max(other.resolution) }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Sampling {
    /// The lower-left corner of each cylinder.
    FixedPoints,
    /// All corners of each cylinder (both endpoints on the line).
    Corners,
}

#[derive(Copy, Clone, Debug)]
struct Cell {
    x: f64,
    y: f64,
    c: f64,
    d: f64,
}

/// One anchor per word of length `depth`; the resolution is the largest
/// cylinder side.
pub fn point_cloud(
    gen: &Generator,
    depth: usize,
    sampling: Sampling,
    cap: u64,
) -> Result<PointCloud, AttractorError> {
    check_budget(gen.len(), depth, cap)?;
    let letters: Vec<Cell> = gen
        .letters()
        .iter()
        .map(|m| Cell { x: m.a.value(), y: m.b.value(), c: m.c.value(), d: m.d.value() })
        .collect();
    let root = Cell { x: 0.0, y: 0.0, c: 1.0, d: 1.0 };
    let tops: Vec<Cell> = if depth == 0 { vec![root] } else { children(&root, &letters) };
    let rest = depth.saturating_sub(1);
    let parts: Vec<(Vec<[f64; 2]>, f64)> = tops
        .par_iter()
        .map(|top| {
            let mut pts = Vec::new();
            let mut res: f64 = 0.0;
            let mut stack = vec![(*top, rest)];
            while let Some((cell, left)) = stack.pop() {
                if left == 0 {
                    res = res.max(side(&cell, gen.dim()));
                    emit(&cell, sampling, gen.dim(), &mut pts);
                } else {
                    for ch in children(&cell, &letters).into_iter().rev() {
                        stack.push((ch, left - 1));
                    }
                }
            }
            (pts, res)
        })
        .collect();
    let resolution = parts.iter().map(|p| p.1).fold(0.0, f64::max);
    let points = parts.into_iter().flat_map(|p| p.0).collect();
    Ok(PointCloud { points, dim: gen.dim(), resolution })
}

fn children(cell: &Cell, letters: &[Cell]) -> Vec<Cell> {
    letters
        .iter()
        .map(|m| Cell {
            x: cell.x + cell.c * m.x,
            y: cell.y + cell.d * m.y,
            c: cell.c * m.c,
            d: cell.d * m.d,
        })
        .collect()
}

fn side(cell: &Cell, dim: usize) -> f64 {
    if dim == 1 {
        cell.c
    } else {
        cell.c.max(cell.d)
    }
}

fn emit(cell: &Cell, sampling: Sampling, dim: usize, out: &mut Vec<[f64; 2]>) {
    match (sampling, dim) {
        (Sampling::FixedPoints, _) => out.push([cell.x, cell.y]),
        (Sampling::Corners, 1) => {
            out.push([cell.x, 0.0]);
            out.push([cell.x + cell.c, 0.0]);
        }
        (Sampling::Corners, _) => {
            out.push([cell.x, cell.y]);
            out.push([cell.x + cell.c, cell.y]);
            out.push([cell.x, cell.y + cell.d]);
            out.push([cell.x + cell.c, cell.y + cell.d]);
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
enum Split {
    Maps,
    Columns,
    Rows,
}

/// A cloud at resolution `delta` with far fewer points than a fixed-depth
/// cloud of the same resolution.
///
/// Cylinders are split by the maps until one side is at most `delta`; from
/// then on only the long side is refined, through the projection of the
/// pattern onto that axis.  Each leaf contributes its lower-left corner.
pub fn refined_cloud(gen: &Generator, delta: f64, cap: u64) -> Result<PointCloud, AttractorError> {
    if !(delta > 0.0) {
        return Err(AttractorError::Scale(delta));
    }
    let letters: Vec<Cell> = gen
        .letters()
        .iter()
        .map(|m| Cell { x: m.a.value(), y: m.b.value(), c: m.c.value(), d: m.d.value() })
        .collect();
    let columns: Vec<(f64, f64)> = gen.columns.clone();
    let rows: Option<Vec<(f64, f64)>> = gen.rows.clone();
    let dim = gen.dim();

    let expand = |cell: &Cell, mode: Split| -> Vec<(Cell, Split)> {
        let mode = match mode {
            Split::Maps if dim == 2 && cell.d <= delta => Split::Columns,
            Split::Maps if dim == 2 && cell.c <= delta && rows.is_some() => Split::Rows,
            m => m,
        };
        match mode {
            Split::Maps => children(cell, &letters).into_iter().map(|c| (c, Split::Maps)).collect(),
            Split::Columns => columns
                .iter()
                .map(|&(w, off)| (Cell { x: cell.x + cell.c * off, c: cell.c * w, ..*cell }, mode))
                .collect(),
            Split::Rows => rows
                .as_ref()
                .expect("row mode needs rows")
                .iter()
                .map(|&(h, off)| (Cell { y: cell.y + cell.d * off, d: cell.d * h, ..*cell }, mode))
                .collect(),
        }
    };
    let done = |cell: &Cell| side(cell, dim) <= delta;

    // Expand breadth-first until there is enough independent work.
    let mut frontier = vec![(Cell { x: 0.0, y: 0.0, c: 1.0, d: 1.0 }, Split::Maps)];
    while frontier.len() < 256 && frontier.iter().any(|(c, _)| !done(c)) {
        frontier = frontier
            .into_iter()
            .flat_map(|(c, m)| if done(&c) { vec![(c, m)] } else { expand(&c, m) })
            .collect();
    }

    let seen = AtomicU64::new(0);
    let over = || seen.load(AtomicOrdering::Relaxed) > cap;
    // Counting pass: refuse before allocating anything large.
    frontier.par_iter().for_each(|&(cell, mode)| {
        let mut stack = vec![(cell, mode)];
        let mut local = 0u64;
        while let Some((c, m)) = stack.pop() {
            if done(&c) {
                local += 1;
                if local % 4096 == 0 {
                    seen.fetch_add(4096, AtomicOrdering::Relaxed);
                    local = 0;
                    if over() {
                        return;
                    }
                }
            } else {
                stack.extend(expand(&c, m));
            }
        }
        seen.fetch_add(local, AtomicOrdering::Relaxed);
    });
    if over() {
        return Err(AttractorError::Budget {
            detail: format!("more than {cap} cylinders needed for resolution {delta:e}"),
            cap,
        });
    }

    let parts: Vec<(Vec<[f64; 2]>, f64)> = frontier
        .par_iter()
        .map(|&(cell, mode)| {
            let mut pts = Vec::new();
            let mut res: f64 = 0.0;
            let mut stack = vec![(cell, mode)];
            while let Some((c, m)) = stack.pop() {
                if done(&c) {
                    res = res.max(side(&c, dim));
                    pts.push([c.x, c.y]);
                } else {
                    stack.extend(expand(&c, m).into_iter().rev());
                }
            }
            (pts, res)
        })
        .collect();
    let resolution = parts.iter().map(|p| p.1).fold(0.0, f64::max);
    let points = parts.into_iter().flat_map(|p| p.0).collect();
    Ok(PointCloud { points, dim, resolution })
}

/// `{1, 1/2, …, 1/n} ∪ {0}`.  The omitted points `1/k`, `k > n`, lie within
/// `1/n` of 0, which is the declared resolution.
pub fn sequence_point_set(n: usize) -> PointCloud {
    assert!(n >= 2, "need at least two terms");
    let mut points: Vec<[f64; 2]> = vec![[0.0, 0.0]];
    points.extend((1..=n).rev().map(|k| [1.0 / k as f64, 0.0]));
    PointCloud { points, dim: 1, resolution: 1.0 / n as f64 }
}
