//! Words over a system's maps, r-stoppings, approximate squares, point
//! clouds approximating the attractor, and the weak-tangent zoom of the
//! overlapping self-similar example.

mod cloud;
mod stopping;
mod tangent;

use std::cmp::Ordering;

use crate::model::{AffineMap2D, Carpet, Scalar, SimilarityIfs1D, System};

pub use cloud::{point_cloud, refined_cloud, sequence_point_set, PointCloud, Sampling};
pub use stopping::{approximate_square, r_stopping, ApproximateSquare, SymbolicSequence};
pub use tangent::weak_tangent_distance;

/// Default limit on the number of words any single operation may produce.
pub const DEFAULT_WORD_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AttractorError {
    #[error("word budget exceeded: {detail} (cap {cap})")]
    Budget { detail: String, cap: u64 },
    #[error("scale {0} must lie strictly between 0 and 1")]
    Scale(f64),
    #[error("invalid symbolic sequence: {0}")]
    Sequence(String),
}

/// The maps of a system in a form the word machinery can compose.  A
/// one-dimensional system is embedded on the bottom edge of the square.
#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    letters: Vec<AffineMap2D>,
    dim: usize,
    /// `(width, offset)` of each non-empty column.
    columns: Vec<(f64, f64)>,
    /// `(height, offset)` of each non-empty row, for grid carpets.
    rows: Option<Vec<(f64, f64)>>,
}

impl Generator {
    pub fn from_carpet(carpet: &Carpet) -> Self {
        let strip = |s: &crate::model::Strip| (s.size.value(), s.offset.value());
        Generator {
            letters: carpet.maps(),
            dim: 2,
            columns: carpet.columns().iter().map(strip).collect(),
            rows: carpet.rows().map(|rs| rs.iter().map(strip).collect()),
        }
    }

    pub fn from_line(ifs: &SimilarityIfs1D) -> Self {
        let letters: Vec<AffineMap2D> = ifs
            .maps()
            .iter()
            .map(|m| AffineMap2D {
                c: m.ratio().clone(),
                d: m.ratio().clone(),
                a: m.translate().clone(),
                b: Scalar::zero(),
            })
            .collect();
        let columns = letters.iter().map(|m| (m.c.value(), m.a.value())).collect();
        Generator { letters, dim: 1, columns, rows: None }
    }

    pub fn from_system(system: &System) -> Self {
        match system {
            System::SelfSimilar1D(ifs) => Self::from_line(ifs),
            System::Carpet(c) => Self::from_carpet(c),
        }
    }

    pub fn letters(&self) -> &[AffineMap2D] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// 1 for subsets of the line, 2 for carpets.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `min_i min(c_i, d_i)`.
    pub fn alpha_min(&self) -> Scalar {
        self.letters
            .iter()
            .map(|m| min(&m.c, &m.d).clone())
            .reduce(|a, b| min(&a, &b).clone())
            .expect("systems have at least one map")
    }

    /// Smallest horizontal and vertical contraction.
    pub fn c_min(&self) -> Scalar {
        self.letters.iter().map(|m| m.c.clone()).reduce(|a, b| min(&a, &b).clone()).unwrap()
    }

    pub fn d_min(&self) -> Scalar {
        self.letters.iter().map(|m| m.d.clone()).reduce(|a, b| min(&a, &b).clone()).unwrap()
    }
}

fn min<'a>(a: &'a Scalar, b: &'a Scalar) -> &'a Scalar {
    if a.cmp_strict(b) == Ordering::Greater {
        b
    } else {
        a
    }
}

fn max<'a>(a: &'a Scalar, b: &'a Scalar) -> &'a Scalar {
    if a.cmp_strict(b) == Ordering::Less {
        b
    } else {
        a
    }
}

/// A finite composition `S_{i_1} ∘ ⋯ ∘ S_{i_k}`, stored as the resulting
/// diagonal map `(x, y) ↦ (c·x + a, d·y + b)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Word {
    pub indices: Vec<usize>,
    pub c: Scalar,
    pub d: Scalar,
    pub a: Scalar,
    pub b: Scalar,
}

impl Word {
    /// The identity.
    pub fn empty() -> Self {
        Word {
            indices: Vec::new(),
            c: Scalar::one(),
            d: Scalar::one(),
            a: Scalar::zero(),
            b: Scalar::zero(),
        }
    }

    pub fn from_indices(gen: &Generator, indices: &[usize]) -> Self {
        indices.iter().fold(Word::empty(), |w, &k| w.child(k, &gen.letters[k]))
    }

    /// `self ∘ S_k`.
    pub fn child(&self, k: usize, letter: &AffineMap2D) -> Word {
        let mut indices = self.indices.clone();
        indices.push(k);
        Word {
            indices,
            c: self.c.mul(&letter.c),
            d: self.d.mul(&letter.d),
            a: self.a.add(&self.c.mul(&letter.a)),
            b: self.b.add(&self.d.mul(&letter.b)),
        }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Longer side of the image rectangle.
    pub fn alpha1(&self) -> &Scalar {
        max(&self.c, &self.d)
    }

    /// Shorter side of the image rectangle.
    pub fn alpha2(&self) -> &Scalar {
        min(&self.c, &self.d)
    }

    /// `[x0, y0, width, height]` of the image of the unit square.
    pub fn rect(&self) -> [f64; 4] {
        [self.a.value(), self.b.value(), self.c.value(), self.d.value()]
    }
}

fn check_budget(n: usize, depth: usize, cap: u64) -> Result<(), AttractorError> {
    let count = (n as u128).checked_pow(depth as u32);
    match count {
        Some(c) if c <= cap as u128 => Ok(()),
        _ => Err(AttractorError::Budget {
            detail: format!("{n}^{depth} words requested"),
            cap,
        }),
    }
}

/// Every word of length `depth`, in lexicographic order.
pub fn iterate_words(gen: &Generator, depth: usize, cap: u64) -> Result<Vec<Word>, AttractorError> {
    check_budget(gen.len(), depth, cap)?;
    let mut level = vec![Word::empty()];
    for _ in 0..depth {
        level = level
            .iter()
            .flat_map(|w| gen.letters.iter().enumerate().map(move |(k, m)| w.child(k, m)))
            .collect();
    }
    Ok(level)
}
