use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{ModelError, Scalar};

/// Absolute slack for "sums to one" checks on inexact inputs.
pub const SUM_TOLERANCE: f64 = 1e-9;

/// `(x, y) ↦ (c·x + a, d·y + b)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineMap2D {
    pub c: Scalar,
    pub d: Scalar,
    pub a: Scalar,
    pub b: Scalar,
}

impl AffineMap2D {
    pub fn new(c: Scalar, d: Scalar, a: Scalar, b: Scalar) -> Result<Self, ModelError> {
        let map = AffineMap2D { c, d, a, b };
        map.check("map")?;
        Ok(map)
    }

    fn check(&self, path: &str) -> Result<(), ModelError> {
        let zero = Scalar::zero();
        let one = Scalar::one();
        for (name, v) in [("c", &self.c), ("d", &self.d)] {
            if v.cmp_strict(&zero) != Ordering::Greater || v.cmp_strict(&one) != Ordering::Less {
                return Err(ModelError::validation(
                    format!("{path}.{name}"),
                    format!("contraction {v} must lie in (0,1)"),
                ));
            }
        }
        for (name, t, len) in [("a", &self.a, &self.c), ("b", &self.b, &self.d)] {
            if t.cmp_tolerant(&zero) == Ordering::Less
                || t.add(len).cmp_tolerant(&one) == Ordering::Greater
            {
                return Err(ModelError::validation(
                    format!("{path}.{name}"),
                    "image rectangle leaves the unit square",
                ));
            }
        }
        Ok(())
    }

    pub fn apply(&self, p: [f64; 2]) -> [f64; 2] {
        [
            self.c.value() * p[0] + self.a.value(),
            self.d.value() * p[1] + self.b.value(),
        ]
    }

    pub fn is_similarity(&self) -> bool {
        self.c.cmp_tolerant(&self.d) == Ordering::Equal
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CarpetClass {
    Horizontal,
    Vertical,
    Mixed,
    SelfSimilar,
}

impl fmt::Display for CarpetClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CarpetClass::Horizontal => "Horizontal",
            CarpetClass::Vertical => "Vertical",
            CarpetClass::Mixed => "Mixed",
            CarpetClass::SelfSimilar => "SelfSimilar",
        };
        f.write_str(s)
    }
}

/// A full-grid carpet: the square is cut into columns and rows and a subset
/// of the grid cells is kept.
#[derive(Clone, Debug, PartialEq)]
pub struct BaranskiCarpet {
    columns: Vec<Scalar>,
    rows: Vec<Scalar>,
    cells: Vec<(usize, usize)>,
}

impl BaranskiCarpet {
    pub fn new(
        columns: Vec<Scalar>,
        rows: Vec<Scalar>,
        cells: Vec<(usize, usize)>,
    ) -> Result<Self, ModelError> {
        check_partition(&columns, "columns", 2)?;
        check_partition(&rows, "rows", 2)?;
        if cells.len() < 2 {
            return Err(ModelError::validation("cells", "at least two cells are required"));
        }
        let mut seen = HashSet::new();
        for (k, &(col, row)) in cells.iter().enumerate() {
            if col >= columns.len() || row >= rows.len() {
                return Err(ModelError::validation(
                    format!("cells[{k}]"),
                    format!("cell ({col},{row}) outside the {}x{} grid", columns.len(), rows.len()),
                ));
            }
            if !seen.insert((col, row)) {
                return Err(ModelError::validation(
                    format!("cells[{k}]"),
                    format!("duplicate cell ({col},{row})"),
                ));
            }
        }
        let carpet = BaranskiCarpet { columns, rows, cells };
        for (k, m) in carpet.maps().iter().enumerate() {
            m.check(&format!("cells[{k}]"))?;
        }
        Ok(carpet)
    }

    pub fn columns(&self) -> &[Scalar] {
        &self.columns
    }

    pub fn rows(&self) -> &[Scalar] {
        &self.rows
    }

    pub fn cells(&self) -> &[(usize, usize)] {
        &self.cells
    }

    pub fn column_offsets(&self) -> Vec<Scalar> {
        cumulative(&self.columns)
    }

    pub fn row_offsets(&self) -> Vec<Scalar> {
        cumulative(&self.rows)
    }

    pub fn maps(&self) -> Vec<AffineMap2D> {
        let xs = self.column_offsets();
        let ys = self.row_offsets();
        self.cells
            .iter()
            .map(|&(i, j)| AffineMap2D {
                c: self.columns[i].clone(),
                d: self.rows[j].clone(),
                a: xs[i].clone(),
                b: ys[j].clone(),
            })
            .collect()
    }

    /// Reflects the carpet in the diagonal: columns become rows.
    pub fn transpose(&self) -> BaranskiCarpet {
        BaranskiCarpet {
            columns: self.rows.clone(),
            rows: self.columns.clone(),
            cells: self.cells.iter().map(|&(i, j)| (j, i)).collect(),
        }
    }

    /// The same attractor seen as a column carpet.  Only valid when every
    /// cell is at least as wide as it is tall.
    pub fn to_lalley_gatzouras(&self) -> Result<LgCarpet, ModelError> {
        let ys = self.row_offsets();
        let columns = self
            .columns
            .iter()
            .enumerate()
            .map(|(i, w)| LgColumn {
                width: w.clone(),
                cells: self
                    .cells
                    .iter()
                    .filter(|&&(ci, _)| ci == i)
                    .map(|&(_, j)| LgCell {
                        height: self.rows[j].clone(),
                        offset: ys[j].clone(),
                    })
                    .collect(),
            })
            .collect();
        LgCarpet::new(columns)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LgCell {
    pub height: Scalar,
    pub offset: Scalar,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LgColumn {
    pub width: Scalar,
    pub cells: Vec<LgCell>,
}

/// A column carpet in the extended Lalley-Gatzouras class: each column is
/// cut independently and every kept cell is at least as wide as it is tall.
#[derive(Clone, Debug, PartialEq)]
pub struct LgCarpet {
    columns: Vec<LgColumn>,
    offsets: Vec<Scalar>,
}

impl LgCarpet {
    pub fn new(columns: Vec<LgColumn>) -> Result<Self, ModelError> {
        let widths: Vec<Scalar> = columns.iter().map(|c| c.width.clone()).collect();
        check_partition(&widths, "columns", 1)?;
        let total: usize = columns.iter().map(|c| c.cells.len()).sum();
        if total < 2 {
            return Err(ModelError::validation("columns", "at least two cells are required"));
        }
        let zero = Scalar::zero();
        let one = Scalar::one();
        for (ci, col) in columns.iter().enumerate() {
            for (k, cell) in col.cells.iter().enumerate() {
                let path = format!("columns[{ci}].cells[{k}]");
                if cell.height.cmp_strict(&zero) != Ordering::Greater {
                    return Err(ModelError::validation(format!("{path}.height"), "height must be positive"));
                }
                if cell.offset.cmp_strict(&zero) == Ordering::Less
                    || cell.offset.add(&cell.height).cmp_tolerant(&one) == Ordering::Greater
                {
                    return Err(ModelError::validation(
                        format!("{path}.offset"),
                        "cell extends outside the unit square",
                    ));
                }
                if cell.height.cmp_tolerant(&col.width) == Ordering::Greater {
                    return Err(ModelError::validation(
                        format!("{path}.height"),
                        format!("height {} exceeds column width {}", cell.height, col.width),
                    ));
                }
            }
            let mut order: Vec<&LgCell> = col.cells.iter().collect();
            order.sort_by(|a, b| a.offset.cmp_strict(&b.offset));
            for w in order.windows(2) {
                if w[0].offset.add(&w[0].height).cmp_tolerant(&w[1].offset) == Ordering::Greater {
                    return Err(ModelError::validation(
                        format!("columns[{ci}].cells"),
                        "cells overlap within the column",
                    ));
                }
            }
        }
        let offsets = cumulative(&widths);
        let carpet = LgCarpet { columns, offsets };
        for (k, m) in carpet.maps().iter().enumerate() {
            m.check(&format!("maps[{k}]"))?;
        }
        Ok(carpet)
    }

    pub fn columns(&self) -> &[LgColumn] {
        &self.columns
    }

    pub fn column_offsets(&self) -> &[Scalar] {
        &self.offsets
    }

    /// Maps in column-major order.
    pub fn maps(&self) -> Vec<AffineMap2D> {
        self.columns
            .iter()
            .zip(&self.offsets)
            .flat_map(|(col, x)| {
                col.cells.iter().map(move |cell| AffineMap2D {
                    c: col.width.clone(),
                    d: cell.height.clone(),
                    a: x.clone(),
                    b: cell.offset.clone(),
                })
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Carpet {
    Baranski(BaranskiCarpet),
    LalleyGatzouras(LgCarpet),
}

/// The maps sharing one column (or row) of the defining pattern.
#[derive(Clone, Debug, PartialEq)]
pub struct Strip {
    /// Index of the column/row in the pattern.
    pub index: usize,
    /// Common width (column) or height (row).
    pub size: Scalar,
    pub offset: Scalar,
    /// Map indices found in this strip.
    pub members: Vec<usize>,
}

impl Carpet {
    pub fn maps(&self) -> Vec<AffineMap2D> {
        match self {
            Carpet::Baranski(b) => b.maps(),
            Carpet::LalleyGatzouras(l) => l.maps(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Carpet::Baranski(b) => b.cells.len(),
            Carpet::LalleyGatzouras(l) => l.columns.iter().map(|c| c.cells.len()).sum(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Non-empty columns, left to right.
    pub fn columns(&self) -> Vec<Strip> {
        match self {
            Carpet::Baranski(b) => strips(&b.columns, b.cells.iter().map(|c| c.0)),
            Carpet::LalleyGatzouras(l) => {
                let mut next = 0;
                let mut out = Vec::new();
                for (i, col) in l.columns.iter().enumerate() {
                    let members: Vec<usize> = (next..next + col.cells.len()).collect();
                    next += col.cells.len();
                    if !members.is_empty() {
                        out.push(Strip {
                            index: i,
                            size: col.width.clone(),
                            offset: l.offsets[i].clone(),
                            members,
                        });
                    }
                }
                out
            }
        }
    }

    /// Non-empty rows, bottom to top.  Only grid carpets have rows.
    pub fn rows(&self) -> Option<Vec<Strip>> {
        match self {
            Carpet::Baranski(b) => Some(strips(&b.rows, b.cells.iter().map(|c| c.1))),
            Carpet::LalleyGatzouras(_) => None,
        }
    }

    pub fn column_of(&self, map: usize) -> Option<Strip> {
        self.columns().into_iter().find(|s| s.members.contains(&map))
    }

    pub fn row_of(&self, map: usize) -> Option<Strip> {
        self.rows()?.into_iter().find(|s| s.members.contains(&map))
    }
}

fn strips(sizes: &[Scalar], owner: impl Iterator<Item = usize>) -> Vec<Strip> {
    let offsets = cumulative(sizes);
    let mut members = vec![Vec::new(); sizes.len()];
    for (map, strip) in owner.enumerate() {
        members[strip].push(map);
    }
    members
        .into_iter()
        .enumerate()
        .filter(|(_, m)| !m.is_empty())
        .map(|(index, members)| Strip {
            index,
            size: sizes[index].clone(),
            offset: offsets[index].clone(),
            members,
        })
        .collect()
}

fn cumulative(sizes: &[Scalar]) -> Vec<Scalar> {
    let mut acc = Scalar::zero();
    sizes
        .iter()
        .map(|s| {
            let here = acc.clone();
            acc = acc.add(s);
            here
        })
        .collect()
}

fn check_partition(parts: &[Scalar], path: &str, min_len: usize) -> Result<(), ModelError> {
    if parts.len() < min_len {
        return Err(ModelError::validation(
            path,
            format!("at least {min_len} entries are required"),
        ));
    }
    for (k, p) in parts.iter().enumerate() {
        if p.cmp_strict(&Scalar::zero()) != Ordering::Greater {
            return Err(ModelError::validation(format!("{path}[{k}]"), "size must be positive"));
        }
    }
    let total = Scalar::sum(parts);
    let ok = match total.as_exact() {
        Some(_) => total.cmp_strict(&Scalar::one()) == Ordering::Equal,
        None => (total.value() - 1.0).abs() <= SUM_TOLERANCE,
    };
    if !ok {
        return Err(ModelError::validation(
            path,
            format!("widths sum ≠ 1 (sum is {total})"),
        ));
    }
    Ok(())
}

/// Sorts the maps into the four classes by comparing horizontal and vertical
/// contraction.
pub fn classify(carpet: &Carpet) -> CarpetClass {
    classify_maps(&carpet.maps())
}

pub fn classify_maps(maps: &[AffineMap2D]) -> CarpetClass {
    let mut wider = false;
    let mut taller = false;
    for m in maps {
        match m.c.cmp_tolerant(&m.d) {
            Ordering::Greater => wider = true,
            Ordering::Less => taller = true,
            Ordering::Equal => {}
        }
    }
    match (wider, taller) {
        (false, false) => CarpetClass::SelfSimilar,
        (true, false) => CarpetClass::Horizontal,
        (false, true) => CarpetClass::Vertical,
        (true, true) => CarpetClass::Mixed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    fn mixed_example() -> BaranskiCarpet {
        BaranskiCarpet::new(
            vec![q(1, 5), q(4, 5)],
            vec![q(1, 4); 4],
            vec![(0, 0), (0, 2), (1, 1), (1, 3)],
        )
        .unwrap()
    }

    #[test]
    fn classifies_mixed_example() {
        assert_eq!(classify(&Carpet::Baranski(mixed_example())), CarpetClass::Mixed);
    }

    #[test]
    fn classifies_lg_horizontal() {
        let lg = LgCarpet::new(vec![
            LgColumn {
                width: q(1, 2),
                cells: vec![
                    LgCell { height: q(1, 3), offset: q(0, 1) },
                    LgCell { height: q(1, 3), offset: q(2, 3) },
                ],
            },
            LgColumn { width: q(1, 2), cells: vec![LgCell { height: q(1, 3), offset: q(1, 3) }] },
        ])
        .unwrap();
        assert_eq!(classify(&Carpet::LalleyGatzouras(lg)), CarpetClass::Horizontal);
    }

    #[test]
    fn uniform_grid_is_self_similar() {
        let b = BaranskiCarpet::new(vec![q(1, 2); 2], vec![q(1, 2); 2], vec![(0, 0), (1, 1)]).unwrap();
        assert_eq!(classify(&Carpet::Baranski(b)), CarpetClass::SelfSimilar);
    }

    #[test]
    fn transpose_swaps_horizontal_and_vertical() {
        let b = BaranskiCarpet::new(vec![q(1, 2); 2], vec![q(1, 3); 3], vec![(0, 0), (1, 2)]).unwrap();
        assert_eq!(classify(&Carpet::Baranski(b.clone())), CarpetClass::Horizontal);
        assert_eq!(classify(&Carpet::Baranski(b.transpose())), CarpetClass::Vertical);
        assert_eq!(classify(&Carpet::Baranski(mixed_example().transpose())), CarpetClass::Mixed);
    }

    #[test]
    fn rejects_bad_partitions() {
        let err = BaranskiCarpet::new(vec![0.5.into(), 0.6.into()], vec![q(1, 2); 2], vec![(0, 0), (1, 1)]).unwrap_err();
        assert!(err.to_string().contains("widths sum ≠ 1"), "{err}");
        assert!(BaranskiCarpet::new(vec![q(1, 1)], vec![q(1, 2); 2], vec![(0, 0), (0, 1)]).is_err());
        assert!(BaranskiCarpet::new(vec![q(1, 2); 2], vec![q(1, 2); 2], vec![(0, 0)]).is_err());
        assert!(BaranskiCarpet::new(vec![q(1, 2); 2], vec![q(1, 2); 2], vec![(0, 0), (0, 0)]).is_err());
        assert!(BaranskiCarpet::new(vec![q(1, 2); 2], vec![q(1, 2); 2], vec![(0, 0), (2, 0)]).is_err());
    }

    #[test]
    fn rejects_tall_or_overlapping_lg_cells() {
        let tall = LgCarpet::new(vec![
            LgColumn { width: q(1, 4), cells: vec![LgCell { height: q(1, 2), offset: q(0, 1) }] },
            LgColumn { width: q(3, 4), cells: vec![LgCell { height: q(1, 2), offset: q(0, 1) }] },
        ]);
        assert!(tall.is_err());
        let overlap = LgCarpet::new(vec![
            LgColumn {
                width: q(1, 2),
                cells: vec![
                    LgCell { height: q(1, 3), offset: q(0, 1) },
                    LgCell { height: q(1, 3), offset: q(1, 4) },
                ],
            },
            LgColumn { width: q(1, 2), cells: vec![] },
        ]);
        assert!(overlap.unwrap_err().to_string().contains("overlap"));
    }

    #[test]
    fn derived_maps_have_disjoint_interiors() {
        let maps = mixed_example().maps();
        for (i, m) in maps.iter().enumerate() {
            for n in &maps[i + 1..] {
                let sep_x = m.a.add(&m.c).cmp_strict(&n.a) != Ordering::Greater
                    || n.a.add(&n.c).cmp_strict(&m.a) != Ordering::Greater;
                let sep_y = m.b.add(&m.d).cmp_strict(&n.b) != Ordering::Greater
                    || n.b.add(&n.d).cmp_strict(&m.b) != Ordering::Greater;
                assert!(sep_x || sep_y);
            }
        }
    }

    #[test]
    fn strips_group_by_membership() {
        let c = Carpet::Baranski(mixed_example());
        let cols = c.columns();
        assert_eq!(cols.len(), 2);
        assert_eq!(cols[0].members, vec![0, 1]);
        assert_eq!(cols[1].members, vec![2, 3]);
        let rows = c.rows().unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows.iter().all(|r| r.members.len() == 1));
    }
}
