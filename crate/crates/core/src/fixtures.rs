//! Reference systems used by tests, the CLI checks and the documentation.

use crate::model::{BaranskiCarpet, Carpet, LgCarpet, LgCell, LgColumn, Scalar, SimilarityIfs1D};

fn q(n: i64, d: i64) -> Scalar {
    Scalar::ratio(n, d)
}

/// Grid carpet from `(numerator, denominator)` widths and heights.
pub fn baranski(columns: &[(i64, i64)], rows: &[(i64, i64)], cells: &[(usize, usize)]) -> Carpet {
    let cols = columns.iter().map(|&(n, d)| q(n, d)).collect();
    let rows = rows.iter().map(|&(n, d)| q(n, d)).collect();
    Carpet::Baranski(BaranskiCarpet::new(cols, rows, cells.to_vec()).expect("fixture is valid"))
}

/// Columns `1/5, 4/5`, four rows of height `1/4`, two cells per column and
/// one per row.  Dimensions: lower 1, box 1.5, Assouad 1.5.
pub fn mixed_carpet() -> Carpet {
    baranski(&[(1, 5), (4, 5)], &[(1, 4); 4], &[(0, 0), (0, 2), (1, 1), (1, 3)])
}

/// Two columns of width `1/2`; the left holds two cells of height `1/3`, the
/// right holds one.  Map 0 sits at the origin.
pub fn lg_carpet() -> Carpet {
    let cell = |o: i64| LgCell { height: q(1, 3), offset: q(o, 3) };
    Carpet::LalleyGatzouras(
        LgCarpet::new(vec![
            LgColumn { width: q(1, 2), cells: vec![cell(0), cell(2)] },
            LgColumn { width: q(1, 2), cells: vec![cell(1)] },
        ])
        .expect("fixture is valid"),
    )
}

/// [`lg_carpet`] as a grid, reflected in the diagonal (a vertical carpet).
pub fn lg_carpet_as_grid_transposed() -> Carpet {
    baranski(&[(1, 3); 3], &[(1, 2); 2], &[(0, 0), (2, 0), (1, 1)])
}

/// The whole unit square cut into four quarters.
pub fn full_grid() -> Carpet {
    baranski(&[(1, 2); 2], &[(1, 2); 2], &[(0, 0), (0, 1), (1, 0), (1, 1)])
}

/// Middle-third Cantor set.
pub fn cantor() -> SimilarityIfs1D {
    SimilarityIfs1D::from_pairs([(q(1, 3), q(0, 1)), (q(1, 3), q(2, 3))]).expect("fixture is valid")
}

/// `αx`, `βx`, `γx + 1 − γ` with `α = 2^{−√3}`, `β = 1/2`, `γ = 1/10`: the first
/// two images overlap and `log β / log α` is irrational.
pub fn overlap() -> SimilarityIfs1D {
    let alpha = 2f64.powf(-3f64.sqrt());
    SimilarityIfs1D::from_pairs([
        (Scalar::approx(alpha), q(0, 1)),
        (q(1, 2), q(0, 1)),
        (q(1, 10), q(9, 10)),
    ])
    .expect("fixture is valid")
}
