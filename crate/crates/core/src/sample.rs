//! Seeded random carpets with exact rational entries, for property tests and
//! the acceptance harness.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::model::{BaranskiCarpet, Carpet, LgCarpet, LgCell, LgColumn, Scalar};

/// `n` positive rationals with small integer weights summing to exactly 1.
pub fn partition<R: Rng>(rng: &mut R, n: usize) -> Vec<Scalar> {
    let weights: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=6)).collect();
    let total: i64 = weights.iter().sum();
    weights.into_iter().map(|w| Scalar::ratio(w, total)).collect()
}

/// A grid carpet with 2–4 columns and rows, random widths and heights and at
/// least two cells.  Any class can come out.
pub fn random_baranski<R: Rng>(rng: &mut R) -> Carpet {
    let m = rng.gen_range(2..=4);
    let n = rng.gen_range(2..=4);
    let columns = partition(rng, m);
    let rows = partition(rng, n);
    let mut all: Vec<(usize, usize)> = (0..m).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    all.shuffle(rng);
    let k = rng.gen_range(2..=all.len());
    all.truncate(k);
    all.sort_unstable();
    Carpet::Baranski(BaranskiCarpet::new(columns, rows, all).expect("generated grid is valid"))
}

/// A column carpet with 2–4 columns.  Cells in a column are stacked with
/// random gaps; every height is at most the column width.
pub fn random_lg<R: Rng>(rng: &mut R) -> Carpet {
    loop {
        let m = rng.gen_range(2..=4);
        let widths = partition(rng, m);
        let columns: Vec<LgColumn> = widths
            .into_iter()
            .map(|width| {
                let k = rng.gen_range(0..=3usize);
                let cells = random_column(rng, &width, k);
                LgColumn { width, cells }
            })
            .collect();
        if columns.iter().map(|c| c.cells.len()).sum::<usize>() >= 2 {
            return Carpet::LalleyGatzouras(LgCarpet::new(columns).expect("generated column carpet is valid"));
        }
    }
}

/// `k` cells of height at most `width`, spread bottom to top inside `[0,1]`.
fn random_column<R: Rng>(rng: &mut R, width: &Scalar, k: usize) -> Vec<LgCell> {
    if k == 0 {
        return Vec::new();
    }
    // Heights p/q · width/k keep the column total at most `width` < 1.
    let heights: Vec<Scalar> = (0..k)
        .map(|_| {
            let den = rng.gen_range(2..=7);
            let num = rng.gen_range(1..=den);
            Scalar::ratio(num, den * k as i64).mul(width)
        })
        .collect();
    let used = Scalar::sum(&heights);
    let slack = Scalar::one().sub(&used);
    let gaps = partition(rng, k + 1);
    let mut offset = Scalar::zero();
    let mut cells = Vec::with_capacity(k);
    for (h, g) in heights.into_iter().zip(gaps) {
        offset = offset.add(&g.mul(&slack));
        cells.push(LgCell { height: h.clone(), offset: offset.clone() });
        offset = offset.add(&h);
    }
    cells
}

/// A Bedford-McMullen grid: `m` columns of width `1/m`, `n > m` rows of
/// height `1/n`, and the chosen cells.
#[derive(Clone, Debug)]
pub struct McMullen {
    pub m: usize,
    pub n: usize,
    /// Selected row indices per column.
    pub occupancy: Vec<Vec<usize>>,
}

impl McMullen {
    pub fn carpet(&self) -> Carpet {
        let cells = self
            .occupancy
            .iter()
            .enumerate()
            .flat_map(|(i, rows)| rows.iter().map(move |&j| (i, j)))
            .collect();
        let columns = vec![Scalar::ratio(1, self.m as i64); self.m];
        let rows = vec![Scalar::ratio(1, self.n as i64); self.n];
        Carpet::Baranski(BaranskiCarpet::new(columns, rows, cells).expect("grid is valid"))
    }

    /// True when every occupied column holds the same number of cells.
    pub fn uniform_fibres(&self) -> bool {
        let mut counts = self.occupancy.iter().map(Vec::len).filter(|&t| t > 0);
        let first = counts.next();
        counts.all(|t| Some(t) == first)
    }
}

/// A grid with `2 ≤ m < n ≤ 5` and at least two cells.  With `uniform` every
/// occupied column gets the same number of cells.
pub fn random_mcmullen<R: Rng>(rng: &mut R, uniform: bool) -> McMullen {
    loop {
        let m = rng.gen_range(2..=4);
        let n = rng.gen_range(m + 1..=5);
        let common = rng.gen_range(1..=n);
        let occupancy: Vec<Vec<usize>> = (0..m)
            .map(|_| {
                let t = if uniform {
                    if rng.gen_bool(0.25) { 0 } else { common }
                } else {
                    rng.gen_range(0..=n)
                };
                let mut rows: Vec<usize> = (0..n).collect();
                rows.shuffle(rng);
                rows.truncate(t);
                rows.sort_unstable();
                rows
            })
            .collect();
        if occupancy.iter().map(Vec::len).sum::<usize>() >= 2 {
            return McMullen { m, n, occupancy };
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_produce_valid_carpets() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            assert!(random_baranski(&mut rng).len() >= 2);
            assert!(random_lg(&mut rng).len() >= 2);
            let g = random_mcmullen(&mut rng, true);
            assert!(g.uniform_fibres());
            assert!(g.carpet().len() >= 2);
        }
    }

    #[test]
    fn partitions_are_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let p = partition(&mut rng, 5);
        assert_eq!(Scalar::sum(&p).cmp_strict(&Scalar::one()), std::cmp::Ordering::Equal);
    }
}
