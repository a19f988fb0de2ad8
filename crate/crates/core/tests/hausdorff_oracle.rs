//! The variational Hausdorff formula checked against McMullen's closed form
//! `log_m Σ_i t_i^{log m / log n}` for grids with `m` columns and `n > m` rows.

use fracdim::exact::{box_dimension, hausdorff_dimension_lg, hausdorff_objective, HausdorffSettings};
use fracdim::model::{BaranskiCarpet, Carpet, LgCarpet};
use fracdim::sample::random_mcmullen;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Independent closed form; `occupancy[i]` is the number of cells in column `i`.
fn mcmullen(m: usize, n: usize, occupancy: &[usize]) -> f64 {
    let theta = (m as f64).ln() / (n as f64).ln();
    let sum: f64 = occupancy
        .iter()
        .filter(|&&t| t > 0)
        .map(|&t| (t as f64).powf(theta))
        .sum();
    sum.ln() / (m as f64).ln()
}

fn as_lg(c: &Carpet) -> LgCarpet {
    match c {
        Carpet::Baranski(b) => BaranskiCarpet::to_lalley_gatzouras(b).unwrap(),
        Carpet::LalleyGatzouras(l) => l.clone(),
    }
}

#[test]
fn oracle_reproduces_the_two_by_three_value() {
    // Occupancies (2, 1): log_2(2^{log 2/log 3} + 1).
    let v = mcmullen(2, 3, &[2, 1]);
    assert!((v - 1.349_683_820_195_577).abs() < 1e-12, "{v}");
}

#[test]
fn optimizer_matches_oracle_on_random_grids() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let settings = HausdorffSettings::default();
    for _ in 0..25 {
        let g = random_mcmullen(&mut rng, false);
        let occ: Vec<usize> = g.occupancy.iter().map(Vec::len).collect();
        let lg = as_lg(&g.carpet());
        let got = hausdorff_dimension_lg(&lg, &settings).unwrap().dimension;
        let want = mcmullen(g.m, g.n, &occ);
        assert!((got - want).abs() < 1e-6, "{g:?}: {got} vs {want}");
    }
}

#[test]
fn uniform_fibres_give_box_dimension() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..15 {
        let g = random_mcmullen(&mut rng, true);
        let carpet = g.carpet();
        let h = hausdorff_dimension_lg(&as_lg(&carpet), &HausdorffSettings::default())
            .unwrap()
            .dimension;
        let b = box_dimension(&carpet).unwrap();
        assert!((h - b).abs() < 1e-9, "{g:?}: {h} vs {b}");
    }
}

#[test]
fn returned_point_is_stationary_on_the_simplex() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let g = random_mcmullen(&mut rng, false);
        let lg = as_lg(&g.carpet());
        let opt = hausdorff_dimension_lg(&lg, &HausdorffSettings::default()).unwrap();
        let p = &opt.distribution;
        let h = 1e-6;
        let grad: Vec<f64> = (0..p.len())
            .map(|k| {
                let mut up = p.clone();
                up[k] += h;
                let mut down = p.clone();
                down[k] -= h;
                (hausdorff_objective(&lg, &up) - hausdorff_objective(&lg, &down)) / (2.0 * h)
            })
            .collect();
        let mean = grad.iter().sum::<f64>() / grad.len() as f64;
        let norm = grad.iter().map(|x| (x - mean).powi(2)).sum::<f64>().sqrt();
        assert!(p.iter().all(|&x| x > 0.0), "optimum should be interior: {p:?}");
        assert!(norm <= 1e-6, "{g:?}: projected gradient {norm}");
    }
}
