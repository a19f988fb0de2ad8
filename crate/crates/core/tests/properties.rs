use fracdim::exact::{
    carpet_quantities, carpet_report, dichotomy_check, DichotomyVerdict, HausdorffSettings,
};
use fracdim::model::{
    classify, parse_system, render_system, Carpet, CarpetClass, Scalar, SimilarityIfs1D, System,
};
use fracdim::moran::{self, similarity_dimension_of, MoranEquation, MoranTerm, DEFAULT_TOLERANCE};
use fracdim::sample::{random_baranski, random_lg};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SLACK: f64 = 1e-9;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn transposed(c: &Carpet) -> Carpet {
    match c {
        Carpet::Baranski(b) => Carpet::Baranski(b.transpose()),
        _ => unreachable!(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn render_then_parse_is_identity(seed in any::<u64>(), lg in any::<bool>()) {
        let mut r = rng(seed);
        let carpet = if lg { random_lg(&mut r) } else { random_baranski(&mut r) };
        let sys = System::Carpet(carpet);
        prop_assert_eq!(parse_system(&render_system(&sys)).unwrap(), sys);
    }

    #[test]
    fn transposing_swaps_horizontal_and_vertical(seed in any::<u64>()) {
        let c = random_baranski(&mut rng(seed));
        let expect = match classify(&c) {
            CarpetClass::Horizontal => CarpetClass::Vertical,
            CarpetClass::Vertical => CarpetClass::Horizontal,
            other => other,
        };
        prop_assert_eq!(classify(&transposed(&c)), expect);
    }

    #[test]
    fn map_images_are_interior_disjoint(seed in any::<u64>(), lg in any::<bool>()) {
        let mut r = rng(seed);
        let carpet = if lg { random_lg(&mut r) } else { random_baranski(&mut r) };
        let maps = carpet.maps();
        for (i, a) in maps.iter().enumerate() {
            let (ax, ay) = (a.a.value(), a.b.value());
            prop_assert!(ax >= -1e-12 && ay >= -1e-12);
            prop_assert!(ax + a.c.value() <= 1.0 + 1e-12 && ay + a.d.value() <= 1.0 + 1e-12);
            for b in &maps[i + 1..] {
                let x_overlap = ax.max(b.a.value()) < (ax + a.c.value()).min(b.a.value() + b.c.value()) - 1e-12;
                let y_overlap = ay.max(b.b.value()) < (ay + a.d.value()).min(b.b.value() + b.d.value()) - 1e-12;
                prop_assert!(!(x_overlap && y_overlap));
            }
        }
    }

    #[test]
    fn implicit_exponents_lie_between_slice_bounds(seed in any::<u64>(), lg in any::<bool>()) {
        let mut r = rng(seed);
        let carpet = if lg { random_lg(&mut r) } else { random_baranski(&mut r) };
        let q = carpet_quantities(&carpet).unwrap();
        prop_assert!(q.u1 <= q.t1);
        prop_assert!(q.s1 + q.u1 <= q.da + SLACK && q.da <= q.s1 + q.t1 + SLACK);
        if let (Some(s2), Some(t2), Some(u2), Some(db)) = (q.s2, q.t2, q.u2, q.db) {
            prop_assert!(u2 <= t2);
            prop_assert!(s2 + u2 <= db + SLACK && db <= s2 + t2 + SLACK);
        }
    }

    #[test]
    fn transposition_swaps_quantities_exactly(seed in any::<u64>()) {
        let c = random_baranski(&mut rng(seed));
        let q = carpet_quantities(&c).unwrap();
        let t = carpet_quantities(&transposed(&c)).unwrap();
        prop_assert_eq!((q.s1, q.t1, q.u1, q.da), (t.s2.unwrap(), t.t2.unwrap(), t.u2.unwrap(), t.db.unwrap()));
        prop_assert_eq!((q.s2.unwrap(), q.t2.unwrap(), q.u2.unwrap(), q.db.unwrap()), (t.s1, t.t1, t.u1, t.da));
    }

    #[test]
    fn similarity_dimension_grows_with_ratios(ratios in prop::collection::vec(0.05f64..0.45, 2..5), k in 0usize..4, bump in 0.01f64..0.05) {
        let k = k % ratios.len();
        let mut bigger = ratios.clone();
        bigger[k] += bump;
        prop_assert!(similarity_dimension_of(&bigger, DEFAULT_TOLERANCE) > similarity_dimension_of(&ratios, DEFAULT_TOLERANCE));
    }

    #[test]
    fn repeated_ratio_closed_form(n in 2usize..9, r in 0.01f64..0.99) {
        let s = similarity_dimension_of(&vec![r; n], DEFAULT_TOLERANCE);
        prop_assert!((s - (n as f64).ln() / (1.0 / r).ln()).abs() < 1e-10);
    }

    #[test]
    fn root_stays_in_bracket_with_small_residual(ratios in prop::collection::vec(0.01f64..0.9, 2..6)) {
        let eq = MoranEquation::similarity(&ratios).unwrap();
        let s = moran::solve_moran(&eq, DEFAULT_TOLERANCE).unwrap();
        let (lo, hi) = eq.bracket();
        prop_assert!(s >= lo && s <= hi);
        prop_assert!((eq.evaluate(s) - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn weighted_equation_residual(w in prop::collection::vec((0.1f64..2.0, 0.05f64..0.95), 2..6)) {
        let terms = w.iter().map(|&(a, b)| MoranTerm::new(a, b).unwrap()).collect();
        let eq = MoranEquation::new(terms).unwrap();
        let s = moran::solve_moran(&eq, DEFAULT_TOLERANCE).unwrap();
        if eq.is_degenerate() {
            prop_assert_eq!(s, 0.0);
        } else {
            prop_assert!((eq.evaluate(s) - 1.0).abs() <= 1e-10);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn reports_keep_the_chain_and_dichotomy(seed in any::<u64>(), lg in any::<bool>()) {
        let mut r = rng(seed);
        let carpet = if lg { random_lg(&mut r) } else { random_baranski(&mut r) };
        let settings = HausdorffSettings { restarts: 4, ..HausdorffSettings::default() };
        let report = carpet_report(&carpet, DEFAULT_TOLERANCE, &settings).unwrap();
        let l = report.lower.value().unwrap();
        let b = report.box_dim.value().unwrap();
        let a = report.assouad.value().unwrap();
        prop_assert!(l > 0.0);
        prop_assert!(l <= b + SLACK && b <= a + SLACK);
        if let Some(h) = report.hausdorff.value() {
            prop_assert!(l <= h + SLACK && h <= b + SLACK);
        }
        let d = dichotomy_check(&report, report.class);
        prop_assert_ne!(d.verdict, DichotomyVerdict::Other, "{:?}", d);
    }
}

#[test]
fn uniform_columns_collapse_to_one_value() {
    // Every occupied column has heights {1/4, 1/4}.
    let c = fracdim::fixtures::baranski(
        &[(1, 3), (1, 3), (1, 3)],
        &[(1, 4); 4],
        &[(0, 0), (0, 3), (2, 1), (2, 2)],
    );
    let r = carpet_report(&c, DEFAULT_TOLERANCE, &HausdorffSettings::default()).unwrap();
    assert_eq!(r.dichotomy.unwrap().verdict, DichotomyVerdict::AllEqual);
}

#[test]
fn exact_classification_uses_rationals() {
    // 1/3 written as a decimal string stays exact and equals 1/3 as a ratio.
    let text = r#"{"kind":"baranski","columns":["1/3","2/3"],"rows":["1/3","2/3"],"cells":[[0,0],[1,1]]}"#;
    let System::Carpet(c) = parse_system(text).unwrap() else { unreachable!() };
    assert_eq!(classify(&c), CarpetClass::SelfSimilar);
    assert_eq!(Scalar::ratio(1, 3).cmp_strict(&"1/3".parse().unwrap()), std::cmp::Ordering::Equal);
    let _ = SimilarityIfs1D::from_ratios(&[Scalar::ratio(1, 3)]).unwrap();
}
