mod support;

use fracdim::attractor::{r_stopping, Generator, SymbolicSequence, DEFAULT_WORD_CAP};
use fracdim::fixtures;
use fracdim::model::Scalar;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use support::stopping::{check_square, check_tiling, check_triple, random_triple};

#[test]
fn random_triples_satisfy_all_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for k in 0..40 {
        let t = random_triple(&mut rng, k);
        if let Err(e) = check_triple(&t) {
            panic!("{} (r = {}): {e}", t.label, t.r);
        }
    }
}

#[test]
fn tiling_check_rejects_a_missing_word() {
    let gen = Generator::from_carpet(&fixtures::lg_carpet());
    let mut words = r_stopping(&gen, &Scalar::ratio(1, 4), DEFAULT_WORD_CAP).unwrap();
    assert!(check_tiling(&gen, &words).is_ok());
    words.remove(4);
    assert!(check_tiling(&gen, &words).is_err());
}

#[test]
fn tiling_check_rejects_nested_words() {
    let gen = Generator::from_carpet(&fixtures::lg_carpet());
    let mut words = r_stopping(&gen, &Scalar::ratio(1, 4), DEFAULT_WORD_CAP).unwrap();
    let parent = fracdim::attractor::Word::from_indices(&gen, &words[0].indices[..1]);
    words.push(parent);
    assert!(check_tiling(&gen, &words).is_err());
}

#[test]
fn worked_example_squares_pass_the_checks() {
    let lg = Generator::from_carpet(&fixtures::lg_carpet());
    check_square(&lg, &SymbolicSequence::constant(0), &Scalar::ratio(1, 9)).unwrap();
    let mixed = Generator::from_carpet(&fixtures::mixed_carpet());
    check_square(&mixed, &SymbolicSequence::constant(2), &Scalar::ratio(1, 5)).unwrap();
}
