use std::cmp::Ordering;

use super::{AttractorError, Generator, Word};
use crate::model::Scalar;

/// The stopping `I_r`: the words whose shorter side first drops below `r`,
/// i.e. `α2(w) < r ≤ α2(parent of w)`, in lexicographic order.
///
/// Comparisons are exact when the maps and `r` are rational.
pub fn r_stopping(gen: &Generator, r: &Scalar, cap: u64) -> Result<Vec<Word>, AttractorError> {
    if !(r.value() > 0.0 && r.value() < 1.0) {
        return Err(AttractorError::Scale(r.value()));
    }
    let mut out = Vec::new();
    let mut visited: u64 = 0;
    let mut stack = vec![Word::empty()];
    while let Some(w) = stack.pop() {
        visited += 1;
        if visited > cap {
            return Err(AttractorError::Budget {
                detail: format!("r-stopping at r = {r} visits more than {cap} words"),
                cap,
            });
        }
        if !w.is_empty() && w.alpha2().cmp_strict(r) == Ordering::Less {
            out.push(w);
            continue;
        }
        for (k, m) in gen.letters().iter().enumerate().rev() {
            stack.push(w.child(k, m));
        }
    }
    Ok(out)
}

/// An eventually periodic infinite word `prefix · period · period · ⋯`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicSequence {
    prefix: Vec<usize>,
    period: Vec<usize>,
}

impl SymbolicSequence {
    pub fn new(prefix: Vec<usize>, period: Vec<usize>) -> Result<Self, AttractorError> {
        if period.is_empty() {
            return Err(AttractorError::Sequence("period must be non-empty".into()));
        }
        Ok(SymbolicSequence { prefix, period })
    }

    /// The constant sequence `k k k ⋯`.
    pub fn constant(k: usize) -> Self {
        SymbolicSequence { prefix: Vec::new(), period: vec![k] }
    }

    /// The `k`-th letter (0-based).
    pub fn letter(&self, k: usize) -> usize {
        if k < self.prefix.len() {
            self.prefix[k]
        } else {
            self.period[(k - self.prefix.len()) % self.period.len()]
        }
    }

    pub fn truncate(&self, k: usize) -> Vec<usize> {
        (0..k).map(|i| self.letter(i)).collect()
    }

    fn check(&self, gen: &Generator) -> Result<(), AttractorError> {
        match self.prefix.iter().chain(&self.period).find(|&&k| k >= gen.len()) {
            Some(k) => Err(AttractorError::Sequence(format!(
                "letter {k} out of range for {} maps",
                gen.len()
            ))),
            None => Ok(()),
        }
    }

    /// The coded point `Π(i) = lim S_{i|k}(0)`: the fixed point of the period
    /// word pushed through the prefix word.  Exact for rational maps.
    pub fn point(&self, gen: &Generator) -> Result<[Scalar; 2], AttractorError> {
        self.check(gen)?;
        let period = Word::from_indices(gen, &self.period);
        let one = Scalar::one();
        let fx = period.a.div(&one.sub(&period.c));
        let fy = period.b.div(&one.sub(&period.d));
        let pre = Word::from_indices(gen, &self.prefix);
        Ok([pre.a.add(&pre.c.mul(&fx)), pre.b.add(&pre.d.mul(&fy))])
    }
}

/// `Q(i, r)`: horizontal extent of the cylinder at depth `k1` and vertical
/// extent of the cylinder at depth `k2`.
#[derive(Clone, Debug, PartialEq)]
pub struct ApproximateSquare {
    pub k1: usize,
    pub k2: usize,
    pub r: Scalar,
    pub x0: Scalar,
    pub y0: Scalar,
    pub width: Scalar,
    pub height: Scalar,
}

impl ApproximateSquare {
    pub fn rect(&self) -> [f64; 4] {
        [self.x0.value(), self.y0.value(), self.width.value(), self.height.value()]
    }
}

/// Builds `Q(i, r)` where `k1` is the unique depth with
/// `c_{i|k1+1} < r ≤ c_{i|k1}` and `k2` the same for the vertical sides.
pub fn approximate_square(
    gen: &Generator,
    seq: &SymbolicSequence,
    r: &Scalar,
) -> Result<ApproximateSquare, AttractorError> {
    if !(r.value() > 0.0 && r.value() < 1.0) {
        return Err(AttractorError::Scale(r.value()));
    }
    seq.check(gen)?;
    let mut w = Word::empty();
    let mut k1 = None;
    let mut k2 = None;
    let mut horizontal = None;
    let mut vertical = None;
    let mut k = 0;
    while k1.is_none() || k2.is_none() {
        let next = w.child(seq.letter(k), &gen.letters()[seq.letter(k)]);
        if k1.is_none() && next.c.cmp_strict(r) == Ordering::Less {
            k1 = Some(k);
            horizontal = Some((w.a.clone(), w.c.clone()));
        }
        if k2.is_none() && next.d.cmp_strict(r) == Ordering::Less {
            k2 = Some(k);
            vertical = Some((w.b.clone(), w.d.clone()));
        }
        w = next;
        k += 1;
    }
    let (x0, width) = horizontal.expect("set with k1");
    let (y0, height) = vertical.expect("set with k2");
    Ok(ApproximateSquare {
        k1: k1.expect("loop exits with k1"),
        k2: k2.expect("loop exits with k2"),
        r: r.clone(),
        x0,
        y0,
        width,
        height,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::attractor::DEFAULT_WORD_CAP;
    use crate::fixtures;

    fn eq(a: &Scalar, b: &Scalar) -> bool {
        a.cmp_strict(b) == Ordering::Equal
    }

    #[test]
    fn lg_stopping_just_above_a_third() {
        let gen = Generator::from_carpet(&fixtures::lg_carpet());
        let words = r_stopping(&gen, &Scalar::ratio(34, 100), DEFAULT_WORD_CAP).unwrap();
        assert_eq!(words.len(), 3);
        assert!(words.iter().all(|w| w.len() == 1));
    }

    #[test]
    fn lg_stopping_at_a_quarter() {
        let gen = Generator::from_carpet(&fixtures::lg_carpet());
        let words = r_stopping(&gen, &Scalar::ratio(1, 4), DEFAULT_WORD_CAP).unwrap();
        assert_eq!(words.len(), 9);
        assert!(words.iter().all(|w| w.len() == 2 && eq(w.alpha2(), &Scalar::ratio(1, 9))));
    }

    #[test]
    fn large_r_gives_single_letters() {
        let gen = Generator::from_carpet(&fixtures::mixed_carpet());
        let words = r_stopping(&gen, &Scalar::ratio(9, 10), DEFAULT_WORD_CAP).unwrap();
        assert_eq!(words.len(), 4);
    }

    #[test]
    fn lg_square_at_origin() {
        let gen = Generator::from_carpet(&fixtures::lg_carpet());
        let q = approximate_square(&gen, &SymbolicSequence::constant(0), &Scalar::ratio(1, 9)).unwrap();
        assert_eq!((q.k1, q.k2), (3, 2));
        assert!(eq(&q.x0, &Scalar::zero()) && eq(&q.y0, &Scalar::zero()));
        assert!(eq(&q.width, &Scalar::ratio(1, 8)));
        assert!(eq(&q.height, &Scalar::ratio(1, 9)));
    }

    #[test]
    fn mixed_square_for_repeated_cell() {
        // Cell (column 1, row 1) is map 2 in the fixture.
        let gen = Generator::from_carpet(&fixtures::mixed_carpet());
        let q = approximate_square(&gen, &SymbolicSequence::constant(2), &Scalar::ratio(1, 5)).unwrap();
        assert_eq!((q.k1, q.k2), (7, 1));
        assert!(eq(&q.height, &Scalar::ratio(1, 4)));
        assert!(eq(&q.width, &Scalar::ratio(4i64.pow(7), 5i64.pow(7))));
    }

    #[test]
    fn similarities_give_cylinders() {
        let gen = Generator::from_carpet(&fixtures::full_grid());
        let seq = SymbolicSequence::new(vec![1, 3], vec![2, 0]).unwrap();
        let q = approximate_square(&gen, &seq, &Scalar::ratio(1, 10)).unwrap();
        assert_eq!(q.k1, q.k2);
        let w = Word::from_indices(&gen, &seq.truncate(q.k1));
        assert_eq!(q.rect(), w.rect());
    }

    #[test]
    fn coded_point_of_constant_sequence_is_fixed_point() {
        let gen = Generator::from_carpet(&fixtures::lg_carpet());
        // Map 1 is (x/2, y/3 + 2/3): fixed point (0, 1).
        let [x, y] = SymbolicSequence::constant(1).point(&gen).unwrap();
        assert!(eq(&x, &Scalar::zero()) && eq(&y, &Scalar::one()));
    }

    #[test]
    fn bad_inputs() {
        let gen = Generator::from_carpet(&fixtures::lg_carpet());
        assert!(r_stopping(&gen, &Scalar::one(), 10).is_err());
        assert!(SymbolicSequence::new(vec![0], vec![]).is_err());
        assert!(SymbolicSequence::constant(7).point(&gen).is_err());
        assert!(matches!(
            r_stopping(&gen, &Scalar::ratio(1, 1000), 50),
            Err(AttractorError::Budget { .. })
        ));
    }
}
