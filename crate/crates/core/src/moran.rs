//! Root finding for Moran-type equations `Σ w_k · r_k^s = 1`.
//!
//! Every dimension formula in this crate reduces to one of these: the
//! evaluator is a positive combination of decreasing exponentials, so it is
//! strictly decreasing and convex in `s` and has a single crossing of 1.

use crate::model::SimilarityIfs1D;

/// Default absolute tolerance on the root.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

const MAX_ITERATIONS: usize = 500;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MoranError {
    #[error("bracket [{lower}, {upper}] does not straddle 1 (values {f_lower}, {f_upper})")]
    InvalidBracket {
        lower: f64,
        upper: f64,
        f_lower: f64,
        f_upper: f64,
    },
    #[error("invalid term (weight {weight}, base {base}): weights must be positive and bases in (0,1)")]
    InvalidTerm { weight: f64, base: f64 },
    #[error("equation has no terms")]
    Empty,
}

/// One summand `weight · base^s`, stored by `ln(base)`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct MoranTerm {
    weight: f64,
    log_base: f64,
}

impl MoranTerm {
    pub fn new(weight: f64, base: f64) -> Result<Self, MoranError> {
        if !(weight > 0.0 && weight.is_finite() && base > 0.0 && base < 1.0) {
            return Err(MoranError::InvalidTerm { weight, base });
        }
        Ok(MoranTerm { weight, log_base: base.ln() })
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn base(&self) -> f64 {
        self.log_base.exp()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MoranEquation {
    terms: Vec<MoranTerm>,
    lower: f64,
    upper: f64,
    explicit_bracket: bool,
}

impl MoranEquation {
    /// Builds the equation with the default bracket `[0, hi]`, widened until
    /// the evaluator drops below 1.
    pub fn new(mut terms: Vec<MoranTerm>) -> Result<Self, MoranError> {
        if terms.is_empty() {
            return Err(MoranError::Empty);
        }
        // Canonical summation order: results do not depend on map order.
        terms.sort_by(|a, b| {
            (a.log_base, a.weight)
                .partial_cmp(&(b.log_base, b.weight))
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        let mut eq = MoranEquation {
            terms,
            lower: 0.0,
            upper: 1.0,
            explicit_bracket: false,
        };
        let total: f64 = eq.terms.iter().map(|t| t.weight).sum();
        let max_log = eq
            .terms
            .iter()
            .map(|t| t.log_base)
            .fold(f64::NEG_INFINITY, f64::max);
        let n = eq.terms.len() as f64;
        let guess = if total > 1.0 { total.ln() / -max_log } else { 0.0 };
        eq.upper = n * guess.max(1.0) + 1.0;
        while eq.evaluate(eq.upper) > 1.0 && eq.upper < 1e6 {
            eq.upper *= 2.0;
        }
        Ok(eq)
    }

    /// `Σ base_k^s = 1`, the similarity-dimension equation.
    pub fn similarity(ratios: &[f64]) -> Result<Self, MoranError> {
        Self::new(
            ratios
                .iter()
                .map(|&r| MoranTerm::new(1.0, r))
                .collect::<Result<_, _>>()?,
        )
    }

    pub fn with_bracket(mut self, lower: f64, upper: f64) -> Self {
        self.lower = lower;
        self.upper = upper;
        self.explicit_bracket = true;
        self
    }

    pub fn bracket(&self) -> (f64, f64) {
        (self.lower, self.upper)
    }

    pub fn terms(&self) -> &[MoranTerm] {
        &self.terms
    }

    pub fn evaluate(&self, s: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| t.weight * (s * t.log_base).exp())
            .sum()
    }

    fn derivative(&self, s: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| t.weight * t.log_base * (s * t.log_base).exp())
            .sum()
    }

    /// True when `Σ w_k ≤ 1`, so no nonnegative root exists and the solver
    /// reports 0.
    pub fn is_degenerate(&self) -> bool {
        !self.explicit_bracket && self.evaluate(0.0) <= 1.0
    }
}

/// Finds `s` with `evaluate(s) = 1` to within `tol`, by Newton steps
/// safeguarded with bisection inside a shrinking bracket.
pub fn solve_moran(eq: &MoranEquation, tol: f64) -> Result<f64, MoranError> {
    if eq.is_degenerate() {
        return Ok(0.0);
    }
    let (mut lo, mut hi) = eq.bracket();
    let f_lo = eq.evaluate(lo) - 1.0;
    let f_hi = eq.evaluate(hi) - 1.0;
    if !(f_lo >= 0.0 && f_hi <= 0.0) {
        return Err(MoranError::InvalidBracket {
            lower: lo,
            upper: hi,
            f_lower: f_lo + 1.0,
            f_upper: f_hi + 1.0,
        });
    }
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    let mut s = 0.5 * (lo + hi);
    for _ in 0..MAX_ITERATIONS {
        let g = eq.evaluate(s) - 1.0;
        if g == 0.0 {
            return Ok(s);
        }
        if g > 0.0 {
            lo = s;
        } else {
            hi = s;
        }
        if hi - lo <= tol {
            break;
        }
        let slope = eq.derivative(s);
        let newton = s - g / slope;
        let next = if slope < 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - s).abs() <= 0.25 * tol {
            // Converged Newton iterate: certify by stepping across the root.
            let probe = if g > 0.0 { next + tol } else { next - tol };
            let pg = eq.evaluate(probe) - 1.0;
            if (g > 0.0) != (pg > 0.0) || pg == 0.0 {
                return Ok(next.clamp(lo, hi));
            }
        }
        s = next;
    }
    Ok(0.5 * (lo + hi))
}

/// The unique `s ≥ 0` with `Σ ratio^s = 1`.
pub fn similarity_dimension(ifs: &SimilarityIfs1D) -> f64 {
    similarity_dimension_of(&ifs.ratios(), DEFAULT_TOLERANCE)
}

/// [`similarity_dimension`] for raw ratios in `(0,1)`.
pub fn similarity_dimension_of(ratios: &[f64], tol: f64) -> f64 {
    if ratios.len() <= 1 {
        return 0.0;
    }
    let eq = MoranEquation::similarity(ratios).expect("ratios validated in (0,1)");
    solve_moran(&eq, tol).expect("default bracket straddles the root")
}
