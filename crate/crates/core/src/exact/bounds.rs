//! Interval arithmetic for the lower/Assouad dimension pair under products
//! and unions.

use serde::Serialize;

/// `(dim_L, dim_A)` of some set.
#[derive(Copy, Clone, Debug, PartialEq, Serialize)]
pub struct DimPair {
    lower: f64,
    assouad: f64,
}

impl DimPair {
    /// `None` unless `0 ≤ lower ≤ assouad`.
    pub fn new(lower: f64, assouad: f64) -> Option<Self> {
        (lower >= 0.0 && lower <= assouad && assouad.is_finite()).then_some(DimPair { lower, assouad })
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn assouad(&self) -> f64 {
        self.assouad
    }
}

/// A closed interval `[lo, hi]`.
#[derive(Copy, Clone, Debug, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    pub fn contains(&self, x: f64, slack: f64) -> bool {
        x >= self.lo - slack && x <= self.hi + slack
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }
}

/// Bounds on `(dim_L(X×Y), dim_A(X×Y))`.
pub fn product_bounds(x: DimPair, y: DimPair) -> (Interval, Interval) {
    (
        Interval { lo: x.lower + y.lower, hi: x.lower + y.assouad },
        Interval { lo: x.lower + y.assouad, hi: x.assouad + y.assouad },
    )
}

/// `dim_L(X^n) = n·dim_L(X)`.
pub fn self_product_lower(x: DimPair, n: u32) -> f64 {
    f64::from(n) * x.lower
}

/// Bounds on `dim_L(X ∪ Y)`; a point when the two sets are a positive
/// distance apart.
pub fn union_bounds(x: DimPair, y: DimPair, separated: bool) -> Interval {
    let lo = x.lower.min(y.lower);
    if separated {
        Interval::point(lo)
    } else {
        Interval { lo, hi: x.lower.max(y.assouad) }
    }
}
