use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Relative tolerance used when at least one side of a comparison is inexact.
pub const RELATIVE_TOLERANCE: f64 = 1e-12;

/// A real parameter that remembers its exact rational value when one is known.
///
/// Values read from `"p/q"` strings (or decimal strings) carry the exact
/// rational; values read from plain floating literals carry only the `f64`.
/// Arithmetic keeps exactness as long as both operands are exact.
#[derive(Clone, Debug, PartialEq)]
pub struct Scalar {
    value: f64,
    exact: Option<BigRational>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse {0:?} as a number")]
pub struct ParseScalarError(pub String);

impl Scalar {
    pub fn approx(value: f64) -> Self {
        Scalar { value, exact: None }
    }

    pub fn exact(value: BigRational) -> Self {
        Scalar {
            value: ratio_to_f64(&value),
            exact: Some(value),
        }
    }

    pub fn ratio(numer: i64, denom: i64) -> Self {
        Self::exact(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn integer(n: i64) -> Self {
        Self::ratio(n, 1)
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        self.exact.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => Scalar::exact(a + b),
            _ => Scalar::approx(self.value + other.value),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => Scalar::exact(a - b),
            _ => Scalar::approx(self.value - other.value),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => Scalar::exact(a * b),
            _ => Scalar::approx(self.value * other.value),
        }
    }

    /// Quotient; exact when both operands are exact and the divisor is nonzero.
    pub fn div(&self, other: &Scalar) -> Scalar {
        match (&self.exact, &other.exact) {
            (Some(a), Some(b)) if !b.is_zero() => Scalar::exact(a / b),
            _ => Scalar::approx(self.value / other.value),
        }
    }

    /// Ordering with exact comparison when both sides are exact, plain `f64`
    /// comparison otherwise.
    pub fn cmp_strict(&self, other: &Scalar) -> Ordering {
        match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => a.cmp(b),
            _ => self
                .value
                .partial_cmp(&other.value)
                .unwrap_or(Ordering::Equal),
        }
    }

    /// Ordering that treats values within [`RELATIVE_TOLERANCE`] as equal
    /// unless both sides are exact.
    pub fn cmp_tolerant(&self, other: &Scalar) -> Ordering {
        match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => a.cmp(b),
            _ => {
                let scale = self.value.abs().max(other.value.abs()).max(f64::MIN_POSITIVE);
                if (self.value - other.value).abs() <= RELATIVE_TOLERANCE * scale {
                    Ordering::Equal
                } else if self.value < other.value {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        }
    }

    pub fn sum<'a>(items: impl IntoIterator<Item = &'a Scalar>) -> Scalar {
        items.into_iter().fold(Scalar::zero(), |acc, x| acc.add(x))
    }
}

impl From<f64> for Scalar {
    fn from(value: f64) -> Self {
        Scalar::approx(value)
    }
}

/// Converts a big rational to the nearest `f64`, also for numerators and
/// denominators too large for a direct conversion.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Shift both to ~60 significant bits before dividing.
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift_n = (nb - 60).max(0);
    let shift_d = (db - 60).max(0);
    let n = (r.numer() >> shift_n as usize).to_f64().unwrap_or(0.0);
    let d = (r.denom() >> shift_d as usize).to_f64().unwrap_or(1.0);
    n / d * 2f64.powi((shift_n - shift_d) as i32)
}

impl FromStr for Scalar {
    type Err = ParseScalarError;

    /// Accepts `"p/q"`, integers, and decimal strings such as `"0.25"` or
    /// `"-1.5e-3"`; all of these are kept exact.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseScalarError(s.to_string());
        let t = s.trim();
        if t.is_empty() {
            return Err(err());
        }
        if let Some((p, q)) = t.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| err())?;
            let q: BigInt = q.trim().parse().map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            return Ok(Scalar::exact(BigRational::new(p, q)));
        }
        parse_decimal(t).map(Scalar::exact).ok_or_else(err)
    }
}

fn parse_decimal(t: &str) -> Option<BigRational> {
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(pos) => (&t[..pos], t[pos + 1..].parse::<i32>().ok()?),
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: String = format!("{int_part}{frac_part}");
    let mut numer: BigInt = if all.is_empty() { BigInt::zero() } else { all.parse().ok()? };
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let r = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Some(r)
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Some(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            None => write!(f, "{}", self.value),
        }
    }
}
