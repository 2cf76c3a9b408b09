//! Scalar fields used by the spin factor: exact rationals and `f64`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    BigRational::from_integer(BigInt::from(value))
}

/// Parses `p`, `p/q`, or a finite decimal such as `-0.25` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::InvalidInput(format!("not a rational number: {text:?}"));
    if let Some((p, q)) = text.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::InvalidInput(format!("zero denominator in {text:?}")));
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let whole: BigInt = if whole_digits.is_empty() {
            BigInt::zero()
        } else {
            whole_digits.parse().map_err(|_| bad())?
        };
        let frac_value: BigInt = frac.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let magnitude = BigRational::new(whole * &scale + frac_value, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    let p: BigInt = text.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(p))
}

/// Field operations the spin factor needs, plus the comparisons that differ
/// between exact and floating arithmetic.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(value: &Rational) -> Self;
    fn to_f64(&self) -> f64;
    fn is_zero_within(&self, tolerance: f64) -> bool;
    /// Text form: `p/q` for rationals, decimals for floats.
    fn render(&self) -> String;
    fn parse_text(text: &str) -> Result<Self>;
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn from_rational(value: &Rational) -> Self {
        value.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_zero_within(&self, _tolerance: f64) -> bool {
        Zero::is_zero(self)
    }

    fn render(&self) -> String {
        self.to_string()
    }

    fn parse_text(text: &str) -> Result<Self> {
        parse_rational(text)
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_rational(value: &Rational) -> Self {
        ToPrimitive::to_f64(value).unwrap_or(f64::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_zero_within(&self, tolerance: f64) -> bool {
        self.abs() <= tolerance
    }

    fn render(&self) -> String {
        format!("{self:?}")
    }

    fn parse_text(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.contains('/') {
            return parse_rational(text).map(|r| Scalar::from_rational(&r));
        }
        text.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| Error::InvalidInput(format!("not a number: {text:?}")))
    }
}

/// How zero and equality tests are decided.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScalarMode {
    Exact,
    Floating { tolerance: f64 },
}

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

impl ScalarMode {
    pub fn floating() -> Self {
        ScalarMode::Floating {
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    pub fn tolerance(&self) -> f64 {
        match self {
            ScalarMode::Exact => 0.0,
            ScalarMode::Floating { tolerance } => *tolerance,
        }
    }

    pub fn is_zero<S: Scalar>(&self, value: &S) -> bool {
        value.is_zero_within(self.tolerance())
    }

    pub fn eq<S: Scalar>(&self, a: &S, b: &S) -> bool {
        self.is_zero(&(a.clone() - b.clone()))
    }
}

pub(crate) fn is_negative(value: &Rational) -> bool {
    Signed::is_negative(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rational_forms() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("-3/6").unwrap(), rational(-1, 2));
        assert_eq!(parse_rational("0.25").unwrap(), rational(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), rational(-3, 2));
        assert_eq!(parse_rational("-0.5").unwrap(), rational(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn floating_mode_uses_tolerance() {
        let mode = ScalarMode::floating();
        assert!(mode.eq(&1.0, &(1.0 + 1e-12)));
        assert!(!mode.eq(&1.0, &1.001));
        assert!(ScalarMode::Exact.is_zero(&int(0)));
        assert!(!ScalarMode::Exact.is_zero(&rational(1, 1_000_000_000)));
    }
}
