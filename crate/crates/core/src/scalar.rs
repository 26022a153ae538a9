//! Numeric backends.
//!
//! Every algorithm in the crate is generic over [`Scalar`], which is
//! implemented for exact rationals ([`Rational`]) and for `f64`. Exact values
//! compare exactly; float comparisons go through [`Scalar::ge_tol`] with a
//! tolerance chosen by the caller.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational number.
pub type Rational = BigRational;

/// Which numeric backend a computation runs on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Exact => f.write_str("exact"),
            Backend::Float => f.write_str("float"),
        }
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Backend::Exact),
            "float" => Ok(Backend::Float),
            other => Err(Error::InvalidScalar(format!("unknown backend `{other}`"))),
        }
    }
}

/// An element of an ordered field, either exact or floating point.
pub trait Scalar: Clone + fmt::Debug + PartialOrd + Num + Signed + Send + Sync + 'static {
    const BACKEND: Backend;

    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_rational(q: &Rational) -> Self;

    fn to_f64(&self) -> f64;

    /// Text form: `p/q` for rationals, 17 significant digits for floats.
    fn to_text(&self) -> String;

    fn from_i64(v: i64) -> Self {
        Self::from_ratio(v, 1)
    }

    fn half() -> Self {
        Self::from_ratio(1, 2)
    }

    fn is_exact() -> bool {
        Self::BACKEND == Backend::Exact
    }

    /// `self >= other`, relaxed by `tol` on the float backend.
    fn ge_tol(&self, other: &Self, tol: f64) -> bool {
        if Self::is_exact() {
            self >= other
        } else {
            self.to_f64() >= other.to_f64() - tol
        }
    }

    /// `self <= other`, relaxed by `tol` on the float backend.
    fn le_tol(&self, other: &Self, tol: f64) -> bool {
        other.ge_tol(self, tol)
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }
}

impl Scalar for Rational {
    const BACKEND: Backend = Backend::Exact;

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn to_text(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }
}

impl Scalar for f64 {
    const BACKEND: Backend = Backend::Float;

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn from_rational(q: &Rational) -> Self {
        Scalar::to_f64(q)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_text(&self) -> String {
        format_f64(*self)
    }
}

/// Formats a float with 17 significant digits.
pub fn format_f64(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    format!("{v:.16e}")
}

/// Parses `p/q`, an integer, or a plain decimal (optionally with exponent)
/// into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::InvalidScalar(format!("cannot parse `{text}` as a rational"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::InvalidScalar(format!("zero denominator in `{text}`")));
        }
        return Ok(Rational::new(p, q));
    }

    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut num = BigInt::from_str(&all_digits).map_err(|_| bad())?;
    if negative {
        num = -num;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        Rational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(num, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

/// Exact rational value of a finite float.
pub fn rational_from_f64(v: f64) -> Result<Rational> {
    Rational::from_float(v).ok_or_else(|| Error::InvalidScalar(format!("non-finite value {v}")))
}

/// Shorthand for building small exact constants in tests and fixtures.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::from_ratio(num, den)
}

/// `true` when `value` lies strictly between 0 and 1.
pub(crate) fn in_open_unit<T: Scalar>(value: &T) -> bool {
    value > &T::zero() && value < &T::one()
}
