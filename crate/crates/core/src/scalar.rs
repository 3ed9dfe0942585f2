//! Coefficient backends.
//!
//! A [`Series`](crate::Series) is generic over its coefficient type. Two
//! backends are provided: exact rationals ([`Rational`]) and double-precision
//! complex numbers ([`Complex64`]). Mixing backends is a type error.

use std::fmt::{self, Debug};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::SeriesError;

/// Arbitrary precision rational number used throughout the exact backend.
pub type Rational = BigRational;

/// Which coefficient backend a series uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
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

/// An exponent for [`Series::pow`](crate::Series::pow).
#[derive(Debug, Clone, PartialEq)]
pub enum Exponent {
    Int(i64),
    Rational(Rational),
    Float(f64),
}

impl Exponent {
    pub fn is_zero(&self) -> bool {
        match self {
            Exponent::Int(k) => *k == 0,
            Exponent::Rational(r) => r.is_zero(),
            Exponent::Float(x) => *x == 0.0,
        }
    }

    /// The exponent as a non-negative machine integer, if it is one.
    pub fn as_natural(&self) -> Option<u64> {
        match self {
            Exponent::Int(k) if *k >= 0 => Some(*k as u64),
            Exponent::Rational(r) if r.is_integer() && !r.is_negative() => r.to_integer().to_u64(),
            Exponent::Float(x) if *x >= 0.0 && x.fract() == 0.0 && *x < 2f64.powi(53) => Some(*x as u64),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Exponent::Int(k) => *k as f64,
            Exponent::Rational(r) => rational_to_f64(r),
            Exponent::Float(x) => *x,
        }
    }
}

impl From<i64> for Exponent {
    fn from(k: i64) -> Self {
        Exponent::Int(k)
    }
}

impl From<Rational> for Exponent {
    fn from(r: Rational) -> Self {
        Exponent::Rational(r)
    }
}

impl From<&Rational> for Exponent {
    fn from(r: &Rational) -> Self {
        Exponent::Rational(r.clone())
    }
}

impl From<f64> for Exponent {
    fn from(x: f64) -> Self {
        Exponent::Float(x)
    }
}

/// Field operations shared by both coefficient backends.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    const BACKEND: Backend;

    fn from_rational(r: &Rational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    /// Converts an exponent into this field. The exact backend rejects
    /// floating exponents.
    fn from_exponent(e: &Exponent) -> Result<Self, SeriesError>;

    /// Absolute value as a float, for tail estimates and reporting.
    fn magnitude(&self) -> f64;

    fn to_complex(&self) -> Complex64;
}

impl Scalar for Rational {
    const BACKEND: Backend = Backend::Exact;

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn from_exponent(e: &Exponent) -> Result<Self, SeriesError> {
        match e {
            Exponent::Int(k) => Ok(Rational::from_integer(BigInt::from(*k))),
            Exponent::Rational(r) => Ok(r.clone()),
            Exponent::Float(x) => Err(SeriesError::InexactExponent(*x)),
        }
    }

    fn magnitude(&self) -> f64 {
        rational_to_f64(&self.abs())
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(rational_to_f64(self), 0.0)
    }
}

impl Scalar for Complex64 {
    const BACKEND: Backend = Backend::Float;

    fn from_rational(r: &Rational) -> Self {
        Complex64::new(rational_to_f64(r), 0.0)
    }

    fn from_exponent(e: &Exponent) -> Result<Self, SeriesError> {
        Ok(Complex64::new(e.to_f64(), 0.0))
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }

    fn to_complex(&self) -> Complex64 {
        *self
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // numerator/denominator individually overflow f64
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Error returned by [`parse_rational`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed rational `{0}` (expected p/q, an integer, or a decimal such as -0.25)")]
pub struct ParseRationalError(pub String);

/// Parses `p/q`, integers and plain decimals (`-0.125`, `1e-3`) exactly.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let t = s.trim();
    let bad = || ParseRationalError(s.to_string());
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = t[i + 1..].parse().map_err(|_| bad())?;
            (&t[..i], e)
        }
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
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
    let all = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(BigInt::from_str(&all).map_err(|_| bad())?);
    let scale = exp - frac_part.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    if scale >= 0 {
        value *= num_traits::pow(ten, scale as usize);
    } else {
        value /= num_traits::pow(ten, (-scale) as usize);
    }
    Ok(if neg { -value } else { value })
}

/// Canonical `p/q` (or `p` when integral) rendering.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal rendering rounded half away from zero to `digits` places,
/// computed exactly so the output is platform independent.
pub fn format_decimal(r: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = r.abs() * Rational::from_integer(scale.clone());
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let rounded = if rem * 2 >= *scaled.denom() { q + 1 } else { q };
    let (whole, frac) = rounded.div_rem(&scale);
    let sign = if r.is_negative() && !rounded_is_zero(&whole, &frac) { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{whole}");
    }
    format!("{sign}{whole}.{:0>width$}", frac.to_string(), width = digits)
}

fn rounded_is_zero(whole: &BigInt, frac: &BigInt) -> bool {
    whole.is_zero() && frac.is_zero()
}

/// Rational approximation of a finite float via its shortest decimal form.
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    parse_rational(&format!("{x:e}")).ok()
}
