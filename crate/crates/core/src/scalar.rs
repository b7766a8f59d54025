//! Scalar fields for tensor coefficients.
//!
//! Exact work uses [`Rational`] (arbitrary precision, always in lowest
//! terms). `f64` exists for Monte Carlo estimates only.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::{Error, Result};

pub type Rational = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScalarMode {
    Rational,
    Float,
}

impl ScalarMode {
    pub fn tag(self) -> &'static str {
        match self {
            ScalarMode::Rational => "rational",
            ScalarMode::Float => "float",
        }
    }
}

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + Send
    + Sync
    + 'static
{
    const MODE: ScalarMode;

    fn from_ratio(num: i64, den: u64) -> Self;
    fn from_rational(q: &Rational) -> Self;
    fn div_int(&self, k: u64) -> Self;
    fn abs_val(&self) -> Self;
    fn to_f64(&self) -> f64;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;

    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }
}

impl Scalar for Rational {
    const MODE: ScalarMode = ScalarMode::Rational;

    fn from_ratio(num: i64, den: u64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn div_int(&self, k: u64) -> Self {
        self / BigInt::from(k)
    }

    fn abs_val(&self) -> Self {
        self.abs()
    }

    fn to_f64(&self) -> f64 {
        ratio_to_f64(self)
    }

    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap().into())),
            other => Err(Error::Format(format!("expected a \"p/q\" string, got {other}"))),
        }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

impl Scalar for f64 {
    const MODE: ScalarMode = ScalarMode::Float;

    fn from_ratio(num: i64, den: u64) -> Self {
        num as f64 / den as f64
    }

    fn from_rational(q: &Rational) -> Self {
        ratio_to_f64(q)
    }

    fn div_int(&self, k: u64) -> Self {
        self / k as f64
    }

    fn abs_val(&self) -> Self {
        self.abs()
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_json(&self) -> Value {
        serde_json::Number::from_f64(*self)
            .map(Value::Number)
            .unwrap_or(Value::Null)
    }

    fn from_json(v: &Value) -> Result<Self> {
        v.as_f64()
            .ok_or_else(|| Error::Format(format!("expected a number, got {v}")))
    }
}

/// Parses `"p/q"` or `"p"`. Decimal notation is rejected so that no input is
/// ever rounded.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidParameter(format!("`{s}` is not a rational of the form p/q"));
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::InvalidParameter(format!("`{s}` has a zero denominator")));
    }
    Ok(Rational::new(num, den))
}

/// Lowest-terms `"p/q"`, or `"p"` for integers.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Correctly handles numerators and denominators far outside the `f64` range.
pub fn ratio_to_f64(q: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && n.abs() < 1e300 && d < 1e300 {
            return n / d;
        }
    }
    // Rescale so both parts fit; keep ~64 significant bits of each.
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    let shift_n = (nb - 64).max(0);
    let shift_d = (db - 64).max(0);
    let n = (q.numer() >> shift_n as usize).to_f64().unwrap_or(0.0);
    let d = (q.denom() >> shift_d as usize).to_f64().unwrap_or(1.0);
    (n / d) * 2f64.powi((shift_n - shift_d) as i32)
}
