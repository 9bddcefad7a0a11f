//! Coefficient scalar abstraction.
//!
//! Everything in the sequence-generation layer is generic over [`Coeff`] so
//! the same code runs in floating (f64) and exact rational mode. Exact mode
//! is what makes oracle-equality tests and Sturm certification meaningful;
//! floating mode is what the transcendental layers (theta, witnesses) use.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

/// A field scalar usable as a polynomial coefficient.
pub trait Coeff:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    /// True when arithmetic is exact (rational mode).
    const EXACT: bool;

    fn from_int(n: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// Exact equality in rational mode, |a - b| <= tol in floating mode.
    fn approx_eq(&self, other: &Self, tol: f64) -> bool;

    /// JSON form: a number for floats, a "p/q" string for rationals.
    fn to_json(&self) -> Value;

    fn from_json(v: &Value) -> Option<Self>;
}

impl Coeff for f64 {
    const EXACT: bool = false;

    fn from_int(n: i64) -> Self {
        n as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self - other).abs() <= tol
    }

    fn to_json(&self) -> Value {
        serde_json::json!(self)
    }

    fn from_json(v: &Value) -> Option<Self> {
        v.as_f64()
    }
}

impl Coeff for BigRational {
    const EXACT: bool = true;

    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn approx_eq(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }

    fn to_json(&self) -> Value {
        Value::String(format!("{}/{}", self.numer(), self.denom()))
    }

    fn from_json(v: &Value) -> Option<Self> {
        let s = v.as_str()?;
        parse_rational(s)
    }
}

/// Parse "p/q" or a plain integer or a decimal literal into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let num: BigInt = p.trim().parse().ok()?;
        let den: BigInt = q.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(BigRational::new(num, den));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let sign = if int.trim_start().starts_with('-') { -1 } else { 1 };
        let int_part: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().ok()?
        };
        let frac_digits: BigInt = if frac.is_empty() {
            BigInt::zero()
        } else {
            frac.parse().ok()?
        };
        if frac_digits.is_negative() {
            return None;
        }
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        let num = int_part.magnitude().clone() * den.magnitude().clone()
            + frac_digits.magnitude().clone();
        let num = BigInt::from_biguint(
            if sign < 0 {
                num_bigint::Sign::Minus
            } else {
                num_bigint::Sign::Plus
            },
            num,
        );
        return Some(BigRational::new(num, den));
    }
    let num: BigInt = s.parse().ok()?;
    Some(BigRational::from_integer(num))
}

/// Exact rational from an f64 (every finite f64 is a dyadic rational).
pub fn rational_from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}
