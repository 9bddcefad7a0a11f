//! Dense univariate polynomials, constant term first.

use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use serde_json::Value;

use crate::scalar::Coeff;

/// Dense univariate polynomial over a [`Coeff`] scalar.
///
/// Coefficients are stored constant term first with trailing zeros trimmed,
/// so the zero polynomial has an empty coefficient list and `degree()` is
/// `None` (the spec's -1 sentinel).
#[derive(Clone, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

pub type FloatPoly = Polynomial<f64>;
pub type RatPoly = Polynomial<BigRational>;

impl<T: Coeff> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    /// b + a*z, the linear polynomial.
    pub fn linear(b: T, a: T) -> Self {
        Self::new(vec![b, a])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| T::from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of z^i, zero beyond the stored length.
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - other.coeff(i));
        }
        Self::new(out)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * k.clone()).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * T::from_int(i as i64))
            .collect();
        Self::new(out)
    }

    /// Coefficient-wise comparison: exact in rational mode, within
    /// `tol * max(1, max |coeff|)` in floating mode.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if T::EXACT {
            return self == other;
        }
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut scale: f64 = 1.0;
        for i in 0..n {
            scale = scale.max(self.coeff(i).to_f64().abs());
            scale = scale.max(other.coeff(i).to_f64().abs());
        }
        (0..n).all(|i| self.coeff(i).approx_eq(&other.coeff(i), tol * scale))
    }

    pub fn to_f64_poly(&self) -> FloatPoly {
        FloatPoly::new(self.coeffs.iter().map(|c| c.to_f64()).collect())
    }

    /// JSON array of coefficients, constant term first.
    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(|c| c.to_json()).collect())
    }

    pub fn from_json(v: &Value) -> Option<Self> {
        let arr = v.as_array()?;
        let coeffs = arr.iter().map(T::from_json).collect::<Option<Vec<_>>>()?;
        Some(Self::new(coeffs))
    }
}

impl FloatPoly {
    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }
}

impl<T: Coeff> fmt::Debug for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "({})*z", c)?,
                _ => write!(f, "({})*z^{}", c, i)?,
            }
        }
        Ok(())
    }
}

impl<T: Coeff> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn trims_trailing_zeros() {
        let p = FloatPoly::new(vec![1.0, 2.0, 0.0, 0.0]);
        assert_eq!(p.degree(), Some(1));
        let z = FloatPoly::new(vec![0.0, 0.0]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
    }

    #[test]
    fn horner_matches_direct() {
        let p = FloatPoly::from_ints(&[-1, 1, 1]); // z^2 + z - 1
        for &x in &[0.0, 1.5, -2.0, 0.618033988749895] {
            let direct = x * x + x - 1.0;
            assert!((p.eval(&x) - direct).abs() < 1e-14);
        }
    }

    #[test]
    fn mul_and_derivative() {
        let p = RatPoly::from_ints(&[1, 1]); // 1 + z
        let q = p.mul(&p); // 1 + 2z + z^2
        assert_eq!(q, RatPoly::from_ints(&[1, 2, 1]));
        assert_eq!(q.derivative(), RatPoly::from_ints(&[2, 2]));
    }

    #[test]
    fn json_roundtrip_rational() {
        let p = RatPoly::new(vec![
            BigRational::from_ratio(-6, 5),
            BigRational::from_int(2),
        ]);
        let v = p.to_json();
        assert_eq!(RatPoly::from_json(&v), Some(p));
    }

    #[test]
    fn float_approx_eq_is_relative() {
        let p = FloatPoly::new(vec![1e10, 1.0]);
        let q = FloatPoly::new(vec![1e10 + 1e-3, 1.0]);
        assert!(p.approx_eq(&q, 1e-12));
        assert!(!p.approx_eq(&q, 1e-16));
    }
}
