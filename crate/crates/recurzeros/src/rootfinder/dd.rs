//! Double-double (compensated) arithmetic for polynomial evaluation.
//!
//! The recurrence families are brutally ill-conditioned in the monomial
//! basis at high degree (root condition numbers near 1e17 by degree 60), so
//! plain f64 Horner cannot steer Newton or Aberth corrections there. Keeping
//! the coefficients and the Horner accumulation in unevaluated double-double
//! pairs gives ~106 bits of working precision at pure-f64 speed, which pins
//! roots to ~1e-15 absolute for every degree the acceptance suite touches.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

/// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
#[derive(Clone, Copy, Debug, Default)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    Dd { hi: s, lo: err }
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let err = b - (s - a);
    Dd { hi: s, lo: err }
}

#[inline]
fn two_prod(a: f64, b: f64) -> Dd {
    let p = a * b;
    let err = a.mul_add(b, -p);
    Dd { hi: p, lo: err }
}

impl Dd {
    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    /// Best 106-bit approximation of an exact rational.
    pub fn from_rational(r: &BigRational) -> Self {
        let hi = r.to_f64().unwrap_or(f64::NAN);
        if !hi.is_finite() {
            return Dd { hi, lo: 0.0 };
        }
        let rest = r - BigRational::from_float(hi).expect("finite f64");
        let lo = rest.to_f64().unwrap_or(0.0);
        Dd { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn is_zero(self) -> bool {
        self.hi == 0.0 && self.lo == 0.0
    }

    #[inline]
    pub fn add(self, other: Dd) -> Dd {
        let s = two_sum(self.hi, other.hi);
        let lo = s.lo + self.lo + other.lo;
        quick_two_sum(s.hi, lo)
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Dd {
        let p = two_prod(self.hi, other.hi);
        let lo = p.lo + self.hi * other.lo + self.lo * other.hi;
        quick_two_sum(p.hi, lo)
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

/// Complex number with double-double components.
#[derive(Clone, Copy, Debug, Default)]
pub struct DdComplex {
    pub re: Dd,
    pub im: Dd,
}

impl DdComplex {
    pub fn from_c64(z: Complex64) -> Self {
        DdComplex {
            re: Dd::from_f64(z.re),
            im: Dd::from_f64(z.im),
        }
    }

    pub fn from_real(d: Dd) -> Self {
        DdComplex {
            re: d,
            im: Dd::default(),
        }
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    #[inline]
    pub fn add(self, other: DdComplex) -> DdComplex {
        DdComplex {
            re: self.re.add(other.re),
            im: self.im.add(other.im),
        }
    }

    #[inline]
    pub fn mul(self, other: DdComplex) -> DdComplex {
        DdComplex {
            re: self.re.mul(other.re).add(self.im.mul(other.im).neg()),
            im: self.re.mul(other.im).add(self.im.mul(other.re)),
        }
    }
}

/// Polynomial with double-double coefficients, constant term first.
#[derive(Clone, Debug)]
pub struct DdPoly {
    pub coeffs: Vec<Dd>,
}

impl DdPoly {
    pub fn from_f64_coeffs(coeffs: &[f64]) -> Self {
        DdPoly {
            coeffs: coeffs.iter().map(|&c| Dd::from_f64(c)).collect(),
        }
    }

    pub fn from_rational_coeffs(coeffs: &[BigRational]) -> Self {
        DdPoly {
            coeffs: coeffs.iter().map(Dd::from_rational).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn derivative(&self) -> DdPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(Dd::from_f64(i as f64)))
            .collect();
        DdPoly { coeffs }
    }

    /// Horner evaluation in double-double, returning the rounded value and
    /// the magnitude scale sum |c_i| |x|^i used for residual normalization.
    pub fn eval(&self, x: Complex64) -> (Complex64, f64) {
        let xd = DdComplex::from_c64(x);
        let ax = x.norm();
        let mut acc = DdComplex::default();
        let mut scale = 0.0f64;
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(xd).add(DdComplex::from_real(*c));
            scale = scale * ax + c.hi.abs();
        }
        (acc.to_c64(), scale)
    }

    /// Real-axis Horner evaluation.
    pub fn eval_real(&self, x: f64) -> (f64, f64) {
        let xd = Dd::from_f64(x);
        let ax = x.abs();
        let mut acc = Dd::default();
        let mut scale = 0.0f64;
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(xd).add(*c);
            scale = scale * ax + c.hi.abs();
        }
        (acc.to_f64(), scale)
    }
}
