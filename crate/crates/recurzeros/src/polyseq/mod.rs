//! Sequence generation for every polynomial family, plus the parameter and
//! variable normalization maps between them.
//!
//! Each family is the coefficient sequence of a rational generating function
//! in t; [`recurrence_for_family`] hard-codes the collected recurrence
//! multipliers, while [`series::series_inversion_oracle`] recomputes the same
//! sequence by inverting the factored denominator. The two routes are kept
//! textually independent so one can certify the other.

pub mod series;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::Coeff;

/// The linear form a*z + b.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearForm<T> {
    pub a: T,
    pub b: T,
}

impl<T: Coeff> LinearForm<T> {
    pub fn new(a: T, b: T) -> Self {
        LinearForm { a, b }
    }

    pub fn eval(&self, z: &T) -> T {
        self.a.clone() * z.clone() + self.b.clone()
    }

    pub fn to_poly(&self) -> Polynomial<T> {
        Polynomial::linear(self.b.clone(), self.a.clone())
    }
}

/// Tagged parameters selecting one generated family.
///
/// * `Thm1`:      1 / ((t+1)((az+b)t^2 + zt + 1))
/// * `Thm3`:      1 / (((az+b)t + 1)(t^2 + zt + 1))
/// * `GeneralR`:  1 / (1 - (a1 z + b1)t - (a2 z + b2)t^2)
/// * `ChebCombo`: 1 / ((1 - (az+b)t)(1 - 2zt + t^2)), i.e. Q_n = sum_k (az+b)^k U_{n-k}
/// * `Thm2`:      1 / (((az+b)t + 1)(ct^2 + zt + 1)), c != 0
#[derive(Clone, Debug, PartialEq)]
pub enum FamilyParams<T> {
    Thm1 { a: T, b: T },
    Thm3 { a: T, b: T },
    GeneralR { a1: T, b1: T, a2: T, b2: T },
    ChebCombo { a: T, b: T },
    Thm2 { a: T, b: T, c: T },
}

impl<T: Coeff> FamilyParams<T> {
    pub fn validate(&self) -> Result<()> {
        match self {
            // A vanishing t^2 coefficient degenerates the three-term
            // recurrence; a2 = 0 with b2 != 0 stays legal (it is how the
            // plain Chebyshev recurrence is expressed).
            FamilyParams::GeneralR { a2, b2, .. } if a2.is_zero() && b2.is_zero() => Err(
                Error::InvalidParams("GeneralR requires a2 z + b2 nonzero".into()),
            ),
            FamilyParams::Thm2 { c, .. } if c.is_zero() => {
                Err(Error::InvalidParams("Thm2 requires c != 0".into()))
            }
            _ => Ok(()),
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            FamilyParams::Thm1 { .. } => "thm1",
            FamilyParams::Thm3 { .. } => "thm3",
            FamilyParams::GeneralR { .. } => "general-r",
            FamilyParams::ChebCombo { .. } => "cheb-combo",
            FamilyParams::Thm2 { .. } => "thm2",
        }
    }

    pub fn to_f64_params(&self) -> FamilyParams<f64> {
        match self {
            FamilyParams::Thm1 { a, b } => FamilyParams::Thm1 {
                a: a.to_f64(),
                b: b.to_f64(),
            },
            FamilyParams::Thm3 { a, b } => FamilyParams::Thm3 {
                a: a.to_f64(),
                b: b.to_f64(),
            },
            FamilyParams::GeneralR { a1, b1, a2, b2 } => FamilyParams::GeneralR {
                a1: a1.to_f64(),
                b1: b1.to_f64(),
                a2: a2.to_f64(),
                b2: b2.to_f64(),
            },
            FamilyParams::ChebCombo { a, b } => FamilyParams::ChebCombo {
                a: a.to_f64(),
                b: b.to_f64(),
            },
            FamilyParams::Thm2 { a, b, c } => FamilyParams::Thm2 {
                a: a.to_f64(),
                b: b.to_f64(),
                c: c.to_f64(),
            },
        }
    }
}

/// Three-term recurrence P_n = m1 P_{n-1} + m2 P_{n-2} + m3 P_{n-3} with
/// P_0 = 1 and P_{-n} = 0.
#[derive(Clone, Debug, PartialEq)]
pub struct RecurrenceSpec<T: Coeff> {
    pub multipliers: [Polynomial<T>; 3],
}

/// Collected recurrence multipliers for a family: the negated t-coefficients
/// of the expanded denominator.
pub fn recurrence_for_family<T: Coeff>(params: &FamilyParams<T>) -> Result<RecurrenceSpec<T>> {
    params.validate()?;
    let one = T::one;
    let multipliers = match params {
        // denominator 1 + (z+1)t + ((a+1)z+b)t^2 + (az+b)t^3
        FamilyParams::Thm1 { a, b } => [
            Polynomial::linear(-one(), -one()),
            Polynomial::linear(-b.clone(), -(a.clone() + one())),
            Polynomial::linear(-b.clone(), -a.clone()),
        ],
        // denominator 1 + ((a+1)z+b)t + (az^2+bz+1)t^2 + (az+b)t^3
        FamilyParams::Thm3 { a, b } => [
            Polynomial::linear(-b.clone(), -(a.clone() + one())),
            Polynomial::new(vec![-one(), -b.clone(), -a.clone()]),
            Polynomial::linear(-b.clone(), -a.clone()),
        ],
        FamilyParams::GeneralR { a1, b1, a2, b2 } => [
            Polynomial::linear(b1.clone(), a1.clone()),
            Polynomial::linear(b2.clone(), a2.clone()),
            Polynomial::zero(),
        ],
        // denominator 1 - ((a+2)z+b)t + (2az^2+2bz+1)t^2 - (az+b)t^3
        FamilyParams::ChebCombo { a, b } => [
            Polynomial::linear(b.clone(), a.clone() + T::from_int(2)),
            Polynomial::new(vec![
                -one(),
                -(T::from_int(2) * b.clone()),
                -(T::from_int(2) * a.clone()),
            ]),
            Polynomial::linear(b.clone(), a.clone()),
        ],
        // denominator 1 + ((a+1)z+b)t + (az^2+bz+c)t^2 + c(az+b)t^3
        FamilyParams::Thm2 { a, b, c } => [
            Polynomial::linear(-b.clone(), -(a.clone() + one())),
            Polynomial::new(vec![-c.clone(), -b.clone(), -a.clone()]),
            Polynomial::linear(-(c.clone() * b.clone()), -(c.clone() * a.clone())),
        ],
    };
    Ok(RecurrenceSpec { multipliers })
}

/// P_0..P_n driven by the recurrence.
pub fn gen_sequence<T: Coeff>(spec: &RecurrenceSpec<T>, n: usize) -> Vec<Polynomial<T>> {
    let mut seq: Vec<Polynomial<T>> = Vec::with_capacity(n + 1);
    seq.push(Polynomial::one());
    for k in 1..=n {
        let mut acc = Polynomial::zero();
        for (i, m) in spec.multipliers.iter().enumerate() {
            if k > i {
                acc = acc.add(&m.mul(&seq[k - 1 - i]));
            }
        }
        seq.push(acc);
    }
    seq
}

/// Convenience: generate a family's sequence directly from its parameters.
pub fn gen_family_sequence<T: Coeff>(
    params: &FamilyParams<T>,
    n: usize,
) -> Result<Vec<Polynomial<T>>> {
    Ok(gen_sequence(&recurrence_for_family(params)?, n))
}

/// Chebyshev polynomials of the second kind U_0..U_n
/// (U_{n+1} = 2z U_n - U_{n-1}, U_0 = 1, U_1 = 2z).
pub fn chebyshev_u<T: Coeff>(n: usize) -> Vec<Polynomial<T>> {
    let mut seq = Vec::with_capacity(n + 1);
    seq.push(Polynomial::one());
    if n == 0 {
        return seq;
    }
    seq.push(Polynomial::linear(T::zero(), T::from_int(2)));
    let two_z = Polynomial::linear(T::zero(), T::from_int(2));
    for k in 2..=n {
        let next = two_z.mul(&seq[k - 1]).sub(&seq[k - 2]);
        seq.push(next);
    }
    seq
}

/// Chebyshev polynomials of the first kind T_0..T_n
/// (T_{n+1} = 2z T_n - T_{n-1}, T_0 = 1, T_1 = z).
pub fn chebyshev_t<T: Coeff>(n: usize) -> Vec<Polynomial<T>> {
    let mut seq = Vec::with_capacity(n + 1);
    seq.push(Polynomial::one());
    if n == 0 {
        return seq;
    }
    seq.push(Polynomial::linear(T::zero(), T::one()));
    let two_z = Polynomial::linear(T::zero(), T::from_int(2));
    for k in 2..=n {
        let next = two_z.mul(&seq[k - 1]).sub(&seq[k - 2]);
        seq.push(next);
    }
    seq
}

/// Q_n(z) = sum_{k=0..n} (az+b)^k U_{n-k}(z), by direct summation.
///
/// The k = 0 term is U_n regardless of az+b (0^0 = 1 by the power-series
/// convention).
pub fn gen_cheb_combo<T: Coeff>(a: T, b: T, n: usize) -> Polynomial<T> {
    let u = chebyshev_u::<T>(n);
    let form = LinearForm::new(a, b).to_poly();
    let mut power = Polynomial::one();
    let mut acc = Polynomial::zero();
    for k in 0..=n {
        acc = acc.add(&power.mul(&u[n - k]));
        if k < n {
            power = power.mul(&form);
        }
    }
    acc
}

/// Partial sums S_n = sum_{k=0..n} R_k of a sequence.
pub fn partial_sums<T: Coeff>(seq: &[Polynomial<T>]) -> Vec<Polynomial<T>> {
    let mut out = Vec::with_capacity(seq.len());
    let mut acc = Polynomial::zero();
    for p in seq {
        acc = acc.add(p);
        out.push(acc.clone());
    }
    out
}

/// Affine zero map w -> scale*w + offset.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineMap<T> {
    pub scale: T,
    pub offset: T,
}

impl<T: Coeff> AffineMap<T> {
    pub fn apply(&self, w: &T) -> T {
        self.scale.clone() * w.clone() + self.offset.clone()
    }
}

/// Reduce partial sums of a GeneralR family to a Thm1 family.
///
/// Substituting t -> -t (which only flips signs of the generated sequence),
/// then w = a1 z + b1, turns the sum's generating function into the Thm1 form
/// with parameters a = -a2/a1, b = a2 b1/a1 - b2. The returned map sends
/// zeros of the partial sums to zeros of the Thm1 family: z is a zero of the
/// Thm1 P_n iff (z - b1)/a1 is a zero of sum_k R_{n-k}.
pub fn reduce_sum_to_thm1<T: Coeff>(
    params: &FamilyParams<T>,
) -> Result<(FamilyParams<T>, AffineMap<T>)> {
    let (a1, b1, a2, b2) = match params {
        FamilyParams::GeneralR { a1, b1, a2, b2 } => (a1, b1, a2, b2),
        _ => {
            return Err(Error::InvalidParams(
                "reduction defined for GeneralR parameters".into(),
            ))
        }
    };
    params.validate()?;
    if a1.is_zero() {
        return Err(Error::UnsupportedReduction(
            "a1 = 0 leaves no z-linear coefficient to normalize".into(),
        ));
    }
    let a = -(a2.clone() / a1.clone());
    let b = a2.clone() * b1.clone() / a1.clone() - b2.clone();
    Ok((
        FamilyParams::Thm1 { a, b },
        AffineMap {
            scale: a1.clone(),
            offset: b1.clone(),
        },
    ))
}

/// Map the ChebCombo family onto a Thm3 family.
///
/// Substituting z -> -z/2 in the ChebCombo generating function yields the
/// Thm3 form with parameters (a/2, -b); z is a zero of the Thm3 P_n iff
/// -z/2 is a zero of Q_n. Corollary: the zeros of every Q_n are real (and in
/// (-1,1)) iff |b| <= 1 - |a|.
pub fn map_cheb_combo_to_thm3<T: Coeff>(a: T, b: T) -> (FamilyParams<T>, AffineMap<T>) {
    let half = T::from_ratio(1, 2);
    (
        FamilyParams::Thm3 {
            a: a * half,
            b: -b,
        },
        // zeros of Q_n = -(zeros of Thm3 P_n)/2
        AffineMap {
            scale: T::from_ratio(-1, 2),
            offset: T::zero(),
        },
    )
}

/// Normalize a Thm2 family with c > 0 to a Thm3 family.
///
/// The rescaling t -> t/sqrt(c) leaves zero sets untouched but moves the
/// variable: z is a zero of the Thm2(a,b,c) P_n iff z/sqrt(c) is a zero of
/// the Thm3(a, b/sqrt(c)) P_n. Returns the Thm3 parameters and the scale
/// sqrt(c) mapping normalized zeros back to original ones.
pub fn normalize_c(a: f64, b: f64, c: f64) -> Result<(FamilyParams<f64>, f64)> {
    if c <= 0.0 {
        return Err(Error::Domain(format!(
            "normalize_c requires c > 0, got {c}; c < 0 is witness territory"
        )));
    }
    let s = c.sqrt();
    Ok((FamilyParams::Thm3 { a, b: b / s }, s))
}
