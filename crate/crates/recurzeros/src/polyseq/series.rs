//! Formal power-series inversion in t, the oracle route for sequence
//! generation.
//!
//! Denominators are built by multiplying their factored forms, so the
//! expansion here never sees the hand-collected recurrence multipliers of
//! [`super::recurrence_for_family`].

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::Coeff;

/// Polynomial in t whose coefficients are polynomials in z; index k holds
/// the t^k coefficient.
pub type TPoly<T> = Vec<Polynomial<T>>;

pub fn tpoly_mul<T: Coeff>(p: &TPoly<T>, q: &TPoly<T>) -> TPoly<T> {
    if p.is_empty() || q.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Polynomial::zero(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] = out[i + j].add(&a.mul(b));
        }
    }
    out
}

/// First n+1 power-series coefficients of 1/denominator.
///
/// The constant t-coefficient must be a nonzero constant polynomial in z
/// (all families here have constant term 1).
pub fn series_inversion_oracle<T: Coeff>(denominator: &TPoly<T>, n: usize) -> Result<TPoly<T>> {
    let d0 = denominator.first().cloned().unwrap_or_else(Polynomial::zero);
    if d0.is_zero() {
        return Err(Error::NonInvertible("zero constant term in t".into()));
    }
    if d0.degree() != Some(0) {
        return Err(Error::NonInvertible(
            "constant t-coefficient must not depend on z".into(),
        ));
    }
    let d0 = d0.coeff(0);
    let mut out: TPoly<T> = Vec::with_capacity(n + 1);
    out.push(Polynomial::constant(T::one() / d0.clone()));
    for k in 1..=n {
        let mut acc = Polynomial::zero();
        for j in 1..=k.min(denominator.len().saturating_sub(1)) {
            acc = acc.add(&denominator[j].mul(&out[k - j]));
        }
        out.push(acc.neg().scale(&(T::one() / d0.clone())));
    }
    Ok(out)
}

/// The factored denominator of a family's generating function, expanded by
/// polynomial multiplication.
pub fn family_denominator<T: Coeff>(params: &super::FamilyParams<T>) -> Result<TPoly<T>> {
    use super::FamilyParams::*;
    params.validate()?;
    let one = || Polynomial::<T>::one();
    let lin = |b: &T, a: &T| Polynomial::linear(b.clone(), a.clone());
    Ok(match params {
        // (t + 1) * ((az+b)t^2 + zt + 1)
        Thm1 { a, b } => tpoly_mul(
            &vec![one(), one()],
            &vec![one(), lin(&T::zero(), &T::one()), lin(b, a)],
        ),
        // ((az+b)t + 1) * (t^2 + zt + 1)
        Thm3 { a, b } => tpoly_mul(
            &vec![one(), lin(b, a)],
            &vec![one(), lin(&T::zero(), &T::one()), one()],
        ),
        // 1 - (a1 z + b1)t - (a2 z + b2)t^2
        GeneralR { a1, b1, a2, b2 } => {
            vec![one(), lin(b1, a1).neg(), lin(b2, a2).neg()]
        }
        // (1 - (az+b)t) * (1 - 2zt + t^2)
        ChebCombo { a, b } => tpoly_mul(
            &vec![one(), lin(b, a).neg()],
            &vec![one(), lin(&T::zero(), &T::from_int(-2)), one()],
        ),
        // ((az+b)t + 1) * (ct^2 + zt + 1)
        Thm2 { a, b, c } => tpoly_mul(
            &vec![one(), lin(b, a)],
            &vec![
                one(),
                lin(&T::zero(), &T::one()),
                Polynomial::constant(c.clone()),
            ],
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::RatPoly;
    use crate::polyseq::FamilyParams;
    use num_rational::BigRational;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::from_ratio(n, d)
    }

    #[test]
    fn geometric_series() {
        // 1/(1+t) = 1 - t + t^2 - t^3 + ...
        let den: TPoly<BigRational> = vec![RatPoly::one(), RatPoly::one()];
        let inv = series_inversion_oracle(&den, 3).unwrap();
        for (k, p) in inv.iter().enumerate() {
            assert_eq!(p, &RatPoly::from_ints(&[if k % 2 == 0 { 1 } else { -1 }]));
        }
    }

    #[test]
    fn thm1_denominator_inverts_to_sequence() {
        // (t+1)(2t^2 + zt + 1): inverse starts 1, -(z+1), z^2+z-1
        let den =
            family_denominator(&FamilyParams::Thm1 { a: rat(0, 1), b: rat(2, 1) }).unwrap();
        let inv = series_inversion_oracle(&den, 2).unwrap();
        assert_eq!(inv[0], RatPoly::one());
        assert_eq!(inv[1], RatPoly::from_ints(&[-1, -1]));
        assert_eq!(inv[2], RatPoly::from_ints(&[-1, 1, 1]));
    }

    #[test]
    fn chebyshev_generating_function() {
        // 1/(1 - 2zt + t^2): coefficients are U_n
        let den = family_denominator(&FamilyParams::ChebCombo {
            a: rat(0, 1),
            b: rat(0, 1),
        })
        .unwrap();
        let inv = series_inversion_oracle(&den, 2).unwrap();
        assert_eq!(inv[1], RatPoly::from_ints(&[0, 2]));
        assert_eq!(inv[2], RatPoly::from_ints(&[-1, 0, 4]));
    }

    #[test]
    fn rejects_bad_constant_terms() {
        let zero_const: TPoly<BigRational> = vec![RatPoly::zero(), RatPoly::one()];
        assert!(series_inversion_oracle(&zero_const, 2).is_err());
        let z_const: TPoly<BigRational> = vec![RatPoly::from_ints(&[0, 1]), RatPoly::one()];
        assert!(series_inversion_oracle(&z_const, 2).is_err());
    }

    #[test]
    fn oracle_matches_recurrence_all_families() {
        use crate::polyseq::{gen_family_sequence, recurrence_for_family};
        let cases: Vec<FamilyParams<BigRational>> = vec![
            FamilyParams::Thm1 { a: rat(1, 2), b: rat(5, 2) },
            FamilyParams::Thm3 { a: rat(-1, 4), b: rat(2, 5) },
            FamilyParams::GeneralR {
                a1: rat(2, 1),
                b1: rat(-1, 3),
                a2: rat(1, 2),
                b2: rat(4, 1),
            },
            FamilyParams::ChebCombo { a: rat(1, 3), b: rat(-3, 4) },
            FamilyParams::Thm2 { a: rat(1, 1), b: rat(0, 1), c: rat(-2, 1) },
        ];
        for params in cases {
            recurrence_for_family(&params).unwrap();
            let seq = gen_family_sequence(&params, 10).unwrap();
            let inv =
                series_inversion_oracle(&family_denominator(&params).unwrap(), 10).unwrap();
            assert_eq!(seq, inv, "mismatch for {:?}", params.tag());
        }
    }

    #[test]
    fn cheb_combo_sum_equals_generating_function() {
        use crate::polyseq::gen_cheb_combo;
        let (a, b) = (rat(1, 3), rat(-3, 4));
        let den = family_denominator(&FamilyParams::ChebCombo {
            a: a.clone(),
            b: b.clone(),
        })
        .unwrap();
        let inv = series_inversion_oracle(&den, 12).unwrap();
        for n in 0..=12 {
            assert_eq!(gen_cheb_combo(a.clone(), b.clone(), n), inv[n]);
        }
    }
}
