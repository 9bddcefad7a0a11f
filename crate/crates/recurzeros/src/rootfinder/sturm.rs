//! Sturm-chain real-root counting over exact rationals.
//!
//! Counts are with multiplicity: the square-free part is counted by sign
//! variations and the gcd factor is counted recursively, so a count equal to
//! the degree certifies that every zero is real.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::RatPoly;
use crate::scalar::Coeff;

/// Divide out the content (gcd of numerators over lcm of denominators),
/// keeping the sign of the leading coefficient.
fn normalize_content(p: &RatPoly) -> RatPoly {
    if p.is_zero() {
        return p.clone();
    }
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for c in p.coeffs() {
        num_gcd = num_bigint::BigInt::from(num_integer::gcd(
            num_gcd.clone(),
            c.numer().clone(),
        ));
        den_lcm = num_integer::lcm(den_lcm, c.denom().clone());
    }
    if num_gcd.is_zero() {
        return p.clone();
    }
    let content = BigRational::new(num_gcd, den_lcm);
    p.scale(&(BigRational::one() / content))
}

/// Remainder of polynomial long division.
fn poly_rem(num: &RatPoly, den: &RatPoly) -> RatPoly {
    let dd = den.degree().expect("nonzero divisor");
    let dlead = den.coeff(dd);
    let mut rem: Vec<BigRational> = num.coeffs().to_vec();
    while rem.len() > dd {
        let k = rem.len() - 1;
        let factor = rem[k].clone() / dlead.clone();
        if !factor.is_zero() {
            for i in 0..=dd {
                let idx = k - dd + i;
                rem[idx] = rem[idx].clone() - factor.clone() * den.coeff(i);
            }
        }
        rem.pop();
        while rem.last().map_or(false, |c| c.is_zero()) {
            rem.pop();
        }
    }
    RatPoly::new(rem)
}

fn poly_gcd(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let mut a = normalize_content(a);
    let mut b = normalize_content(b);
    while !b.is_zero() {
        let r = normalize_content(&poly_rem(&a, &b));
        a = b;
        b = r;
    }
    a
}

fn poly_div_exact(num: &RatPoly, den: &RatPoly) -> RatPoly {
    let dd = den.degree().expect("nonzero divisor");
    let dlead = den.coeff(dd);
    let mut rem: Vec<BigRational> = num.coeffs().to_vec();
    let qd = match num.degree() {
        Some(nd) if nd >= dd => nd - dd,
        _ => return RatPoly::zero(),
    };
    let mut quot = vec![BigRational::zero(); qd + 1];
    while rem.len() > dd {
        let k = rem.len() - 1;
        let factor = rem[k].clone() / dlead.clone();
        quot[k - dd] = factor.clone();
        for i in 0..=dd {
            let idx = k - dd + i;
            rem[idx] = rem[idx].clone() - factor.clone() * den.coeff(i);
        }
        rem.pop();
        while rem.last().map_or(false, |c| c.is_zero()) {
            rem.pop();
        }
    }
    RatPoly::new(quot)
}

/// Sturm chain of the square-free part of p.
fn sturm_chain(p: &RatPoly) -> Vec<RatPoly> {
    let sf = square_free(p);
    let mut chain = vec![normalize_content(&sf), normalize_content(&sf.derivative())];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() || chain[n - 1].degree() == Some(0) {
            break;
        }
        let r = normalize_content(&poly_rem(&chain[n - 2], &chain[n - 1]).neg());
        if r.is_zero() {
            break;
        }
        chain.push(r);
    }
    chain
}

fn square_free(p: &RatPoly) -> RatPoly {
    if p.degree().map_or(true, |d| d == 0) {
        return p.clone();
    }
    let g = poly_gcd(p, &p.derivative());
    if g.degree().map_or(true, |d| d == 0) {
        p.clone()
    } else {
        poly_div_exact(p, &g)
    }
}

fn sign_at(p: &RatPoly, x: &BigRational) -> i8 {
    let v = p.eval(x);
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

fn sign_at_neg_inf(p: &RatPoly) -> i8 {
    match p.degree() {
        None => 0,
        Some(d) => {
            let lead = p.coeff(d);
            let s = if lead.is_positive() { 1 } else { -1 };
            if d % 2 == 0 {
                s
            } else {
                -s
            }
        }
    }
}

fn sign_at_pos_inf(p: &RatPoly) -> i8 {
    match p.degree() {
        None => 0,
        Some(d) => {
            let lead = p.coeff(d);
            if lead.is_positive() {
                1
            } else {
                -1
            }
        }
    }
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut count = 0;
    let mut last: Option<i8> = None;
    for s in signs {
        if s == 0 {
            continue;
        }
        if let Some(l) = last {
            if l != s {
                count += 1;
            }
        }
        last = Some(s);
    }
    count
}

/// Distinct real roots of the square-free part in (lo, hi].
fn count_distinct_in(chain: &[RatPoly], lo: &BigRational, hi: &BigRational) -> usize {
    let vlo = variations(chain.iter().map(|p| sign_at(p, lo)));
    let vhi = variations(chain.iter().map(|p| sign_at(p, hi)));
    vlo.saturating_sub(vhi)
}

fn count_distinct_total(chain: &[RatPoly]) -> usize {
    let vlo = variations(chain.iter().map(sign_at_neg_inf));
    let vhi = variations(chain.iter().map(sign_at_pos_inf));
    vlo.saturating_sub(vhi)
}

/// Real roots (with multiplicity) of p in the open interval (lo, hi).
///
/// Endpoints must not be roots; a root at an endpoint produces
/// [`Error::EndpointIsRoot`] with a suggested nudge.
pub fn count_real_roots_exact(p: &RatPoly, lo: &BigRational, hi: &BigRational) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::InvalidParams("zero polynomial".into()));
    }
    if lo >= hi {
        return Err(Error::InvalidParams("need lo < hi".into()));
    }
    let nudge = (hi - lo) / BigRational::from_int(1000);
    for (x, which) in [(lo, "lo"), (hi, "hi")] {
        if p.eval(x).is_zero() {
            return Err(Error::EndpointIsRoot {
                endpoint: format!("{which} = {x}"),
                suggestion: format!("shift {which} by {nudge} away from the interval"),
            });
        }
    }
    let mut total = 0;
    let mut q = p.clone();
    loop {
        match q.degree() {
            None | Some(0) => break,
            Some(_) => {}
        }
        let chain = sturm_chain(&q);
        total += count_distinct_in(&chain, lo, hi);
        let g = poly_gcd(&q, &q.derivative());
        if g.degree().map_or(true, |d| d == 0) {
            break;
        }
        q = g;
    }
    Ok(total)
}

/// Real roots (with multiplicity) of p over the whole real line.
pub fn count_real_roots_total(p: &RatPoly) -> usize {
    let mut total = 0;
    let mut q = p.clone();
    loop {
        match q.degree() {
            None | Some(0) => break,
            Some(_) => {}
        }
        let chain = sturm_chain(&q);
        total += count_distinct_total(&chain);
        let g = poly_gcd(&q, &q.derivative());
        if g.degree().map_or(true, |d| d == 0) {
            break;
        }
        q = g;
    }
    total
}
