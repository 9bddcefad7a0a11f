//! Complex root solving and real-rootedness certification.
//!
//! The solver is Aberth-Ehrlich simultaneous iteration with Newton polish;
//! all polynomial evaluations go through the compensated double-double
//! Horner in [`dd`], so the residual floor sits near 1e-30 instead of the
//! 1e-16 a plain Horner would allow. Exact rational input ("exact-assisted"
//! mode) lifts coefficients into double-double losslessly up to 106 bits.

pub mod dd;
pub mod sturm;

use num_complex::Complex64;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::poly::{FloatPoly, RatPoly};
use dd::DdPoly;

/// Residual convergence threshold (scale-normalized).
pub const DEFAULT_TOL: f64 = 1e-12;
/// |Im| threshold (relative to max(1,|root|)) for the AllReal verdict.
pub const DEFAULT_TOL_REAL: f64 = 1e-8;
/// Slack for interval confinement checks.
pub const DEFAULT_SLACK: f64 = 1e-6;

const MAX_ITERATIONS: usize = 500;
/// Fixed irrational rotation (golden angle) breaking initial-guess symmetry.
const ANGLE_OFFSET: f64 = 2.399963229728653;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveMode {
    Floating,
    ExactAssisted,
}

/// Computed zeros with scale-normalized residuals, sorted by (Re, Im).
#[derive(Clone, Debug)]
pub struct ComplexRootSet {
    pub roots: Vec<Complex64>,
    pub residuals: Vec<f64>,
    pub mode: SolveMode,
}

impl ComplexRootSet {
    pub fn max_imag(&self) -> f64 {
        self.roots.iter().fold(0.0, |m, r| m.max(r.im.abs()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.roots
                .iter()
                .zip(&self.residuals)
                .map(|(r, res)| serde_json::json!({"re": r.re, "im": r.im, "residual": res}))
                .collect(),
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HyperbolicityStatus {
    AllReal,
    NonRealFound,
    Inconclusive,
}

/// Real-rootedness verdict; `certificate` carries the Sturm real-root count
/// when the exact backend produced one.
#[derive(Clone, Debug)]
pub struct HyperbolicityVerdict {
    pub status: HyperbolicityStatus,
    pub max_imag: f64,
    pub certificate: Option<usize>,
}

/// All complex zeros of a floating polynomial.
pub fn all_roots(p: &FloatPoly, tol: f64) -> Result<ComplexRootSet> {
    if p.is_zero() {
        return Err(Error::InvalidParams(
            "cannot solve the zero polynomial".into(),
        ));
    }
    if tol <= 0.0 {
        return Err(Error::InvalidParams("tol must be positive".into()));
    }
    let dd = DdPoly::from_f64_coeffs(p.coeffs());
    solve_dd(&dd, tol, SolveMode::Floating)
}

/// All complex zeros of an exact rational polynomial; coefficients enter the
/// solver as 106-bit double-double values.
pub fn all_roots_exact(p: &RatPoly, tol: f64) -> Result<ComplexRootSet> {
    if p.is_zero() {
        return Err(Error::InvalidParams(
            "cannot solve the zero polynomial".into(),
        ));
    }
    let dd = DdPoly::from_rational_coeffs(p.coeffs());
    solve_dd(&dd, tol, SolveMode::ExactAssisted)
}

fn solve_dd(p: &DdPoly, tol: f64, mode: SolveMode) -> Result<ComplexRootSet> {
    let deg = p.degree();
    if deg == 0 {
        return Ok(ComplexRootSet {
            roots: Vec::new(),
            residuals: Vec::new(),
            mode,
        });
    }
    let dp = p.derivative();
    let mut xs = initial_guesses(p);
    // roots that reached the residual floor stop moving; Aberth's repulsion
    // still pushes the active ones away from them
    let mut frozen = vec![false; deg];
    let mut converged = false;
    for _ in 0..MAX_ITERATIONS {
        let mut active = 0usize;
        for k in 0..deg {
            if frozen[k] {
                continue;
            }
            let (pv, scale) = p.eval(xs[k]);
            if !pv.is_finite() || !scale.is_finite() {
                xs[k] *= 0.5;
                active += 1;
                continue;
            }
            // the dd Horner floor is ~1e-32 relative; below ~1e-30 the value
            // is evaluation noise and the iterate cannot improve
            if pv.norm() <= 1e-30 * scale.max(f64::MIN_POSITIVE) {
                frozen[k] = true;
                continue;
            }
            let (dv, _) = dp.eval(xs[k]);
            let w = if dv.norm() > 0.0 {
                pv / dv
            } else {
                Complex64::new(1e-8, 1e-8)
            };
            let mut sum = Complex64::new(0.0, 0.0);
            for j in 0..deg {
                if j != k {
                    let diff = xs[k] - xs[j];
                    if diff.norm() > 0.0 {
                        sum += diff.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - w * sum;
            let step = if denom.norm() > 1e-290 { w / denom } else { w };
            xs[k] -= step;
            if step.norm() <= 1e-15 * xs[k].norm().max(1.0) {
                frozen[k] = true;
            } else {
                active += 1;
            }
        }
        if active == 0 {
            converged = true;
            break;
        }
    }
    // Newton polish sharpens each root independently.
    for x in xs.iter_mut() {
        *x = newton_polish(p, &dp, *x, 3);
    }
    snap_near_real_roots(p, &dp, &mut xs, tol);

    let mut pairs: Vec<(Complex64, f64)> = xs
        .into_iter()
        .map(|x| {
            let (pv, scale) = p.eval(x);
            (x, pv.norm() / scale.max(f64::MIN_POSITIVE))
        })
        .collect();
    pairs.sort_by(|a, b| {
        (a.0.re, a.0.im)
            .partial_cmp(&(b.0.re, b.0.im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let worst = pairs.iter().fold(0.0f64, |m, p| m.max(p.1));
    if worst > tol {
        let _ = converged;
        return Err(Error::NonConvergence {
            iterations: MAX_ITERATIONS,
            best: pairs.iter().map(|(x, _)| (x.re, x.im)).collect(),
        });
    }
    Ok(ComplexRootSet {
        residuals: pairs.iter().map(|p| p.1).collect(),
        roots: pairs.into_iter().map(|p| p.0).collect(),
        mode,
    })
}

/// Seeds on a circle whose radius bounds every root modulus, rotated off
/// the real axis.
///
/// The Fujiwara bound 2 max_k (|c_{d-k}|/|c_d|)^(1/k) is used instead of the
/// raw Cauchy bound: the family polynomials have unit leading coefficients
/// with interior coefficients around 1e12 by degree 40, so the Cauchy radius
/// overflows the evaluation range while Fujiwara stays within a factor of a
/// few of the true root radius.
fn initial_guesses(p: &DdPoly) -> Vec<Complex64> {
    let deg = p.degree();
    let lead = p.coeffs[deg].hi.abs();
    let mut radius = 0.0f64;
    for (i, c) in p.coeffs[..deg].iter().enumerate() {
        let k = (deg - i) as f64;
        let r = (c.hi.abs() / lead).powf(1.0 / k);
        radius = radius.max(r);
    }
    let radius = 2.0 * radius.max(1e-3);
    (0..deg)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / deg as f64 + ANGLE_OFFSET;
            Complex64::from_polar(radius, angle)
        })
        .collect()
}

fn newton_polish(p: &DdPoly, dp: &DdPoly, mut x: Complex64, steps: usize) -> Complex64 {
    for _ in 0..steps {
        let (pv, scale) = p.eval(x);
        if pv.norm() <= 1e-280 * scale.max(1e-280) {
            break;
        }
        let (dv, _) = dp.eval(x);
        if dv.norm() == 0.0 {
            break;
        }
        let step = pv / dv;
        if !step.re.is_finite() || !step.im.is_finite() {
            break;
        }
        x -= step;
    }
    x
}

/// Real-coefficient polynomials keep their root multisets conjugation
/// closed; iterates that landed a hair off the axis are snapped back when a
/// real Newton refinement reaches the same residual quality.
fn snap_near_real_roots(p: &DdPoly, dp: &DdPoly, xs: &mut [Complex64], tol: f64) {
    for x in xs.iter_mut() {
        if x.im == 0.0 {
            continue;
        }
        if x.im.abs() > 1e-3 * x.re.abs().max(1.0) {
            continue;
        }
        let mut xr = x.re;
        for _ in 0..4 {
            let (pv, _) = p.eval_real(xr);
            let (dv, _) = dp.eval_real(xr);
            if dv == 0.0 || !(pv / dv).is_finite() {
                break;
            }
            xr -= pv / dv;
        }
        let (pv, scale) = p.eval_real(xr);
        let (pc, scale_c) = p.eval(*x);
        let res_real = pv.abs() / scale.max(f64::MIN_POSITIVE);
        let res_complex = pc.norm() / scale_c.max(f64::MIN_POSITIVE);
        if res_real <= res_complex.max(tol) {
            *x = Complex64::new(xr, 0.0);
        }
    }
}

/// AllReal iff every root satisfies |Im| <= tol_real * max(1, |root|).
/// Solver non-convergence degrades to an Inconclusive verdict.
pub fn is_hyperbolic(p: &FloatPoly, tol_real: f64) -> Result<HyperbolicityVerdict> {
    if p.is_zero() {
        return Err(Error::InvalidParams("zero polynomial".into()));
    }
    match all_roots(p, DEFAULT_TOL) {
        Ok(rs) => Ok(verdict_from_roots(&rs, tol_real, None)),
        Err(Error::NonConvergence { best, .. }) => Ok(HyperbolicityVerdict {
            status: HyperbolicityStatus::Inconclusive,
            max_imag: best.iter().fold(0.0f64, |m, r| m.max(r.1.abs())),
            certificate: None,
        }),
        Err(e) => Err(e),
    }
}

/// Exact-assisted verdict: roots from the 106-bit solver, reality certified
/// by a Sturm real-root count over the whole line.
pub fn is_hyperbolic_exact(p: &RatPoly) -> Result<HyperbolicityVerdict> {
    if p.is_zero() {
        return Err(Error::InvalidParams("zero polynomial".into()));
    }
    let count = sturm::count_real_roots_total(p);
    let deg = p.degree().unwrap_or(0);
    let max_imag = match all_roots_exact(p, DEFAULT_TOL) {
        Ok(rs) => rs.max_imag(),
        Err(Error::NonConvergence { best, .. }) => {
            best.iter().fold(0.0f64, |m, r| m.max(r.1.abs()))
        }
        Err(e) => return Err(e),
    };
    Ok(HyperbolicityVerdict {
        status: if count == deg {
            HyperbolicityStatus::AllReal
        } else {
            HyperbolicityStatus::NonRealFound
        },
        max_imag,
        certificate: Some(count),
    })
}

fn verdict_from_roots(
    rs: &ComplexRootSet,
    tol_real: f64,
    certificate: Option<usize>,
) -> HyperbolicityVerdict {
    let all_real = rs
        .roots
        .iter()
        .all(|r| r.im.abs() <= tol_real * r.norm().max(1.0));
    HyperbolicityVerdict {
        status: if all_real {
            HyperbolicityStatus::AllReal
        } else {
            HyperbolicityStatus::NonRealFound
        },
        max_imag: rs.max_imag(),
        certificate,
    }
}

/// True iff every root has |Im| <= slack and Re in [lo - slack, hi + slack].
pub fn roots_in_interval(rs: &ComplexRootSet, lo: f64, hi: f64, slack: f64) -> bool {
    rs.roots
        .iter()
        .all(|r| r.im.abs() <= slack && r.re >= lo - slack && r.re <= hi + slack)
}

/// Exact real-root count of a rational polynomial on the open interval
/// (lo, hi); see [`sturm::count_real_roots_exact`].
pub fn count_real_roots_exact(p: &RatPoly, lo: &BigRational, hi: &BigRational) -> Result<usize> {
    sturm::count_real_roots_exact(p, lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::FloatPoly;
    use crate::scalar::Coeff;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn solve(coeffs: &[f64]) -> ComplexRootSet {
        all_roots(&FloatPoly::new(coeffs.to_vec()), DEFAULT_TOL).unwrap()
    }

    #[test]
    fn quadratic_golden_ratio() {
        // z^2 + z - 1
        let rs = solve(&[-1.0, 1.0, 1.0]);
        assert_eq!(rs.roots.len(), 2);
        assert!((rs.roots[0].re - (-1.618033988749895)).abs() < 1e-12);
        assert!((rs.roots[1].re - 0.618033988749895).abs() < 1e-12);
        assert_eq!(rs.max_imag(), 0.0);
    }

    #[test]
    fn linear_and_constant() {
        let rs = solve(&[-3.0, 1.0]);
        assert_eq!(rs.roots.len(), 1);
        assert!((rs.roots[0].re - 3.0).abs() < 1e-13);
        let rs = solve(&[7.0]);
        assert!(rs.roots.is_empty());
    }

    #[test]
    fn pure_imaginary_pair() {
        let rs = solve(&[1.0, 0.0, 1.0]);
        assert_eq!(rs.roots.len(), 2);
        assert!((rs.roots[0].im + 1.0).abs() < 1e-12);
        assert!((rs.roots[1].im - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_zero_polynomial() {
        assert!(all_roots(&FloatPoly::zero(), DEFAULT_TOL).is_err());
    }

    #[test]
    fn reconstruction_random_degree_40() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let deg = rng.gen_range(3..=40);
            let coeffs: Vec<f64> = (0..=deg)
                .map(|i| {
                    let c: f64 = rng.gen_range(-2.0..2.0);
                    if i == deg && c.abs() < 0.1 {
                        1.0
                    } else {
                        c
                    }
                })
                .collect();
            let p = FloatPoly::new(coeffs);
            let deg = p.degree().unwrap();
            let rs = all_roots(&p, DEFAULT_TOL).unwrap();
            assert_eq!(rs.roots.len(), deg);
            // multiply out lead * prod (z - r_i) and compare
            let mut rec = vec![Complex64::new(1.0, 0.0)];
            for r in &rs.roots {
                let mut next = vec![Complex64::new(0.0, 0.0); rec.len() + 1];
                for (i, c) in rec.iter().enumerate() {
                    next[i] -= c * r;
                    next[i + 1] += c;
                }
                rec = next;
            }
            let lead = *p.leading().unwrap();
            let scale = p.max_abs_coeff();
            for (i, c) in rec.iter().enumerate() {
                let err = (c * lead - Complex64::new(p.coeff(i), 0.0)).norm();
                assert!(err <= 1e-8 * scale, "coeff {i} err {err:.2e}");
            }
        }
    }

    #[test]
    fn conjugate_symmetry() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let deg = rng.gen_range(2..=15);
            let coeffs: Vec<f64> = (0..=deg).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let p = FloatPoly::new(coeffs);
            if p.degree().map_or(true, |d| d < 1) {
                continue;
            }
            let rs = all_roots(&p, DEFAULT_TOL).unwrap();
            for r in &rs.roots {
                let conj_present = rs
                    .roots
                    .iter()
                    .any(|s| (s - r.conj()).norm() <= 1e-9 * r.norm().max(1.0));
                assert!(conj_present, "conjugate of {r} missing");
            }
        }
    }

    #[test]
    fn hyperbolicity_verdicts() {
        let v = is_hyperbolic(&FloatPoly::from_ints(&[-1, 1, 1]), DEFAULT_TOL_REAL).unwrap();
        assert_eq!(v.status, HyperbolicityStatus::AllReal);
        let v = is_hyperbolic(&FloatPoly::new(vec![0.5, 1.0, 1.0]), DEFAULT_TOL_REAL).unwrap();
        assert_eq!(v.status, HyperbolicityStatus::NonRealFound);
        assert!(v.max_imag > 0.4);
        let v = is_hyperbolic(&FloatPoly::from_ints(&[1]), DEFAULT_TOL_REAL).unwrap();
        assert_eq!(v.status, HyperbolicityStatus::AllReal);
    }

    #[test]
    fn interval_checks() {
        let rs = solve(&[-1.0, 1.0, 1.0]);
        let lim = 2.0 * std::f64::consts::SQRT_2;
        assert!(roots_in_interval(&rs, -lim, lim, DEFAULT_SLACK));
        let rs = solve(&[1.0, 0.0, 1.0]);
        assert!(!roots_in_interval(&rs, -2.0, 2.0, DEFAULT_SLACK));
        let empty = solve(&[5.0]);
        assert!(roots_in_interval(&empty, 0.0, 1.0, DEFAULT_SLACK));
    }

    #[test]
    fn exact_assisted_high_degree_family() {
        // Thm1(0,4) at n = 40: monomial-basis conditioning already kills a
        // plain f64 pipeline here; the dd solver must keep roots real and
        // inside (-4, 4).
        use crate::polyseq::{gen_family_sequence, FamilyParams};
        let seq = gen_family_sequence(
            &FamilyParams::Thm1 {
                a: BigRational::from_int(0),
                b: BigRational::from_int(4),
            },
            40,
        )
        .unwrap();
        let rs = all_roots_exact(&seq[40], DEFAULT_TOL).unwrap();
        assert_eq!(rs.roots.len(), 40);
        assert_eq!(rs.max_imag(), 0.0);
        assert!(roots_in_interval(&rs, -4.0, 4.0, 1e-6));
    }

    #[test]
    fn float_and_exact_agree_on_separated_roots() {
        // Polynomials built from rational roots bounded away from (or onto)
        // the real axis by at least 1e-5.
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..100 {
            let real_roots = rng.gen_range(0..=4usize);
            let complex_pairs = rng.gen_range(0..=3usize);
            if real_roots + complex_pairs == 0 {
                continue;
            }
            let mut p = RatPoly::one();
            for _ in 0..real_roots {
                let r = BigRational::from_ratio(rng.gen_range(-20..=20), rng.gen_range(1..=4));
                p = p.mul(&RatPoly::new(vec![-r, BigRational::from_int(1)]));
            }
            let mut has_complex = false;
            for _ in 0..complex_pairs {
                let re = BigRational::from_ratio(rng.gen_range(-8..=8), rng.gen_range(1..=4));
                let im = BigRational::from_ratio(rng.gen_range(1..=8), rng.gen_range(1..=2));
                has_complex = true;
                // (z - re)^2 + im^2
                let shift = RatPoly::new(vec![-re, BigRational::from_int(1)]);
                p = p.mul(&shift.mul(&shift).add(&RatPoly::constant(im.clone() * im)));
            }
            let exact = is_hyperbolic_exact(&p).unwrap();
            let float = is_hyperbolic(&p.to_f64_poly(), DEFAULT_TOL_REAL).unwrap();
            assert_eq!(
                exact.status == HyperbolicityStatus::AllReal,
                !has_complex,
                "sturm disagrees with construction"
            );
            assert_eq!(exact.status, float.status, "modes disagree on {:?}", p);
        }
    }
}
