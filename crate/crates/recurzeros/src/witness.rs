//! Non-hyperbolicity witnesses.
//!
//! Outside the sufficient parameter regions, a non-real z* is constructed so
//! that the two smallest-modulus t-zeros of the generating function's
//! denominator tie in modulus. Zeros of the generated polynomials then
//! accumulate near z*, which `verify_witness` confirms empirically.

use num_complex::Complex64;
use serde_json::json;

use crate::error::{Error, Result};
use crate::polyseq::{gen_family_sequence, FamilyParams};
use crate::rootfinder::{all_roots_exact, DEFAULT_TOL};
use crate::scalar::rational_from_f64;

/// Witness construction branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessCase {
    Thm1LowB,
    Thm1Mid,
    Thm2SmallB,
    Thm2BigB,
    Thm3Case1,
    Thm3Case2,
    Thm3Case3a,
    Thm3Case3b,
}

impl WitnessCase {
    pub fn name(&self) -> &'static str {
        match self {
            WitnessCase::Thm1LowB => "thm1-b-le-neg1",
            WitnessCase::Thm1Mid => "thm1-mid",
            WitnessCase::Thm2SmallB => "thm2-small-b",
            WitnessCase::Thm2BigB => "thm2-big-b",
            WitnessCase::Thm3Case1 => "thm3-case1",
            WitnessCase::Thm3Case2 => "thm3-case2",
            WitnessCase::Thm3Case3a => "thm3-case3a",
            WitnessCase::Thm3Case3b => "thm3-case3b",
        }
    }
}

/// One claimed t-zero with its modulus and the residual in its denominator
/// factor (scale-normalized).
#[derive(Clone, Copy, Debug)]
pub struct TZero {
    pub value: Complex64,
    pub modulus: f64,
    pub residual: f64,
}

#[derive(Clone, Copy, Debug)]
pub struct WitnessChecks {
    pub z_star_nonreal: bool,
    pub moduli_ordering_ok: bool,
    pub zeros_distinct: bool,
}

impl WitnessChecks {
    pub fn all_pass(&self) -> bool {
        self.z_star_nonreal && self.moduli_ordering_ok && self.zeros_distinct
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Empirical {
    pub n_max: usize,
    /// First index whose polynomial has a zero with |Im| > 1e-6.
    pub first_nonreal_n: Option<usize>,
    /// Min distance from z* to the zeros of P_{n_max}.
    pub dist_to_zstar: f64,
}

#[derive(Clone, Debug)]
pub struct WitnessReport {
    pub family: FamilyParams<f64>,
    pub case_tag: WitnessCase,
    pub theta_star: Option<f64>,
    pub z_star: Complex64,
    /// Claimed denominator t-zeros, sorted by modulus. For Thm2 witnesses
    /// these live in the c = -1 normalized coordinates.
    pub t_zeros: Vec<TZero>,
    /// Set when the quadratic factor collapsed to linear and one zero sits
    /// at infinity.
    pub infinite_zero: bool,
    pub checks: WitnessChecks,
    pub empirical: Option<Empirical>,
}

impl WitnessReport {
    pub fn to_json(&self) -> serde_json::Value {
        let family = match &self.family {
            FamilyParams::Thm1 { a, b } => json!({"tag": "thm1", "a": a, "b": b}),
            FamilyParams::Thm3 { a, b } => json!({"tag": "thm3", "a": a, "b": b}),
            FamilyParams::Thm2 { a, b, c } => json!({"tag": "thm2", "a": a, "b": b, "c": c}),
            other => json!({ "tag": other.tag() }),
        };
        json!({
            "family": family,
            "case": self.case_tag.name(),
            "theta_star": self.theta_star,
            "z_star": {"re": self.z_star.re, "im": self.z_star.im},
            "t_zeros": self.t_zeros.iter().map(|t| json!({
                "re": t.value.re, "im": t.value.im,
                "modulus": t.modulus, "residual": t.residual,
            })).collect::<Vec<_>>(),
            "infinite_zero": self.infinite_zero,
            "checks": {
                "z_star_nonreal": self.checks.z_star_nonreal,
                "moduli_ordering_ok": self.checks.moduli_ordering_ok,
                "zeros_distinct": self.checks.zeros_distinct,
            },
            "empirical": self.empirical.map(|e| json!({
                "n_max": e.n_max,
                "first_nonreal_n": e.first_nonreal_n,
                "dist_to_zstar": e.dist_to_zstar,
            })),
        })
    }
}

const NONREAL_EPS: f64 = 1e-9;
const MODULI_TIE: f64 = 1e-10;
const DISTINCT_EPS: f64 = 1e-9;
/// Geometric sweep depth for theta searches.
const SWEEP_DEPTH: u32 = 40;
/// Uniform sweep resolution for the maximum-modulus branches.
const UNIFORM_SWEEP: usize = 720;

fn residual_linear(c1: Complex64, c0: Complex64, t: Complex64) -> f64 {
    let v = c1 * t + c0;
    let scale = c1.norm() * t.norm() + c0.norm();
    v.norm() / scale.max(f64::MIN_POSITIVE)
}

fn residual_quadratic(c2: Complex64, c1: Complex64, c0: Complex64, t: Complex64) -> f64 {
    let v = (c2 * t + c1) * t + c0;
    let scale = c2.norm() * t.norm() * t.norm() + c1.norm() * t.norm() + c0.norm();
    v.norm() / scale.max(f64::MIN_POSITIVE)
}

fn build_checks(z_star: Complex64, t_zeros: &[TZero]) -> WitnessChecks {
    let mut mods: Vec<f64> = t_zeros.iter().map(|t| t.modulus).collect();
    mods.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let moduli_ordering_ok = mods.len() >= 2
        && (mods[0] - mods[1]).abs() <= MODULI_TIE * mods[0].max(1.0)
        && (mods.len() < 3 || mods[1] <= mods[2] + MODULI_TIE);
    let mut zeros_distinct = true;
    for i in 0..t_zeros.len() {
        for j in i + 1..t_zeros.len() {
            if (t_zeros[i].value - t_zeros[j].value).norm() <= DISTINCT_EPS {
                zeros_distinct = false;
            }
        }
    }
    WitnessChecks {
        z_star_nonreal: z_star.im.abs() > NONREAL_EPS,
        moduli_ordering_ok,
        zeros_distinct,
    }
}

fn sorted_tzeros(mut zs: Vec<TZero>) -> Vec<TZero> {
    zs.sort_by(|a, b| {
        (a.modulus, a.value.re, a.value.im)
            .partial_cmp(&(b.modulus, b.value.re, b.value.im))
            .unwrap()
    });
    zs
}

/// Square root with the branch cut along [0, inf): the argument is
/// normalized into (0, 2pi) before halving, so values land in the upper
/// half plane.
fn sqrt_cut_positive_axis(w: Complex64) -> Complex64 {
    let r = w.norm();
    let mut arg = w.arg();
    if arg <= 0.0 {
        arg += 2.0 * std::f64::consts::PI;
    }
    Complex64::from_polar(r.sqrt(), arg / 2.0)
}

// ---------------------------------------------------------------------------
// thm1 witnesses
// ---------------------------------------------------------------------------

/// Witness for the thm1 family with b <= -1.
///
/// theta* keeps a^2 cos^2(theta*) < -b with cos(theta*) != 0; tau* is the
/// upper-half-plane root of b tau^2 - 2a tau cos(theta*) - 1, which gives
/// |tau*|^2 = -1/b <= 1, and z* = -2b tau* cos(theta*) / (2a tau* cos(theta*) + 1).
/// The denominator zeros are then {-1, tau* e^{+-i theta*}} with the pair
/// tying at modulus 1/sqrt(-b) <= 1.
pub fn witness_thm1_low(a: f64, b: f64) -> Result<WitnessReport> {
    if b > -1.0 {
        return Err(Error::InvalidParams(format!(
            "thm1 low-b witness needs b <= -1, got b = {b}"
        )));
    }
    let cos_star = if a == 0.0 {
        0.5
    } else {
        0.5 * 1.0f64.min((-b).sqrt() / a.abs())
    };
    let theta = cos_star.acos();
    let rad = a * a * cos_star * cos_star + b;
    debug_assert!(rad < 0.0);
    // root with positive imaginary part (b < 0 flips the sign of -i sqrt)
    let tau = Complex64::new(a * cos_star, -(-rad).sqrt()) / b;
    let z_star = -2.0 * b * tau * cos_star / (2.0 * a * tau * cos_star + 1.0);
    let azb = a * z_star + b;
    let c1 = Complex64::new(1.0, 0.0);
    let t_lin = Complex64::new(-1.0, 0.0);
    let tq1 = tau * Complex64::from_polar(1.0, theta);
    let tq2 = tau * Complex64::from_polar(1.0, -theta);
    let t_zeros = sorted_tzeros(vec![
        TZero {
            value: t_lin,
            modulus: 1.0,
            residual: residual_linear(c1, c1, t_lin),
        },
        TZero {
            value: tq1,
            modulus: tq1.norm(),
            residual: residual_quadratic(azb, z_star, c1, tq1),
        },
        TZero {
            value: tq2,
            modulus: tq2.norm(),
            residual: residual_quadratic(azb, z_star, c1, tq2),
        },
    ]);
    let checks = build_checks(z_star, &t_zeros);
    Ok(WitnessReport {
        family: FamilyParams::Thm1 { a, b },
        case_tag: WitnessCase::Thm1LowB,
        theta_star: Some(theta),
        z_star,
        t_zeros,
        infinite_zero: false,
        checks,
        empirical: None,
    })
}

/// Witness for the thm1 family with -1 < b < 1 + 2|a|.
///
/// Sweeps theta* toward 0 (a >= 0) or pi (a < 0) until
/// b^2 - 2ab cos(theta*) < 1 + 2a cos(theta*); then
/// z* = (-1 - b e^{2i theta*}) / (a e^{2i theta*} + e^{i theta*}) puts
/// e^{i theta*} on the quadratic factor with the partner zero outside the
/// unit circle (|a z* + b| < 1), so the two smallest zeros are e^{i theta*}
/// and -1, both of modulus 1.
pub fn witness_thm1_mid(a: f64, b: f64, theta_start: Option<f64>) -> Result<WitnessReport> {
    if !(-1.0 < b && b < 1.0 + 2.0 * a.abs()) {
        return Err(Error::InvalidParams(format!(
            "thm1 mid witness needs -1 < b < 1 + 2|a|, got a = {a}, b = {b}"
        )));
    }
    let pi = std::f64::consts::PI;
    let mut candidates: Vec<f64> = Vec::new();
    candidates.extend(theta_start);
    for k in 1..=SWEEP_DEPTH {
        let step = pi * 2f64.powi(-(k as i32));
        candidates.push(if a >= 0.0 { step } else { pi - step });
    }
    let mut last_reason = String::new();
    for theta in candidates {
        if !(0.0 < theta && theta < pi) {
            continue;
        }
        let c = theta.cos();
        if !(b * b - 2.0 * a * b * c < 1.0 + 2.0 * a * c) {
            last_reason = format!("squared-modulus inequality fails at theta = {theta}");
            continue;
        }
        let e1 = Complex64::from_polar(1.0, theta);
        let e2 = Complex64::from_polar(1.0, 2.0 * theta);
        let z_star = (-1.0 - b * e2) / (a * e2 + e1);
        if z_star.im.abs() <= NONREAL_EPS {
            last_reason = format!("z* nearly real at theta = {theta}");
            continue;
        }
        let azb = a * z_star + b;
        if azb.norm() >= 1.0 {
            last_reason = format!("|a z* + b| = {} >= 1 at theta = {theta}", azb.norm());
            continue;
        }
        let one = Complex64::new(1.0, 0.0);
        let t_lin = Complex64::new(-1.0, 0.0);
        let mut t_zeros = vec![
            TZero {
                value: t_lin,
                modulus: 1.0,
                residual: residual_linear(one, one, t_lin),
            },
            TZero {
                value: e1,
                modulus: 1.0,
                residual: residual_quadratic(azb, z_star, one, e1),
            },
        ];
        let mut infinite_zero = true;
        if azb.norm() > 1e-12 {
            let other = 1.0 / (azb * e1);
            t_zeros.push(TZero {
                value: other,
                modulus: other.norm(),
                residual: residual_quadratic(azb, z_star, one, other),
            });
            infinite_zero = false;
        }
        let t_zeros = sorted_tzeros(t_zeros);
        let checks = build_checks(z_star, &t_zeros);
        if !checks.all_pass() {
            last_reason = format!("certificates failed at theta = {theta}");
            continue;
        }
        return Ok(WitnessReport {
            family: FamilyParams::Thm1 { a, b },
            case_tag: WitnessCase::Thm1Mid,
            theta_star: Some(theta),
            z_star,
            t_zeros,
            infinite_zero,
            checks,
            empirical: None,
        });
    }
    Err(Error::SearchFailure(format!(
        "thm1 mid sweep exhausted for a = {a}, b = {b}: {last_reason}"
    )))
}

/// Dispatch a thm1 witness on b.
pub fn witness_thm1(a: f64, b: f64, theta_start: Option<f64>) -> Result<WitnessReport> {
    if b <= -1.0 {
        witness_thm1_low(a, b)
    } else if b < 1.0 + 2.0 * a.abs() {
        witness_thm1_mid(a, b, theta_start)
    } else {
        Err(Error::InvalidParams(format!(
            "b = {b} >= 1 + 2|a| = {}: inside the real-rooted region, no witness exists",
            1.0 + 2.0 * a.abs()
        )))
    }
}

// ---------------------------------------------------------------------------
// thm2 witness (c < 0)
// ---------------------------------------------------------------------------

/// Witness for the thm2 family with c < 0.
///
/// Internally rescaled to c = -1 (t -> t/sqrt|c| moves zeros by z ->
/// z/sqrt|c|); the reported z* is in the original coordinates while the
/// t-zero certificates live in the normalized denominator
/// ((a'z+b')t + 1)(-t^2 + zt + 1).
pub fn witness_thm2(a: f64, b: f64, c: f64, theta_start: Option<f64>) -> Result<WitnessReport> {
    if c >= 0.0 {
        return Err(Error::InvalidParams(format!(
            "thm2 witness needs c < 0, got c = {c} (c > 0 is the thm3 regime)"
        )));
    }
    let s = (-c).sqrt();
    let (an, bn) = (a, b / s);
    let one = Complex64::new(1.0, 0.0);
    let neg1 = Complex64::new(-1.0, 0.0);

    if bn.abs() < 1.0 {
        // z* = i y* puts the quadratic zeros on the unit circle; the linear
        // factor's zero stays outside because a^2 y*^2 + b^2 < 1.
        let ub = if an == 0.0 {
            2.0
        } else {
            2.0f64.min((1.0 - bn * bn).sqrt() / an.abs())
        };
        let y = 0.5 * ub;
        let z_norm = Complex64::new(0.0, y);
        let azb = an * z_norm + bn;
        let disc = (4.0 - y * y).sqrt();
        let q1 = (z_norm + disc) / 2.0;
        let q2 = (z_norm - disc) / 2.0;
        let t_lin = -1.0 / azb;
        let t_zeros = sorted_tzeros(vec![
            TZero {
                value: q1,
                modulus: q1.norm(),
                residual: residual_quadratic(neg1, z_norm, one, q1),
            },
            TZero {
                value: q2,
                modulus: q2.norm(),
                residual: residual_quadratic(neg1, z_norm, one, q2),
            },
            TZero {
                value: t_lin,
                modulus: t_lin.norm(),
                residual: residual_linear(azb, one, t_lin),
            },
        ]);
        let z_star = s * z_norm;
        let checks = build_checks(z_star, &t_zeros);
        return Ok(WitnessReport {
            family: FamilyParams::Thm2 { a, b, c },
            case_tag: WitnessCase::Thm2SmallB,
            theta_star: None,
            z_star,
            t_zeros,
            infinite_zero: false,
            checks,
            empirical: None,
        });
    }

    // |b| >= 1: maximize |f(e^{i theta})| with the principal cut, where
    // f(z) = (|b| + sqrt(b^2 + 4a^2 - 4az)) / (2a - 2z); at the chosen
    // theta*, |a z* + b| = |f(e^{i theta*})| >= 1 makes the linear zero and
    // one quadratic zero the tying smallest pair.
    let pi = std::f64::consts::PI;
    let f_at = |theta: f64| -> (f64, Complex64, Complex64) {
        let e = Complex64::from_polar(1.0, theta);
        let d = Complex64::new(bn * bn + 4.0 * an * an, 0.0) - 4.0 * an * e;
        let sq = d.sqrt();
        let f = (bn.abs() + sq) / (2.0 * an - 2.0 * e);
        (f.norm(), e, sq)
    };
    let mut best: Option<(f64, f64)> = None;
    let mut try_theta = |theta: f64| {
        let (fm, _, _) = f_at(theta);
        let better = match best {
            None => true,
            Some((bm, bt)) => {
                fm > bm + 1e-12
                    || (fm > bm - 1e-12 && (theta - pi / 2.0).abs() < (bt - pi / 2.0).abs())
            }
        };
        if better {
            best = Some((fm, theta));
        }
    };
    if let Some(t0) = theta_start {
        try_theta(t0);
    }
    for j in 1..UNIFORM_SWEEP {
        try_theta(pi * j as f64 / UNIFORM_SWEEP as f64);
    }
    let (fmax, theta) = best.unwrap();
    if fmax < 1.0 - 1e-12 {
        return Err(Error::SearchFailure(format!(
            "max |f| = {fmax} < 1 over {UNIFORM_SWEEP}-point sweep (branch-cut bug suspected)"
        )));
    }
    let (_, e, sq) = f_at(theta);
    let sb = bn.signum();
    let z_norm = if an != 0.0 {
        (-2.0 * an * bn + bn * e - sb * e * sq) / (2.0 * an * an - 2.0 * an * e)
    } else {
        // linear z-equation: -b e^{i theta} z + b^2 - e^{2i theta} = 0
        (bn * bn - e * e) / (bn * e)
    };
    let azb = an * z_norm + bn;
    let t1 = -e / azb;
    let t2 = -1.0 / t1;
    let t_lin = -1.0 / azb;
    let t_zeros = sorted_tzeros(vec![
        TZero {
            value: t1,
            modulus: t1.norm(),
            residual: residual_quadratic(neg1, z_norm, one, t1),
        },
        TZero {
            value: t2,
            modulus: t2.norm(),
            residual: residual_quadratic(neg1, z_norm, one, t2),
        },
        TZero {
            value: t_lin,
            modulus: t_lin.norm(),
            residual: residual_linear(azb, one, t_lin),
        },
    ]);
    let z_star = s * z_norm;
    let checks = build_checks(z_star, &t_zeros);
    Ok(WitnessReport {
        family: FamilyParams::Thm2 { a, b, c },
        case_tag: WitnessCase::Thm2BigB,
        theta_star: Some(theta),
        z_star,
        t_zeros,
        infinite_zero: false,
        checks,
        empirical: None,
    })
}

// ---------------------------------------------------------------------------
// thm3 witness (|b| + 2|a| > 1)
// ---------------------------------------------------------------------------

fn thm3_report(
    a: f64,
    b: f64,
    case_tag: WitnessCase,
    theta: Option<f64>,
    z_star: Complex64,
    t0: Complex64,
    t1: Complex64,
    t2: Complex64,
) -> WitnessReport {
    let one = Complex64::new(1.0, 0.0);
    let azb = a * z_star + b;
    let t_zeros = sorted_tzeros(vec![
        TZero {
            value: t0,
            modulus: t0.norm(),
            residual: residual_linear(azb, one, t0),
        },
        TZero {
            value: t1,
            modulus: t1.norm(),
            residual: residual_quadratic(one, z_star, one, t1),
        },
        TZero {
            value: t2,
            modulus: t2.norm(),
            residual: residual_quadratic(one, z_star, one, t2),
        },
    ]);
    let checks = build_checks(z_star, &t_zeros);
    WitnessReport {
        family: FamilyParams::Thm3 { a, b },
        case_tag,
        theta_star: theta,
        z_star,
        t_zeros,
        infinite_zero: false,
        checks,
        empirical: None,
    }
}

/// Shared construction for Case 1 (|a| <= 1) and Case 3a (2 + |b| > 2|a|):
/// pick theta so e^{i theta} approaches sign(a), take the z making
/// t2 = -e^{-i theta}(az+b) a zero of 1 + zt + t^2, and certify |az+b| > 1.
fn thm3_case1_like(
    a: f64,
    b: f64,
    case_tag: WitnessCase,
    theta_start: Option<f64>,
    require_distinct: bool,
) -> Result<WitnessReport> {
    let pi = std::f64::consts::PI;
    let mut candidates: Vec<f64> = Vec::new();
    candidates.extend(theta_start);
    if a == 0.0 {
        candidates.push(pi / 2.0);
    }
    for k in 1..=SWEEP_DEPTH {
        let step = pi * 2f64.powi(-(k as i32));
        candidates.push(if a >= 0.0 { step } else { pi - step });
    }
    let mut last_reason = String::new();
    for theta in candidates {
        if !(0.0 < theta && theta < pi) {
            continue;
        }
        let e = Complex64::from_polar(1.0, theta);
        let z = if a == 0.0 {
            (b * b + e * e) / (b * e)
        } else if b == 0.0 {
            Complex64::i() * e / (a * a - a * e).sqrt()
        } else {
            let d = Complex64::new(b * b - 4.0 * a * a, 0.0) + 4.0 * a * e;
            let sq = d.sqrt();
            (-2.0 * a * b + b * e - b.signum() * e * sq) / (2.0 * a * a - 2.0 * a * e)
        };
        let azb = a * z + b;
        if azb.norm() <= 1.0 {
            last_reason = format!("|az+b| = {} <= 1 at theta = {theta}", azb.norm());
            continue;
        }
        let t0 = -1.0 / azb;
        let t1 = t0 * e;
        let t2 = -azb / e;
        let report = thm3_report(a, b, case_tag, Some(theta), z, t0, t1, t2);
        let quad_ok = report.t_zeros.iter().all(|t| t.residual <= 1e-10);
        let ok = report.checks.z_star_nonreal
            && report.checks.moduli_ordering_ok
            && quad_ok
            && (!require_distinct || report.checks.zeros_distinct);
        if ok {
            return Ok(report);
        }
        last_reason = format!("certificates failed at theta = {theta}");
    }
    Err(Error::SearchFailure(format!(
        "case-1 sweep exhausted for a = {a}, b = {b}: {last_reason}"
    )))
}

/// Case 2 (|a| > 1, |b| < 1): bisection for y with
/// 2 sqrt(a^2 y^2 + b^2) = sqrt(y^2 + 4) + y, then z = iy ties the linear
/// zero with the smaller zero of t^2 + iyt + 1. For b = 0 the tie is an
/// exact coincidence of the two zeros, which the report records via
/// zeros_distinct = false.
fn thm3_case2(a: f64, b: f64) -> Result<WitnessReport> {
    let g = |y: f64| 2.0 * (a * a * y * y + b * b).sqrt() - (y * y + 4.0).sqrt() - y;
    let mut hi = 1.0;
    let mut grow = 0;
    while g(hi) < 0.0 {
        hi *= 2.0;
        grow += 1;
        if grow > 60 {
            return Err(Error::SearchFailure(format!(
                "case-2 bisection found no sign change for a = {a}, b = {b}"
            )));
        }
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let y = 0.5 * (lo + hi);
    let z = Complex64::new(0.0, y);
    let azb = a * z + b;
    let t0 = -1.0 / azb;
    let disc = (y * y + 4.0).sqrt();
    let t_small = Complex64::new(0.0, (disc - y) / 2.0);
    let t_large = Complex64::new(0.0, -(disc + y) / 2.0);
    Ok(thm3_report(
        a,
        b,
        WitnessCase::Thm3Case2,
        None,
        z,
        t0,
        t_small,
        t_large,
    ))
}

/// Case 3b (|a| > 1, |b| >= 1, 2 + |b| <= 2|a|): maximize
/// |f(e^{i theta})| for f(z) = (-b + sqrt(b^2 - 4a^2 + 4az)) / (2a - 2z)
/// with the cut along [0, inf); |f| > 1 at theta* gives |az+b| > 1 directly.
fn thm3_case3b(a: f64, b: f64, theta_start: Option<f64>) -> Result<WitnessReport> {
    let pi = std::f64::consts::PI;
    let f_at = |theta: f64| -> (f64, Complex64, Complex64) {
        let e = Complex64::from_polar(1.0, theta);
        let d = Complex64::new(b * b - 4.0 * a * a, 0.0) + 4.0 * a * e;
        let sq = sqrt_cut_positive_axis(d);
        let f = (-b + sq) / (2.0 * a - 2.0 * e);
        (f.norm(), e, sq)
    };
    let mut best: Option<(f64, f64)> = None;
    let mut try_theta = |theta: f64| {
        let (fm, _, _) = f_at(theta);
        if best.map_or(true, |(bm, _)| fm > bm) {
            best = Some((fm, theta));
        }
    };
    if let Some(t0) = theta_start {
        try_theta(t0);
    }
    for j in 1..UNIFORM_SWEEP {
        try_theta(pi * j as f64 / UNIFORM_SWEEP as f64);
    }
    let (fmax, theta) = best.unwrap();
    if fmax <= 1.0 + 1e-12 {
        return Err(Error::SearchFailure(format!(
            "case-3b sweep: max |f| = {fmax} never exceeds 1 (branch-cut bug suspected)"
        )));
    }
    let (_, e, sq) = f_at(theta);
    let z = (-2.0 * a * b + b * e + e * sq) / (2.0 * a * a - 2.0 * a * e);
    let azb = a * z + b;
    let t0 = -1.0 / azb;
    let t1 = t0 * e;
    let t2 = -azb / e;
    Ok(thm3_report(
        a,
        b,
        WitnessCase::Thm3Case3b,
        Some(theta),
        z,
        t0,
        t1,
        t2,
    ))
}

/// Witness for the thm3 family with |b| + 2|a| > 1, dispatching on the
/// case analysis.
pub fn witness_thm3(a: f64, b: f64, theta_start: Option<f64>) -> Result<WitnessReport> {
    if b.abs() + 2.0 * a.abs() <= 1.0 {
        return Err(Error::InvalidParams(format!(
            "|b| + 2|a| = {} <= 1: inside the real-rooted region, no witness exists",
            b.abs() + 2.0 * a.abs()
        )));
    }
    if a.abs() <= 1.0 {
        thm3_case1_like(a, b, WitnessCase::Thm3Case1, theta_start, true)
    } else if b.abs() < 1.0 {
        thm3_case2(a, b)
    } else if 2.0 + b.abs() > 2.0 * a.abs() {
        thm3_case1_like(a, b, WitnessCase::Thm3Case3a, theta_start, true)
    } else {
        thm3_case3b(a, b, theta_start)
    }
}

/// Witness dispatcher over the families that have one.
pub fn witness_for(
    family: &FamilyParams<f64>,
    theta_start: Option<f64>,
) -> Result<WitnessReport> {
    match family {
        FamilyParams::Thm1 { a, b } => witness_thm1(*a, *b, theta_start),
        FamilyParams::Thm3 { a, b } => witness_thm3(*a, *b, theta_start),
        FamilyParams::Thm2 { a, b, c } => witness_thm2(*a, *b, *c, theta_start),
        other => Err(Error::InvalidParams(format!(
            "no witness construction for the {} family",
            other.tag()
        ))),
    }
}

// ---------------------------------------------------------------------------
// empirical verification
// ---------------------------------------------------------------------------

fn to_rational_family(
    family: &FamilyParams<f64>,
) -> Result<FamilyParams<num_rational::BigRational>> {
    let conv = |x: f64| {
        rational_from_f64(x)
            .ok_or_else(|| Error::InvalidParams(format!("non-finite parameter {x}")))
    };
    Ok(match family {
        FamilyParams::Thm1 { a, b } => FamilyParams::Thm1 {
            a: conv(*a)?,
            b: conv(*b)?,
        },
        FamilyParams::Thm3 { a, b } => FamilyParams::Thm3 {
            a: conv(*a)?,
            b: conv(*b)?,
        },
        FamilyParams::Thm2 { a, b, c } => FamilyParams::Thm2 {
            a: conv(*a)?,
            b: conv(*b)?,
            c: conv(*c)?,
        },
        FamilyParams::GeneralR { a1, b1, a2, b2 } => FamilyParams::GeneralR {
            a1: conv(*a1)?,
            b1: conv(*b1)?,
            a2: conv(*a2)?,
            b2: conv(*b2)?,
        },
        FamilyParams::ChebCombo { a, b } => FamilyParams::ChebCombo {
            a: conv(*a)?,
            b: conv(*b)?,
        },
    })
}

/// Scan P_1..P_{n_max} of a family for its first polynomial with a non-real
/// zero (|Im| > 1e-6) and the distance from z* to the zeros of P_{n_max}.
///
/// Generation and solving run through the exact-assisted pipeline: by
/// n around 40 the f64-rounded coefficients of these families acquire
/// spurious complex roots that would fake a detection.
pub fn empirical_scan(
    family: &FamilyParams<f64>,
    z_star: Complex64,
    n_max: usize,
) -> Result<Empirical> {
    let rational = to_rational_family(family)?;
    let seq = gen_family_sequence(&rational, n_max)?;
    let mut first_nonreal = None;
    let mut dist = f64::INFINITY;
    for (n, p) in seq.iter().enumerate().skip(1) {
        if p.degree().map_or(true, |d| d == 0) {
            continue;
        }
        let rs = all_roots_exact(p, DEFAULT_TOL)?;
        if first_nonreal.is_none() && rs.max_imag() > 1e-6 {
            first_nonreal = Some(n);
        }
        if n == n_max {
            for r in &rs.roots {
                dist = dist.min((r - z_star).norm());
            }
        }
    }
    Ok(Empirical {
        n_max,
        first_nonreal_n: first_nonreal,
        dist_to_zstar: dist,
    })
}

/// Fill the empirical fields of a witness report.
///
/// Errors with [`Error::VerificationFailure`] when no non-real zero shows up
/// by n_max, which flags either a construction bug or a too-small n_max
/// (and is the expected outcome for parameters inside the real-rooted
/// regions).
pub fn verify_witness(report: &WitnessReport, n_max: usize) -> Result<WitnessReport> {
    let empirical = empirical_scan(&report.family, report.z_star, n_max)?;
    if empirical.first_nonreal_n.is_none() {
        return Err(Error::VerificationFailure(format!(
            "no non-real zero up to n = {n_max} for {} witness at {:?}",
            report.case_tag.name(),
            report.family.tag()
        )));
    }
    let mut out = report.clone();
    out.empirical = Some(empirical);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI: f64 = std::f64::consts::PI;

    fn assert_close(x: Complex64, re: f64, im: f64, tol: f64) {
        assert!(
            (x.re - re).abs() < tol && (x.im - im).abs() < tol,
            "{x} != {re}+{im}i"
        );
    }

    #[test]
    fn thm1_low_spec_values() {
        // a=0, b=-4: theta* = pi/3, z* = 2i, moduli {1/2, 1/2, 1}
        let w = witness_thm1_low(0.0, -4.0).unwrap();
        assert!((w.theta_star.unwrap() - PI / 3.0).abs() < 1e-12);
        assert_close(w.z_star, 0.0, 2.0, 1e-12);
        let mods: Vec<f64> = w.t_zeros.iter().map(|t| t.modulus).collect();
        assert!((mods[0] - 0.5).abs() < 1e-12);
        assert!((mods[1] - 0.5).abs() < 1e-12);
        assert!((mods[2] - 1.0).abs() < 1e-12);
        assert!(w.checks.all_pass());
        assert!(w.t_zeros.iter().all(|t| t.residual <= 1e-10));
    }

    #[test]
    fn thm1_low_tau_modulus_identity() {
        // |tau*|^2 = -1/b: the tying moduli are 1/sqrt(-b)
        for (a, b) in [(0.0, -1.0), (1.0, -2.0), (-0.6, -3.5)] {
            let w = witness_thm1_low(a, b).unwrap();
            let tie = w.t_zeros[0].modulus;
            assert!((tie * tie - (-1.0 / b)).abs() < 1e-12, "({a},{b}): {tie}");
            assert!(w.checks.z_star_nonreal);
        }
    }

    #[test]
    fn thm1_low_avoids_degenerate_angles() {
        // a=1, b=-2: cos(theta*) must stay away from 0
        let w = witness_thm1_low(1.0, -2.0).unwrap();
        assert!(w.theta_star.unwrap().cos().abs() > 1e-3);
        assert!(w.checks.all_pass());
    }

    #[test]
    fn thm1_mid_spec_values() {
        // a=1, b=0 at theta=pi/3: z* = i/sqrt(3), moduli {1, 1, sqrt 3}
        let w = witness_thm1_mid(1.0, 0.0, Some(PI / 3.0)).unwrap();
        assert_close(w.z_star, 0.0, 1.0 / 3.0f64.sqrt(), 1e-12);
        let mods: Vec<f64> = w.t_zeros.iter().map(|t| t.modulus).collect();
        assert!((mods[0] - 1.0).abs() < 1e-12 && (mods[1] - 1.0).abs() < 1e-12);
        assert!((mods[2] - 3.0f64.sqrt()).abs() < 1e-12);
        assert!(w.checks.all_pass());
    }

    #[test]
    fn thm1_mid_degenerate_quadratic() {
        // a=b=0 at theta=pi/4: z* = -e^{-i pi/4}, two unit zeros, one at infinity
        let w = witness_thm1_mid(0.0, 0.0, Some(PI / 4.0)).unwrap();
        assert!(w.infinite_zero);
        assert_eq!(w.t_zeros.len(), 2);
        assert_close(w.z_star, -(PI / 4.0).cos(), (PI / 4.0).sin(), 1e-12);
        assert!(w.checks.all_pass());
    }

    #[test]
    fn thm1_dispatch_and_refusal() {
        assert_eq!(
            witness_thm1(0.0, -2.0, None).unwrap().case_tag,
            WitnessCase::Thm1LowB
        );
        assert_eq!(
            witness_thm1(0.0, 0.5, None).unwrap().case_tag,
            WitnessCase::Thm1Mid
        );
        assert!(witness_thm1(0.0, 4.0, None).is_err());
        assert!(witness_thm1(0.5, 2.5, None).is_err());
    }

    #[test]
    fn thm2_small_b_spec_values() {
        // a=0, b=0.5, c=-1: y* = 1, quadratic zeros on the unit circle,
        // linear zero modulus 1/|b| = 2
        let w = witness_thm2(0.0, 0.5, -1.0, None).unwrap();
        assert_eq!(w.case_tag, WitnessCase::Thm2SmallB);
        assert_close(w.z_star, 0.0, 1.0, 1e-12);
        let mods: Vec<f64> = w.t_zeros.iter().map(|t| t.modulus).collect();
        assert!((mods[0] - 1.0).abs() < 1e-12 && (mods[1] - 1.0).abs() < 1e-12);
        assert!((mods[2] - 2.0).abs() < 1e-12);
        assert!(w.checks.all_pass());
    }

    #[test]
    fn thm2_normalizes_c() {
        // a=1, b=0, c=-4 normalizes to (1, 0) with y* = 1/2, z* = 2 * iy = i
        let w = witness_thm2(1.0, 0.0, -4.0, None).unwrap();
        assert_eq!(w.case_tag, WitnessCase::Thm2SmallB);
        assert_close(w.z_star, 0.0, 1.0, 1e-12);
        assert!(w.checks.all_pass());
    }

    #[test]
    fn thm2_big_b_branch() {
        let w = witness_thm2(0.0, 2.0, -1.0, None).unwrap();
        assert_eq!(w.case_tag, WitnessCase::Thm2BigB);
        assert!(w.checks.all_pass());
        // the linear zero modulus equals the smaller quadratic zero modulus
        assert!((w.t_zeros[0].modulus - w.t_zeros[1].modulus).abs() < 1e-12);
        assert!(w.t_zeros.iter().all(|t| t.residual <= 1e-10));

        let w = witness_thm2(0.5, 2.0, -1.0, None).unwrap();
        assert!(w.checks.all_pass());
        assert!(w.t_zeros.iter().all(|t| t.residual <= 1e-10));
    }

    #[test]
    fn thm2_rejects_nonnegative_c() {
        assert!(witness_thm2(0.0, 0.5, 1.0, None).is_err());
        assert!(witness_thm2(0.0, 0.5, 0.0, None).is_err());
    }

    #[test]
    fn thm3_case1_a_zero_spec_values() {
        // a=0, b=2, theta=pi/2: z* = -1.5i, t = {-0.5, -0.5i, 2i}
        let w = witness_thm3(0.0, 2.0, None).unwrap();
        assert_eq!(w.case_tag, WitnessCase::Thm3Case1);
        assert_close(w.z_star, 0.0, -1.5, 1e-12);
        let mods: Vec<f64> = w.t_zeros.iter().map(|t| t.modulus).collect();
        assert!((mods[0] - 0.5).abs() < 1e-12 && (mods[1] - 0.5).abs() < 1e-12);
        assert!((mods[2] - 2.0).abs() < 1e-12);
        assert!(w.checks.all_pass());
    }

    #[test]
    fn thm3_case1_ab_nonzero_and_b_zero() {
        let w = witness_thm3(0.5, 0.8, None).unwrap();
        assert_eq!(w.case_tag, WitnessCase::Thm3Case1);
        assert!(w.checks.all_pass());
        assert!(w.t_zeros.iter().all(|t| t.residual <= 1e-10));

        let w = witness_thm3(1.0, 0.0, None).unwrap();
        assert_eq!(w.case_tag, WitnessCase::Thm3Case1);
        assert!(w.checks.all_pass());
    }

    #[test]
    fn thm3_case2_expected_y() {
        // (2, 0): 3y = sqrt(y^2+4) so y = 1/sqrt(2); the tie is an exact
        // coincidence of t0 with the smaller quadratic zero.
        let w = witness_thm3(2.0, 0.0, None).unwrap();
        assert_eq!(w.case_tag, WitnessCase::Thm3Case2);
        assert!((w.z_star.im - 1.0 / 2.0f64.sqrt()).abs() < 1e-9);
        assert!(w.checks.z_star_nonreal);
        assert!(w.checks.moduli_ordering_ok);
        assert!(!w.checks.zeros_distinct);
        // nonzero b makes the zeros distinct again
        let w = witness_thm3(2.0, 0.5, None).unwrap();
        assert_eq!(w.case_tag, WitnessCase::Thm3Case2);
        assert!(w.checks.all_pass());
    }

    #[test]
    fn thm3_case3_dispatch() {
        // (1.5, 1.5): 2 + 1.5 > 3 so the case-1 construction is reused
        let w = witness_thm3(1.5, 1.5, None).unwrap();
        assert_eq!(w.case_tag, WitnessCase::Thm3Case3a);
        assert!(w.checks.all_pass());
        // (2, 1.5): 2 + 1.5 = 3.5 <= 4 goes to the max-modulus branch
        let w = witness_thm3(2.0, 1.5, None).unwrap();
        assert_eq!(w.case_tag, WitnessCase::Thm3Case3b);
        assert!(w.checks.all_pass());
        let w = witness_thm3(3.0, 1.0, None).unwrap();
        assert_eq!(w.case_tag, WitnessCase::Thm3Case3b);
        assert!(w.checks.all_pass());
    }

    #[test]
    fn thm3_rejects_sufficient_region() {
        assert!(witness_thm3(0.0, 0.5, None).is_err());
        assert!(witness_thm3(0.25, 0.4, None).is_err());
    }

    #[test]
    fn verify_finds_first_nonreal() {
        // thm1 (0, 0.5): P_2 = z^2 + z + 1/2 is the first non-real member
        let w = witness_thm1(0.0, 0.5, None).unwrap();
        let v = verify_witness(&w, 20).unwrap();
        assert_eq!(v.empirical.unwrap().first_nonreal_n, Some(2));
    }

    #[test]
    fn verify_distance_shrinks() {
        let w = witness_thm1(0.0, 0.5, None).unwrap();
        let d20 = verify_witness(&w, 20)
            .unwrap()
            .empirical
            .unwrap()
            .dist_to_zstar;
        let d80 = verify_witness(&w, 80)
            .unwrap()
            .empirical
            .unwrap()
            .dist_to_zstar;
        assert!(d80 < d20, "{d80} !< {d20}");

        let w = witness_thm3(0.0, 2.0, None).unwrap();
        let d20 = verify_witness(&w, 20)
            .unwrap()
            .empirical
            .unwrap()
            .dist_to_zstar;
        let d80 = verify_witness(&w, 80)
            .unwrap()
            .empirical
            .unwrap()
            .dist_to_zstar;
        assert!(d80 < d20, "{d80} !< {d20}");
    }

    #[test]
    fn verify_negative_control() {
        // hyperbolic parameters: no witness exists and a forced scan fails
        let scan = empirical_scan(
            &FamilyParams::Thm1 { a: 0.0, b: 4.0 },
            Complex64::new(0.0, 1.0),
            40,
        )
        .unwrap();
        assert_eq!(scan.first_nonreal_n, None);
        let w = witness_thm1(0.0, 0.5, None).unwrap();
        let fake = WitnessReport {
            family: FamilyParams::Thm1 { a: 0.0, b: 4.0 },
            ..w
        };
        assert!(matches!(
            verify_witness(&fake, 40),
            Err(Error::VerificationFailure(_))
        ));
    }
}
