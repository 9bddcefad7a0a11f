//! Trigonometric root parameterizations.
//!
//! For the `thm1` family with b >= 1+2|a| the real zeros of P_n correspond
//! bijectively, through the increasing map z(theta), to zeros of a real
//! function F_n on (0, pi); for `thm3` with |b| <= 1-2|a| the map is
//! z = -2 cos(theta) and the root function is G_n, which picks up a vertical
//! asymptote at arccos(b/2a) when |b| < 2|a|. The solvers bracket those
//! functions on the grid subintervals k*pi/(n+1), refine by safeguarded
//! bisection/Newton, and map back to z.

use serde_json::json;

use crate::error::{Error, Result};
use crate::poly::FloatPoly;

/// Convergence goal for theta refinement.
const THETA_TOL: f64 = 1e-13;
/// Newton refinement cap per bracket.
const NEWTON_STEPS: usize = 50;
/// Sample points per grid subinterval before bisection.
const OVERSAMPLE: usize = 8;
/// One-sided offset when evaluating next to the asymptote.
const ASYMPTOTE_OFFSET: f64 = 1e-7;
/// Grid-collision threshold that triggers the parameter perturbation.
const GRID_COLLISION: f64 = 1e-9;

/// Which family a report describes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ThetaFamily {
    Thm1 { a: f64, b: f64 },
    Thm3 { a: f64, b: f64 },
}

/// Asymptote bookkeeping for the thm3 solver.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Asymptote {
    pub theta_a: f64,
    /// Grid subinterval (k0*pi/(n+1), (k0+1)*pi/(n+1)) containing theta_a.
    pub k0: usize,
}

/// Brackets, theta-roots, and mapped z-roots of one solve.
#[derive(Clone, Debug)]
pub struct ThetaRootReport {
    pub family: ThetaFamily,
    pub n: usize,
    pub brackets: Vec<(f64, f64)>,
    pub theta_roots: Vec<f64>,
    pub z_roots: Vec<f64>,
    pub asymptote: Option<Asymptote>,
    pub root_count: usize,
    /// Set when the parameters sit on a boundary where the strict-sign
    /// arguments degenerate.
    pub boundary_mode: bool,
    /// Actual a used after the grid-collision perturbation, if any.
    pub perturbed_a: Option<f64>,
}

impl ThetaRootReport {
    pub fn to_json(&self) -> serde_json::Value {
        let (family, a, b) = match self.family {
            ThetaFamily::Thm1 { a, b } => ("thm1", a, b),
            ThetaFamily::Thm3 { a, b } => ("thm3", a, b),
        };
        json!({
            "family": family,
            "a": a,
            "b": b,
            "n": self.n,
            "brackets": self.brackets,
            "theta_roots": self.theta_roots,
            "z_roots": self.z_roots,
            "asymptote": self.asymptote.map(|asy| json!({"theta_a": asy.theta_a, "k0": asy.k0})),
            "root_count": self.root_count,
            "boundary_mode": self.boundary_mode,
            "perturbed_a": self.perturbed_a,
        })
    }
}

/// z(theta) = 2a cos^2(theta) - 2 cos(theta) sqrt(a^2 cos^2(theta) + b),
/// increasing on (0, pi).
pub fn z_theta_thm1(a: f64, b: f64, theta: f64) -> Result<f64> {
    let c = theta.cos();
    let rad = a * a * c * c + b;
    if rad < 0.0 {
        return Err(Error::Domain(format!(
            "negative radicand a^2 cos^2 + b = {rad}"
        )));
    }
    Ok(2.0 * a * c * c - 2.0 * c * rad.sqrt())
}

/// tau(theta) = 1/sqrt(a z(theta) + b), defined where a z + b > 0.
pub fn tau_thm1(a: f64, b: f64, theta: f64) -> Result<f64> {
    let z = z_theta_thm1(a, b, theta)?;
    let azb = a * z + b;
    if azb <= 0.0 {
        return Err(Error::Domain(format!(
            "a z(theta) + b = {azb} <= 0: parameters outside the tau regime"
        )));
    }
    Ok(1.0 / azb.sqrt())
}

/// Root function for the thm1 family:
/// F_n = (-1)^(n+1) tau^(n+1) - cos((n+1)theta)
///       - sin((n+1)theta) (cos(theta) + 1/tau) / sin(theta).
/// F_n(theta) = 0 iff P_n(z(theta)) = 0.
pub fn f_n_thm1(a: f64, b: f64, n: usize, theta: f64) -> Result<f64> {
    let s = theta.sin();
    if s == 0.0 {
        return Err(Error::Domain("sin(theta) = 0".into()));
    }
    let tau = tau_thm1(a, b, theta)?;
    let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
    let m = (n + 1) as f64;
    Ok(sign * tau.powi(n as i32 + 1)
        - (m * theta).cos()
        - (m * theta).sin() * (theta.cos() + 1.0 / tau) / s)
}

/// z(theta) = -2 cos(theta) for the thm3 family.
pub fn z_theta_thm3(theta: f64) -> f64 {
    -2.0 * theta.cos()
}

/// t0(theta) = -1/(b - 2a cos(theta)), with a pole at arccos(b/2a).
pub fn t0_thm3(a: f64, b: f64, theta: f64) -> Result<f64> {
    let denom = b - 2.0 * a * theta.cos();
    // relative threshold: theta hitting the pole only up to f64 rounding
    // still counts as the pole
    let scale = b.abs() + (2.0 * a * theta.cos()).abs();
    if denom.abs() <= 1e-14 * scale {
        let theta_a = if a == 0.0 {
            theta
        } else {
            (b / (2.0 * a)).clamp(-1.0, 1.0).acos()
        };
        return Err(Error::Pole { theta_a });
    }
    Ok(-1.0 / denom)
}

/// Root function for the thm3 family:
/// G_n = -t0^-(n+1) + cos((n+1)theta) + (cos(theta) - t0) sin((n+1)theta)/sin(theta).
/// G_n(theta) = 0 iff P_n(-2 cos(theta)) = 0, away from the pole.
pub fn g_n_thm3(a: f64, b: f64, n: usize, theta: f64) -> Result<f64> {
    let s = theta.sin();
    if s == 0.0 {
        return Err(Error::Domain("sin(theta) = 0".into()));
    }
    let t0 = t0_thm3(a, b, theta)?;
    let m = (n + 1) as f64;
    Ok(-t0.powi(-(n as i32 + 1))
        + (m * theta).cos()
        + (theta.cos() - t0) * (m * theta).sin() / s)
}

/// Limits of G_n as theta -> 0+ and theta -> pi-.
pub fn limits_thm3(a: f64, b: f64, n: usize) -> Result<(f64, f64)> {
    if b == 2.0 * a || b == -2.0 * a {
        return Err(Error::Domain("limits undefined at b = +/-2a".into()));
    }
    let m = (n + 1) as f64;
    let sgn = if n % 2 == 0 { 1.0 } else { -1.0 };
    let left = m + 1.0 + m / (b - 2.0 * a) + sgn * (b - 2.0 * a).powi(n as i32 + 1);
    let right = -sgn * (m + 1.0) + sgn * (m / (b + 2.0 * a) + (b + 2.0 * a).powi(n as i32 + 1));
    Ok((left, right))
}

/// Sign-change brackets of f on (lo, hi), oversampled.
fn bracket_sign_changes<F>(f: &F, lo: f64, hi: f64) -> Vec<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let width = hi - lo;
    if width <= 0.0 {
        return Vec::new();
    }
    let mut xs = Vec::with_capacity(OVERSAMPLE + 2);
    xs.push(lo + width * 1e-4);
    for i in 0..OVERSAMPLE {
        xs.push(lo + width * (i as f64 + 0.5) / OVERSAMPLE as f64);
    }
    xs.push(hi - width * 1e-4);
    let vals: Vec<Option<f64>> = xs.iter().map(|&x| f(x).ok()).collect();
    let mut out = Vec::new();
    for i in 0..xs.len() - 1 {
        if let (Some(v0), Some(v1)) = (vals[i], vals[i + 1]) {
            if v0 == 0.0 {
                out.push((xs[i], xs[i]));
            } else if v0 * v1 < 0.0 {
                out.push((xs[i], xs[i + 1]));
            }
        }
    }
    if let Some(Some(last)) = vals.last() {
        if *last == 0.0 {
            out.push((*xs.last().unwrap(), *xs.last().unwrap()));
        }
    }
    out
}

/// Bisection with a safeguarded Newton step (numerical derivative); keeps
/// the bracket, converges to |dtheta| <= THETA_TOL.
fn refine_root<F>(f: &F, bracket: (f64, f64)) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let (mut lo, mut hi) = bracket;
    if lo == hi {
        return Ok(lo);
    }
    let mut flo = f(lo)?;
    let mut x = 0.5 * (lo + hi);
    for _ in 0..NEWTON_STEPS {
        if hi - lo <= THETA_TOL {
            return Ok(0.5 * (lo + hi));
        }
        let fx = f(x)?;
        if fx == 0.0 {
            return Ok(x);
        }
        if flo * fx < 0.0 {
            hi = x;
        } else {
            lo = x;
            flo = fx;
        }
        // Newton trial from the current iterate
        let h = (hi - lo).max(1e-9) * 1e-4;
        let d = (f(x + h)? - f(x - h)?) / (2.0 * h);
        let mut next = if d != 0.0 { x - fx / d } else { f64::NAN };
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= THETA_TOL {
            return Ok(next);
        }
        x = next;
    }
    Ok(0.5 * (lo + hi))
}

fn dedupe_sorted(mut roots: Vec<f64>) -> Vec<f64> {
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut out: Vec<f64> = Vec::with_capacity(roots.len());
    for r in roots {
        if out.last().map_or(true, |&l| (r - l).abs() > 1e-11) {
            out.push(r);
        }
    }
    out
}

/// Solve F_n on (0, pi): brackets the first n grid subintervals and returns
/// exactly n theta-roots in the strict interior of the sufficient region.
pub fn solve_theta_thm1(a: f64, b: f64, n: usize) -> Result<ThetaRootReport> {
    let boundary_dist = b - (1.0 + 2.0 * a.abs());
    if boundary_dist < -GRID_COLLISION {
        return Err(Error::InvalidParams(format!(
            "theta solve needs b >= 1 + 2|a| (dist {boundary_dist})"
        )));
    }
    let boundary_mode = boundary_dist.abs() <= GRID_COLLISION;
    let f = |theta: f64| f_n_thm1(a, b, n, theta);
    let grid: Vec<f64> = (0..=n + 1)
        .map(|k| k as f64 * std::f64::consts::PI / (n as f64 + 1.0))
        .collect();
    let mut brackets = Vec::new();
    let mut roots = Vec::new();
    for k in 0..n {
        let (lo, hi) = (grid[k], grid[k + 1]);
        for br in bracket_sign_changes(&f, lo, hi) {
            brackets.push(br);
            roots.push(refine_root(&f, br)?);
        }
    }
    let theta_roots = dedupe_sorted(roots);
    if theta_roots.len() < n && !boundary_mode {
        return Err(Error::BracketFailure {
            found: theta_roots.len(),
            expected: n,
            details: format!("thm1 a={a} b={b} n={n}"),
        });
    }
    let z_roots = theta_roots
        .iter()
        .map(|&t| z_theta_thm1(a, b, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(ThetaRootReport {
        family: ThetaFamily::Thm1 { a, b },
        n,
        brackets,
        root_count: theta_roots.len(),
        theta_roots,
        z_roots,
        asymptote: None,
        boundary_mode,
        perturbed_a: None,
    })
}

/// Solve G_n on (0, pi). When |b| < 2|a| the subinterval holding the
/// asymptote is split at theta_a and both sides are bracketed one-sidedly;
/// returns at least n theta-roots at interior parameters.
pub fn solve_theta_thm3(a: f64, b: f64, n: usize) -> Result<ThetaRootReport> {
    let pi = std::f64::consts::PI;
    let boundary_dist = (1.0 - 2.0 * a.abs()) - b.abs();
    if boundary_dist < -GRID_COLLISION {
        return Err(Error::InvalidParams(format!(
            "theta solve needs |b| <= 1 - 2|a| (dist {boundary_dist})"
        )));
    }
    let boundary_mode =
        boundary_dist.abs() <= GRID_COLLISION || (b.abs() - 2.0 * a.abs()).abs() <= GRID_COLLISION;

    // a = b = 0 degenerates the generating function to 1/(t^2 + zt + 1):
    // t0 is undefined but the zeros sit exactly on the grid angles.
    if a == 0.0 && b == 0.0 {
        let theta_roots: Vec<f64> = (1..=n).map(|k| k as f64 * pi / (n as f64 + 1.0)).collect();
        let z_roots = theta_roots.iter().map(|&t| z_theta_thm3(t)).collect();
        return Ok(ThetaRootReport {
            family: ThetaFamily::Thm3 { a, b },
            n,
            brackets: theta_roots.iter().map(|&t| (t, t)).collect(),
            root_count: theta_roots.len(),
            theta_roots,
            z_roots,
            asymptote: None,
            boundary_mode,
            perturbed_a: None,
        });
    }

    let gridpts: Vec<f64> = (0..=n + 1)
        .map(|k| k as f64 * pi / (n as f64 + 1.0))
        .collect();

    // Perturb a when the asymptote collides with a grid point.
    let mut a_used = a;
    let mut perturbed = None;
    if a != 0.0 && b.abs() < 2.0 * a.abs() {
        let theta_a = (b / (2.0 * a)).acos();
        if gridpts.iter().any(|&g| (g - theta_a).abs() < GRID_COLLISION) {
            a_used = a + 1e-9;
            perturbed = Some(a_used);
        }
    }

    let asymptote = if a_used != 0.0 && b.abs() < 2.0 * a_used.abs() {
        let theta_a = (b / (2.0 * a_used)).acos();
        let k0 = ((theta_a * (n as f64 + 1.0)) / pi).floor() as usize;
        Some(Asymptote { theta_a, k0 })
    } else {
        None
    };

    let f = |theta: f64| g_n_thm3(a_used, b, n, theta);
    let mut pieces: Vec<(f64, f64)> = Vec::new();
    for k in 0..=n {
        let lo = gridpts[k].max(1e-9);
        let hi = gridpts[k + 1].min(pi - 1e-9);
        match asymptote {
            Some(asy) if lo < asy.theta_a && asy.theta_a < hi => {
                pieces.push((lo, asy.theta_a - ASYMPTOTE_OFFSET));
                pieces.push((asy.theta_a + ASYMPTOTE_OFFSET, hi));
            }
            _ => pieces.push((lo, hi)),
        }
    }

    let mut brackets = Vec::new();
    let mut roots = Vec::new();
    for &(lo, hi) in &pieces {
        for br in bracket_sign_changes(&f, lo, hi) {
            brackets.push(br);
            roots.push(refine_root(&f, br)?);
        }
    }
    let theta_roots = dedupe_sorted(roots);
    if theta_roots.len() < n && !boundary_mode {
        return Err(Error::BracketFailure {
            found: theta_roots.len(),
            expected: n,
            details: format!("thm3 a={a} b={b} n={n}"),
        });
    }
    let z_roots = theta_roots.iter().map(|&t| z_theta_thm3(t)).collect();
    Ok(ThetaRootReport {
        family: ThetaFamily::Thm3 { a: a_used, b },
        n,
        brackets,
        root_count: theta_roots.len(),
        theta_roots,
        z_roots,
        asymptote,
        boundary_mode,
        perturbed_a: perturbed,
    })
}

/// Covering radius of the z-roots in the family's theoretical interval:
/// the farthest any point of the interval sits from a root (endpoint gaps
/// plus half of each interior gap).
pub fn density_stats(report: &ThetaRootReport) -> Result<f64> {
    if report.z_roots.len() < 2 {
        return Err(Error::UndefinedStatistic(format!(
            "need at least 2 roots, have {}",
            report.z_roots.len()
        )));
    }
    let (lo, hi) = match report.family {
        ThetaFamily::Thm1 { a, b } => {
            let w = 2.0 * (a * a + b).sqrt();
            (2.0 * a - w, 2.0 * a + w)
        }
        ThetaFamily::Thm3 { .. } => (-2.0, 2.0),
    };
    let zs = &report.z_roots;
    let mut gap = (zs[0] - lo).max(hi - zs[zs.len() - 1]);
    for w in zs.windows(2) {
        gap = gap.max((w[1] - w[0]) / 2.0);
    }
    Ok(gap)
}

/// |P_n(z)| scale-normalized, for report tables and zero-equivalence checks.
pub fn poly_residual_at(p: &FloatPoly, z: f64) -> f64 {
    let mut v = 0.0f64;
    let mut scale = 0.0f64;
    let az = z.abs();
    for &c in p.coeffs().iter().rev() {
        v = v * z + c;
        scale = scale * az + c.abs();
    }
    v.abs() / scale.max(f64::MIN_POSITIVE)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyseq::{gen_family_sequence, FamilyParams};
    use crate::rootfinder::{all_roots_exact, DEFAULT_TOL};
    use crate::scalar::Coeff;
    use num_rational::BigRational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn z_theta_thm1_values() {
        // a=0, b=1, theta=pi/2: cos = 0 so z = 0
        assert!(z_theta_thm1(0.0, 1.0, PI / 2.0).unwrap().abs() < 1e-15);
        // a=0, b=2, theta->0: z -> -2 sqrt(2)
        let z = z_theta_thm1(0.0, 2.0, 1e-9).unwrap();
        assert!((z + 2.0 * 2.0f64.sqrt()).abs() < 1e-8);
        // a=0, b=2, cos(theta) = 1/(2 sqrt 2): z = -1
        let theta = (1.0 / (2.0 * 2.0f64.sqrt())).acos();
        assert!((z_theta_thm1(0.0, 2.0, theta).unwrap() + 1.0).abs() < 1e-12);
        // negative radicand
        assert!(z_theta_thm1(0.1, -1.0, PI / 2.0).is_err());
    }

    #[test]
    fn z_theta_thm1_quadratic_identity_and_monotone() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let a: f64 = rng.gen_range(-1.0..1.0);
            let b = 1.0 + 2.0 * a.abs() + rng.gen_range(0.1..3.0);
            let theta = rng.gen_range(0.01..PI - 0.01);
            let z = z_theta_thm1(a, b, theta).unwrap();
            let c2 = theta.cos() * theta.cos();
            let resid = z * z - 4.0 * a * z * c2 - 4.0 * b * c2;
            assert!(resid.abs() <= 1e-12 * (z * z).max(1.0), "resid {resid}");
        }
        // monotone on a fine grid
        for (a, b) in [(0.5, 2.5), (-0.7, 3.0), (0.0, 4.0)] {
            let mut last = f64::NEG_INFINITY;
            for i in 1..10_000 {
                let theta = PI * i as f64 / 10_000.0;
                let z = z_theta_thm1(a, b, theta).unwrap();
                assert!(z > last);
                last = z;
            }
        }
    }

    #[test]
    fn sign_relation_z_cos_negative() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let a: f64 = rng.gen_range(-1.0..1.0);
            let b = 1.0 + 2.0 * a.abs() + rng.gen_range(0.1..2.0);
            let theta = rng.gen_range(0.01..PI - 0.01);
            if (theta - PI / 2.0).abs() < 1e-3 {
                continue;
            }
            let z = z_theta_thm1(a, b, theta).unwrap();
            assert!(z * theta.cos() < 0.0);
        }
    }

    #[test]
    fn tau_values() {
        // a=0: tau = 1/sqrt(b) regardless of theta
        assert!((tau_thm1(0.0, 4.0, 1.234).unwrap() - 0.5).abs() < 1e-15);
        // boundary b = 1 + 2|a| with a = 0: tau = 1
        assert!((tau_thm1(0.0, 1.0, PI / 3.0).unwrap() - 1.0).abs() < 1e-12);
        // a=1, b=3, theta=pi/2: z=0, tau=1/sqrt(3)
        assert!((tau_thm1(1.0, 3.0, PI / 2.0).unwrap() - 1.0 / 3.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn tau_strictly_below_one_interior() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..100 {
            let a: f64 = rng.gen_range(-1.0..1.0);
            let b = 1.0 + 2.0 * a.abs() + rng.gen_range(0.1..2.0);
            let theta = rng.gen_range(0.01..PI - 0.01);
            let tau = tau_thm1(a, b, theta).unwrap();
            assert!(tau > 0.0 && tau < 1.0);
        }
    }

    #[test]
    fn vieta_for_quadratic_factor() {
        // tau e^{+-i theta} must solve (az+b)t^2 + zt + 1 = 0
        use num_complex::Complex64;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let a: f64 = rng.gen_range(-1.0..1.0);
            let b = 1.0 + 2.0 * a.abs() + 0.1 + rng.gen_range(0.0..2.0);
            let theta = rng.gen_range(0.01..PI - 0.01);
            let z = z_theta_thm1(a, b, theta).unwrap();
            let tau = tau_thm1(a, b, theta).unwrap();
            for sign in [1.0, -1.0] {
                let t = Complex64::from_polar(tau, sign * theta);
                let v = (a * z + b) * t * t + z * t + 1.0;
                assert!(v.norm() <= 1e-10, "residual {}", v.norm());
            }
        }
    }

    #[test]
    fn f_n_signs_at_grid_and_origin() {
        // a=0, b=4, n=3: sign at k pi/4 is (-1)^(k+1)
        for k in 1..=3usize {
            let v = f_n_thm1(0.0, 4.0, 3, k as f64 * PI / 4.0).unwrap();
            let expect = if k % 2 == 1 { 1.0 } else { -1.0 };
            assert!(v * expect > 0.0, "k={k} v={v}");
        }
        // near 0 the sign is negative for any n
        for n in [1, 2, 5, 9] {
            assert!(f_n_thm1(0.0, 4.0, n, 1e-6).unwrap() < 0.0);
        }
        // a=0, b=2, n=1: root of P_1 = -(z+1) maps back to theta
        let theta = (1.0 / (2.0 * 2.0f64.sqrt())).acos();
        assert!(f_n_thm1(0.0, 2.0, 1, theta).unwrap().abs() < 1e-12);
    }

    #[test]
    fn solve_thm1_small_cases() {
        let r = solve_theta_thm1(0.0, 2.0, 1).unwrap();
        assert_eq!(r.root_count, 1);
        assert!((r.z_roots[0] + 1.0).abs() < 1e-10);

        let r = solve_theta_thm1(0.0, 2.0, 2).unwrap();
        assert_eq!(r.root_count, 2);
        assert!((r.z_roots[0] + 1.618033988749895).abs() < 1e-9);
        assert!((r.z_roots[1] - 0.618033988749895).abs() < 1e-9);

        let r = solve_theta_thm1(0.3, 1.7, 0).unwrap();
        assert_eq!(r.root_count, 0);
    }

    #[test]
    fn solve_thm1_rejects_outside_region() {
        assert!(solve_theta_thm1(0.0, 0.5, 4).is_err());
    }

    #[test]
    fn thm3_evaluators() {
        assert!((z_theta_thm3(PI / 2.0)).abs() < 1e-15);
        assert!((z_theta_thm3(1e-9) + 2.0).abs() < 1e-12);
        assert!((z_theta_thm3(2.0 * PI / 3.0) - 1.0).abs() < 1e-12);

        assert!((t0_thm3(0.0, 1.0, 0.77).unwrap() + 1.0).abs() < 1e-15);
        assert!((t0_thm3(0.0, 0.5, 0.3).unwrap() + 2.0).abs() < 1e-15);
        let err = t0_thm3(0.3, 0.2, (1.0f64 / 3.0).acos()).unwrap_err();
        match err {
            Error::Pole { theta_a } => assert!((theta_a - (1.0f64 / 3.0).acos()).abs() < 1e-12),
            other => panic!("expected pole, got {other:?}"),
        }
        // a = b = 0: pole everywhere
        assert!(g_n_thm3(0.0, 0.0, 2, 0.5).is_err());
    }

    #[test]
    fn g_n_signs_at_grid_interior_params() {
        // interior parameters (b = 0.9): |t0| > 1 so the grid sign is (-1)^k
        for k in 1..=2usize {
            let v = g_n_thm3(0.0, 0.9, 2, k as f64 * PI / 3.0).unwrap();
            let expect = if k % 2 == 0 { 1.0 } else { -1.0 };
            assert!(v * expect > 0.0, "k={k} v={v}");
        }
    }

    #[test]
    fn limits_examples() {
        let (l, r) = limits_thm3(0.0, 1.0, 2).unwrap();
        assert!((l - 8.0).abs() < 1e-12);
        assert!(r.abs() < 1e-12);
        let (l, _r) = limits_thm3(0.0, 2.0, 1).unwrap();
        assert!(l.abs() < 1e-12, "exact cancellation expected, got {l}");
        assert!(limits_thm3(0.5, 1.0, 3).is_err());
    }

    #[test]
    fn limits_match_numeric() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..10 {
            let (a, b) = loop {
                let a: f64 = rng.gen_range(-0.45..0.45);
                let b: f64 = rng.gen_range(-1.0..1.0);
                if b.abs() <= 1.0 - 2.0 * a.abs() - 0.02
                    && (b - 2.0 * a).abs() > 0.05
                    && (b + 2.0 * a).abs() > 0.05
                    && (a != 0.0 || b != 0.0)
                {
                    break (a, b);
                }
            };
            let n = rng.gen_range(1..=8usize);
            let (l, r) = limits_thm3(a, b, n).unwrap();
            let gl = g_n_thm3(a, b, n, 1e-6).unwrap();
            let gr = g_n_thm3(a, b, n, PI - 1e-6).unwrap();
            assert!((gl - l).abs() < 1e-4, "left {gl} vs {l}");
            assert!((gr - r).abs() < 1e-4, "right {gr} vs {r}");
        }
    }

    fn rational_roots_of(params: &FamilyParams<BigRational>, n: usize) -> Vec<f64> {
        let seq = gen_family_sequence(params, n).unwrap();
        let rs = all_roots_exact(&seq[n], DEFAULT_TOL).unwrap();
        rs.roots.iter().map(|r| r.re).collect()
    }

    #[test]
    fn thm1_theta_roots_match_all_roots() {
        for n in [5usize, 12] {
            let report = solve_theta_thm1(0.5, 2.5, n).unwrap();
            assert_eq!(report.root_count, n);
            let roots = rational_roots_of(
                &FamilyParams::Thm1 {
                    a: BigRational::from_ratio(1, 2),
                    b: BigRational::from_ratio(5, 2),
                },
                n,
            );
            assert_eq!(roots.len(), n);
            for (z, r) in report.z_roots.iter().zip(roots.iter()) {
                assert!((z - r).abs() < 1e-7, "n={n}: {z} vs {r}");
            }
        }
    }

    #[test]
    fn thm3_theta_roots_match_all_roots_asymptote_both_signs() {
        for (a, b, an, ad, bn, bd) in [
            (0.25, 0.1, 1i64, 4i64, 1i64, 10i64),
            (-0.25, 0.1, -1, 4, 1, 10),
        ] {
            let n = 7;
            let report = solve_theta_thm3(a, b, n).unwrap();
            assert!(report.root_count >= n, "found {}", report.root_count);
            assert!(report.asymptote.is_some());
            let roots = rational_roots_of(
                &FamilyParams::Thm3 {
                    a: BigRational::from_ratio(an, ad),
                    b: BigRational::from_ratio(bn, bd),
                },
                n,
            );
            assert_eq!(report.root_count, roots.len());
            for (z, r) in report.z_roots.iter().zip(roots.iter()) {
                assert!((z - r).abs() < 1e-7, "({a},{b}): {z} vs {r}");
            }
        }
    }

    #[test]
    fn thm3_degenerate_origin_returns_grid_roots() {
        let r = solve_theta_thm3(0.0, 0.0, 5).unwrap();
        assert_eq!(r.root_count, 5);
        for (k, t) in r.theta_roots.iter().enumerate() {
            assert!((t - (k as f64 + 1.0) * PI / 6.0).abs() < 1e-15);
        }
    }

    #[test]
    fn asymptote_bookkeeping() {
        // a=0.25, b=0.1, n=3: theta_a = arccos(0.2) in (pi/4, pi/2) so k0 = 1
        let r = solve_theta_thm3(0.25, 0.1, 3).unwrap();
        let asy = r.asymptote.unwrap();
        assert!((asy.theta_a - 0.2f64.acos()).abs() < 1e-12);
        assert_eq!(asy.k0, 1);
    }

    #[test]
    fn zero_equivalence_theta_roots_kill_polynomial() {
        let n = 9;
        let report = solve_theta_thm1(0.0, 4.0, n).unwrap();
        let p =
            gen_family_sequence(&FamilyParams::Thm1 { a: 0.0, b: 4.0 }, n).unwrap()[n].clone();
        for &z in &report.z_roots {
            assert!(poly_residual_at(&p, z) <= 1e-8);
        }
    }

    #[test]
    fn density_covering_radius() {
        let report = ThetaRootReport {
            family: ThetaFamily::Thm3 { a: 0.0, b: 0.5 },
            n: 2,
            brackets: vec![],
            theta_roots: vec![],
            z_roots: vec![-1.0, 1.0],
            asymptote: None,
            root_count: 2,
            boundary_mode: false,
            perturbed_a: None,
        };
        assert!((density_stats(&report).unwrap() - 1.0).abs() < 1e-15);
        let single = ThetaRootReport {
            z_roots: vec![0.0],
            root_count: 1,
            ..report
        };
        assert!(density_stats(&single).is_err());
    }

    #[test]
    fn density_decreases_with_n() {
        let g10 = density_stats(&solve_theta_thm1(0.0, 4.0, 10).unwrap()).unwrap();
        let g40 = density_stats(&solve_theta_thm1(0.0, 4.0, 40).unwrap()).unwrap();
        assert!(g40 < g10);
        let h10 = density_stats(&solve_theta_thm3(0.0, 0.5, 10).unwrap()).unwrap();
        let h50 = density_stats(&solve_theta_thm3(0.0, 0.5, 50).unwrap()).unwrap();
        assert!(h50 < h10);
    }
}
