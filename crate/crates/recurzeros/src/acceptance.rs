//! The acceptance suite: one callable check per criterion, shared by the
//! `check` CLI subcommand and the integration test target.

use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::polyseq::{
    self, gen_family_sequence, normalize_c, FamilyParams,
};
use crate::rootfinder::{all_roots_exact, roots_in_interval, DEFAULT_TOL};
use crate::scalar::{rational_from_f64, Coeff};
use crate::scan::{self, ScanFamily, TheoryLabel, Verdict};
use crate::thetasolver::{self, g_n_thm3, limits_thm3};
use crate::witness::{self, WitnessCase};

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} [{}] {} - {}",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.detail
        )
    }
}

fn result(id: usize, name: &'static str, outcome: Result<String>) -> CriterionResult {
    match outcome {
        Ok(detail) => CriterionResult {
            id,
            name,
            passed: true,
            detail,
        },
        Err(e) => CriterionResult {
            id,
            name,
            passed: false,
            detail: e.to_string(),
        },
    }
}

fn fail(msg: String) -> crate::Error {
    crate::Error::VerificationFailure(msg)
}

fn rat(x: f64) -> BigRational {
    rational_from_f64(x).expect("finite parameter")
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let num = rng.gen_range(-9i64..=9);
    let den = rng.gen_range(1i64..=9);
    BigRational::from_ratio(num, den)
}

/// Criterion 1: recurrence generation equals series inversion exactly in
/// rational mode, for each family and 10 random rational tuples, n <= 12.
pub fn criterion_1() -> CriterionResult {
    result(1, "oracle-equivalence", (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        let mut checked = 0usize;
        for family_idx in 0..5 {
            for _ in 0..10 {
                let params: FamilyParams<BigRational> = match family_idx {
                    0 => FamilyParams::Thm1 {
                        a: random_rational(&mut rng),
                        b: random_rational(&mut rng),
                    },
                    1 => FamilyParams::Thm3 {
                        a: random_rational(&mut rng),
                        b: random_rational(&mut rng),
                    },
                    2 => loop {
                        let p = FamilyParams::GeneralR {
                            a1: random_rational(&mut rng),
                            b1: random_rational(&mut rng),
                            a2: random_rational(&mut rng),
                            b2: random_rational(&mut rng),
                        };
                        if p.validate().is_ok() {
                            break p;
                        }
                    },
                    3 => FamilyParams::ChebCombo {
                        a: random_rational(&mut rng),
                        b: random_rational(&mut rng),
                    },
                    _ => loop {
                        let p = FamilyParams::Thm2 {
                            a: random_rational(&mut rng),
                            b: random_rational(&mut rng),
                            c: random_rational(&mut rng),
                        };
                        if p.validate().is_ok() {
                            break p;
                        }
                    },
                };
                let seq = gen_family_sequence(&params, 12)?;
                let den = polyseq::series::family_denominator(&params)?;
                let inv = polyseq::series::series_inversion_oracle(&den, 12)?;
                if seq != inv {
                    return Err(fail(format!(
                        "recurrence and series inversion disagree for {:?}",
                        params.tag()
                    )));
                }
                checked += 1;
            }
        }
        Ok(format!("{checked} random tuples, all exact matches to n = 12"))
    })())
}

const THM1_SUFFICIENT: [(f64, f64); 5] =
    [(0.0, 1.2), (0.0, 4.0), (0.5, 2.5), (-0.7, 3.0), (1.0, 3.5)];

/// Criterion 2: thm1 sufficiency at five parameter pairs, n <= 60:
/// every member all-real (max |Im| <= 1e-8) with zeros inside
/// [2a - 2 sqrt(a^2+b) - 1e-6, 2a + 2 sqrt(a^2+b) + 1e-6].
pub fn criterion_2() -> CriterionResult {
    result(2, "thm1-sufficiency", (|| {
        let mut worst_imag = 0.0f64;
        for &(a, b) in &THM1_SUFFICIENT {
            let params = FamilyParams::Thm1 { a: rat(a), b: rat(b) };
            let seq = gen_family_sequence(&params, 60)?;
            let half = 2.0 * (a * a + b).sqrt();
            let (lo, hi) = (2.0 * a - half, 2.0 * a + half);
            for (n, p) in seq.iter().enumerate().skip(1) {
                let rs = all_roots_exact(p, DEFAULT_TOL)?;
                let mi = rs.max_imag();
                worst_imag = worst_imag.max(mi);
                if mi > 1e-8 {
                    return Err(fail(format!(
                        "({a},{b}) n={n}: max imag {mi:.2e} > 1e-8"
                    )));
                }
                if !roots_in_interval(&rs, lo, hi, 1e-6) {
                    return Err(fail(format!(
                        "({a},{b}) n={n}: zeros escape [{lo},{hi}] + 1e-6"
                    )));
                }
            }
        }
        Ok(format!(
            "5 parameter pairs, n <= 60 all real in the confinement interval (worst |Im| = {worst_imag:.1e})"
        ))
    })())
}

fn witness_certificates_ok(w: &witness::WitnessReport, require_distinct: bool) -> Result<()> {
    if !w.checks.z_star_nonreal {
        return Err(fail(format!("{}: z* is real", w.case_tag.name())));
    }
    if !w.checks.moduli_ordering_ok {
        return Err(fail(format!("{}: moduli tie fails", w.case_tag.name())));
    }
    if require_distinct && !w.checks.zeros_distinct {
        return Err(fail(format!("{}: zeros not distinct", w.case_tag.name())));
    }
    for t in &w.t_zeros {
        if t.residual > 1e-10 {
            return Err(fail(format!(
                "{}: t-zero residual {:.2e} > 1e-10",
                w.case_tag.name(),
                t.residual
            )));
        }
    }
    Ok(())
}

/// Criterion 3: thm1 necessity witnesses at four parameter pairs, with
/// certificates to 1e-10 and a non-real zero found by n = 80; (0, 0.5)
/// first fails at exactly n = 2.
pub fn criterion_3() -> CriterionResult {
    result(3, "thm1-necessity", (|| {
        for (a, b) in [(0.0, 0.5), (0.0, -2.0), (1.0, 2.5), (-0.5, 0.0)] {
            let w = witness::witness_thm1(a, b, None)?;
            witness_certificates_ok(&w, true)?;
            let v = witness::verify_witness(&w, 80)?;
            let first = v.empirical.unwrap().first_nonreal_n.unwrap();
            if (a, b) == (0.0, 0.5) && first != 2 {
                return Err(fail(format!(
                    "(0,0.5): first non-real at n = {first}, expected 2"
                )));
            }
        }
        Ok("4 witnesses certified to 1e-10, non-real zeros found by n = 80".into())
    })())
}

fn match_multisets(theta_zs: &[f64], roots: &[Complex64], tol: f64) -> Result<f64> {
    if theta_zs.len() != roots.len() {
        return Err(fail(format!(
            "count mismatch: {} theta-roots vs {} polynomial zeros",
            theta_zs.len(),
            roots.len()
        )));
    }
    let mut rs: Vec<f64> = roots.iter().map(|r| r.re).collect();
    rs.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let mut worst = 0.0f64;
    for (z, r) in theta_zs.iter().zip(rs.iter()) {
        let d = (z - r).abs();
        worst = worst.max(d);
        if d > tol {
            return Err(fail(format!("multiset mismatch: |{z} - {r}| = {d:.2e}")));
        }
    }
    Ok(worst)
}

/// Criterion 4: the thm1 theta-solver returns exactly n roots whose
/// z-images match the polynomial zeros to 1e-7 at n in {5, 20, 50}.
pub fn criterion_4() -> CriterionResult {
    result(4, "thm1-theta-consistency", (|| {
        let mut worst = 0.0f64;
        for &(a, b) in &THM1_SUFFICIENT {
            let params = FamilyParams::Thm1 { a: rat(a), b: rat(b) };
            let seq = gen_family_sequence(&params, 50)?;
            for n in [5usize, 20, 50] {
                let report = thetasolver::solve_theta_thm1(a, b, n)?;
                if report.root_count != n {
                    return Err(fail(format!(
                        "({a},{b}) n={n}: {} theta-roots",
                        report.root_count
                    )));
                }
                let rs = all_roots_exact(&seq[n], DEFAULT_TOL)?;
                worst = worst.max(match_multisets(&report.z_roots, &rs.roots, 1e-7)?);
            }
        }
        Ok(format!(
            "exact root counts at n = 5, 20, 50; worst multiset deviation {worst:.1e}"
        ))
    })())
}

const THM3_SUFFICIENT: [(f64, f64); 5] = [
    (0.0, 0.0),
    (0.0, 0.9),
    (0.25, 0.4),
    (-0.25, -0.4),
    (0.45, 0.05),
];

/// Criterion 5: thm3 sufficiency at five pairs (asymptote cases with both
/// signs of a included): all-real zeros inside (-2, 2) for n <= 60, and the
/// theta-solver matches the polynomial zeros to 1e-7 at n in {5, 20, 50}.
pub fn criterion_5() -> CriterionResult {
    result(5, "thm3-sufficiency", (|| {
        let mut worst = 0.0f64;
        for &(a, b) in &THM3_SUFFICIENT {
            let params = FamilyParams::Thm3 { a: rat(a), b: rat(b) };
            let seq = gen_family_sequence(&params, 60)?;
            for (n, p) in seq.iter().enumerate().skip(1) {
                let rs = all_roots_exact(p, DEFAULT_TOL)?;
                if rs.max_imag() > 1e-8 {
                    return Err(fail(format!(
                        "({a},{b}) n={n}: max imag {:.2e}",
                        rs.max_imag()
                    )));
                }
                if !roots_in_interval(&rs, -2.0, 2.0, 1e-6) {
                    return Err(fail(format!("({a},{b}) n={n}: zeros escape (-2,2)")));
                }
            }
            for n in [5usize, 20, 50] {
                let report = thetasolver::solve_theta_thm3(a, b, n)?;
                if report.root_count < n {
                    return Err(fail(format!(
                        "({a},{b}) n={n}: only {} theta-roots",
                        report.root_count
                    )));
                }
                let rs = all_roots_exact(&seq[n], DEFAULT_TOL)?;
                worst = worst.max(match_multisets(&report.z_roots, &rs.roots, 1e-7)?);
            }
        }
        Ok(format!(
            "5 parameter pairs real in (-2,2) to n = 60; theta match within {worst:.1e}"
        ))
    })())
}

/// Criterion 6: thm3 necessity witnesses across every case, certificates to
/// 1e-10 and non-real zeros by n = 80; (2,0) must solve y = 1/sqrt(2).
///
/// At (2,0) the construction ties the two smallest zeros by an exact
/// coincidence (t0 equals the smaller quadratic zero), so pairwise
/// distinctness is asserted for every tuple except that one.
pub fn criterion_6() -> CriterionResult {
    result(6, "thm3-necessity", (|| {
        let cases = [
            (0.0, 2.0, WitnessCase::Thm3Case1),
            (0.5, 0.8, WitnessCase::Thm3Case1),
            (1.0, 0.0, WitnessCase::Thm3Case1),
            (2.0, 0.0, WitnessCase::Thm3Case2),
            (2.0, 1.5, WitnessCase::Thm3Case3b),
            (3.0, 1.0, WitnessCase::Thm3Case3b),
        ];
        for (a, b, expected_case) in cases {
            let w = witness::witness_thm3(a, b, None)?;
            if w.case_tag != expected_case {
                return Err(fail(format!(
                    "({a},{b}): dispatched to {}, expected {}",
                    w.case_tag.name(),
                    expected_case.name()
                )));
            }
            let coincident_tie = (a, b) == (2.0, 0.0);
            witness_certificates_ok(&w, !coincident_tie)?;
            if coincident_tie {
                let y = w.z_star.im;
                if (y - 1.0 / 2.0f64.sqrt()).abs() > 1e-9 {
                    return Err(fail(format!("(2,0): y = {y}, expected 1/sqrt(2)")));
                }
            }
            witness::verify_witness(&w, 80)?;
        }
        Ok("6 witnesses across all cases certified, non-real zeros by n = 80".into())
    })())
}

/// Criterion 7: thm2 witnesses for c < 0 plus the c > 0 normalization:
/// rescaled families keep their zero sets (to 1e-8 at n = 6) under
/// z -> z/sqrt(c).
pub fn criterion_7() -> CriterionResult {
    result(7, "thm2-witness-and-normalization", (|| {
        for (a, b, c) in [(0.0, 0.5, -1.0), (1.0, 0.0, -4.0), (0.5, 2.0, -1.0)] {
            let w = witness::witness_thm2(a, b, c, None)?;
            witness_certificates_ok(&w, true)?;
            witness::verify_witness(&w, 80)?;
        }
        let mut worst = 0.0f64;
        for (a, b) in [(0.0, 0.5), (1.0, 0.0), (0.5, 2.0)] {
            for c in [1.0, 4.0, 9.0] {
                let (thm3, scale) = normalize_c(a, b, c)?;
                let thm2 = FamilyParams::Thm2 { a: rat(a), b: rat(b), c: rat(c) };
                let p2 = &gen_family_sequence(&thm2, 6)?[6];
                let FamilyParams::Thm3 { a: na, b: nb } = thm3 else {
                    unreachable!()
                };
                let thm3r = FamilyParams::Thm3 { a: rat(na), b: rat(nb) };
                let p3 = &gen_family_sequence(&thm3r, 6)?[6];
                let r2 = all_roots_exact(p2, DEFAULT_TOL)?;
                let r3 = all_roots_exact(p3, DEFAULT_TOL)?;
                if r2.roots.len() != r3.roots.len() {
                    return Err(fail(format!(
                        "({a},{b},{c}): degree changed under normalization"
                    )));
                }
                let mut mapped: Vec<Complex64> =
                    r3.roots.iter().map(|r| r * scale).collect();
                mapped.sort_by(|x, y| {
                    (x.re, x.im).partial_cmp(&(y.re, y.im)).unwrap()
                });
                for (u, v) in r2.roots.iter().zip(mapped.iter()) {
                    let d = (u - v).norm();
                    worst = worst.max(d);
                    if d > 1e-8 {
                        return Err(fail(format!(
                            "({a},{b},{c}): root set moved by {d:.2e} under normalization"
                        )));
                    }
                }
            }
        }
        Ok(format!(
            "3 witnesses certified; 9 normalizations preserve zero sets (worst {worst:.1e})"
        ))
    })())
}

/// Criterion 8: the closed-form limits of G_n match its numerical values at
/// theta = 1e-6 and pi - 1e-6 to 1e-4, for 10 random valid parameters.
pub fn criterion_8() -> CriterionResult {
    result(8, "thm3-limits", (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(808);
        let mut worst = 0.0f64;
        for _ in 0..10 {
            let (a, b) = loop {
                let a: f64 = rng.gen_range(-0.45..0.45);
                let b: f64 = rng.gen_range(-1.0..1.0);
                if b.abs() <= 1.0 - 2.0 * a.abs() - 0.02
                    && (b - 2.0 * a).abs() > 0.05
                    && (b + 2.0 * a).abs() > 0.05
                    && (a, b) != (0.0, 0.0)
                {
                    break (a, b);
                }
            };
            let n = rng.gen_range(1usize..=8);
            let (left, right) = limits_thm3(a, b, n)?;
            let gl = g_n_thm3(a, b, n, 1e-6)?;
            let gr = g_n_thm3(a, b, n, std::f64::consts::PI - 1e-6)?;
            worst = worst.max((gl - left).abs()).max((gr - right).abs());
            if (gl - left).abs() > 1e-4 || (gr - right).abs() > 1e-4 {
                return Err(fail(format!(
                    "({a},{b},n={n}): limit mismatch {:.2e}/{:.2e}",
                    (gl - left).abs(),
                    (gr - right).abs()
                )));
            }
        }
        Ok(format!("10 random parameter triples, worst mismatch {worst:.1e}"))
    })())
}

/// Criterion 9: 21x21 scans with n_max = 30 and a 0.05 boundary margin.
///
/// Cells more than the margin inside must classify RealUpToN at n_max = 30.
/// Cells more than the margin outside must show a non-real zero -- six thm1
/// cells 0.2 below the boundary genuinely stay real through n = 33 and
/// first fail at n = 34..37, so the outside direction is resolved at the
/// deep-check depth n = 80 used by every necessity criterion.
pub fn criterion_9() -> CriterionResult {
    result(9, "region-scan-agreement", (|| {
        let margin = 0.05;
        let mut deep_checks = 0usize;
        for (family, a_range, b_range) in [
            (ScanFamily::Thm1, (-1.0, 1.0), (0.0, 4.0)),
            (ScanFamily::Thm3, (-1.0, 1.0), (-1.5, 1.5)),
        ] {
            let cells = scan::scan_region(family, a_range, b_range, (21, 21), 30)?;
            if cells.len() != 441 {
                return Err(fail(format!("expected 441 cells, got {}", cells.len())));
            }
            for cell in &cells {
                if matches!(cell.theory, TheoryLabel::Boundary(_)) {
                    continue;
                }
                let dist = family.region_distance(cell.a, cell.b);
                if dist > margin {
                    if cell.verdict != Verdict::RealUpToN {
                        return Err(fail(format!(
                            "inside cell ({}, {}) classified {:?}",
                            cell.a, cell.b, cell.verdict
                        )));
                    }
                    if !cell.interval_ok {
                        return Err(fail(format!(
                            "inside cell ({}, {}) escapes its interval",
                            cell.a, cell.b
                        )));
                    }
                } else if dist < -margin && cell.verdict == Verdict::RealUpToN {
                    // n_max = 30 resolution: re-examine at the deep-check depth
                    deep_checks += 1;
                    let deep = scan::classify_point(family, cell.a, cell.b, 80)?;
                    if deep.verdict == Verdict::RealUpToN {
                        return Err(fail(format!(
                            "outside cell ({}, {}) still real at n = 80",
                            cell.a, cell.b
                        )));
                    }
                }
            }
        }
        Ok(format!(
            "2 x 441 cells agree with the theorems ({deep_checks} near-boundary cells resolved at n = 80)"
        ))
    })())
}

/// Criterion 10: zero density increases with n for thm1(0,4) and
/// thm3(0,0.5): the covering radius shrinks strictly along 10, 40, 160.
pub fn criterion_10() -> CriterionResult {
    result(10, "density-trend", (|| {
        for (family, a, b) in [
            (ScanFamily::Thm1, 0.0, 4.0),
            (ScanFamily::Thm3, 0.0, 0.5),
        ] {
            let trend = scan::density_trend(family, a, b, &[10, 40, 160])?;
            if !(trend[2].1 < trend[1].1 && trend[1].1 < trend[0].1) {
                return Err(fail(format!(
                    "gaps not decreasing for {family:?}({a},{b}): {trend:?}"
                )));
            }
        }
        Ok("covering radius strictly decreasing along n = 10, 40, 160".into())
    })())
}

/// Criterion 11: GeneralR(2,0,0,-1) reproduces the Chebyshev evaluations
/// sin((n+1)theta)/sin(theta) to 1e-10 for n <= 30 at 50 sample points, and
/// the weighted combination at a = b = 0 is exactly U_n for n <= 12.
pub fn criterion_11() -> CriterionResult {
    result(11, "chebyshev-sanity", (|| {
        let params = FamilyParams::GeneralR {
            a1: BigRational::from_int(2),
            b1: BigRational::from_int(0),
            a2: BigRational::from_int(0),
            b2: BigRational::from_int(-1),
        };
        let seq = gen_family_sequence(&params, 30)?;
        // compensated evaluation: the monomial-basis evaluation condition
        // reaches ~1e9 by degree 30 near the interval ends, beyond what a
        // plain f64 Horner can deliver at the 1e-10 target
        let dseq: Vec<_> = seq
            .iter()
            .map(|p| crate::rootfinder::dd::DdPoly::from_rational_coeffs(p.coeffs()))
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(1111);
        let mut worst = 0.0f64;
        for _ in 0..50 {
            let z: f64 = rng.gen_range(-0.999..0.999);
            let theta = z.acos();
            for (n, p) in dseq.iter().enumerate().skip(1) {
                let expected = ((n as f64 + 1.0) * theta).sin() / theta.sin();
                let (value, _) = p.eval_real(z);
                let d = (value - expected).abs();
                worst = worst.max(d);
                if d > 1e-10 {
                    return Err(fail(format!(
                        "U_{n}({z}) off by {d:.2e} from the sine ratio"
                    )));
                }
            }
        }
        let u = polyseq::chebyshev_u::<BigRational>(12);
        for n in 0..=12 {
            let q = polyseq::gen_cheb_combo(
                BigRational::from_int(0),
                BigRational::from_int(0),
                n,
            );
            if q != u[n] {
                return Err(fail(format!("weighted combo at 0 differs from U_{n}")));
            }
        }
        Ok(format!(
            "recurrence matches sine ratio at 50 points to n = 30 (worst {worst:.1e}); combo(0,0) = U_n exactly"
        ))
    })())
}

/// Run every criterion in order.
pub fn run_all() -> Vec<CriterionResult> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
        criterion_10(),
        criterion_11(),
    ]
}
