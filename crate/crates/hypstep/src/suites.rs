//! One function per subcommand. Each returns a [`Report`] whose
//! `failures` name the invariants that did not hold.

use std::f64::consts::LN_2;

use hypstep_core::domains::{
    contains_omega, delta_sector, minimal_offset, r_prime, radial_convergence_check, sigma_bruteforce,
    sigma_closed_form, SectorMap,
};
use hypstep_core::dynamics::{
    l_monotonicity_check, model_coordinate, orbit, semigroup_defect, semimodel_defect_with, step, HolomorphicMap,
    STEP_MAX_N,
};
use hypstep_core::geodesics::{
    build_gamma_unchecked, build_triangle, comparison_constant, four_point_delta, max_condition_check, side_samples,
    verify_quasi_geodesic, GammaSpec, QuasiGeodesic, TriangleReport, TriangleSpec,
};
use hypstep_core::metrics::{dist_ball, dist_disc, Domain, KobayashiDomain};
use hypstep_core::{c64, Point2, C64};
use rand_chacha::ChaCha8Rng;

use crate::cli::{Command, Fault, Settings};
use crate::report::{Cell, Report};
use crate::sampling::{angle, ball_point, disc_point, rng, sphere_point, time};
use crate::CliError;

type Outcome = Result<Report, CliError>;

pub fn run(settings: &Settings) -> Outcome {
    match settings.command {
        Command::Verify => run_verify(settings),
        Command::Sigma => run_sigma(settings),
        Command::Step => run_step(settings),
        Command::Slimness => run_slimness(settings),
        Command::Qgeo => run_qgeo(settings),
        Command::Family => run_family(settings),
    }
}

/// Largest time drawn for semigroup samples.
const MAX_TIME: f64 = 10.0;
/// Largest translation drawn for invariance samples.
const MAX_SHIFT: f64 = 100.0;
/// Default exponent for the single-β suites.
const DEFAULT_BETA: f64 = 0.5;

struct Suite<'a> {
    report: &'a mut Report,
}

impl Suite<'_> {
    /// Records `worst` against `threshold` (pass iff `worst <= threshold`).
    fn record(&mut self, name: &str, samples: usize, worst: f64, threshold: f64) {
        let passed = worst <= threshold;
        self.report.push(vec![
            name.into(),
            samples.into(),
            worst.into(),
            threshold.into(),
            (threshold - worst).into(),
            passed.into(),
        ]);
        self.report.check(passed, name);
    }
}

fn max_over<F>(n: usize, rng: &mut ChaCha8Rng, mut f: F) -> Result<f64, CliError>
where
    F: FnMut(&mut ChaCha8Rng) -> Result<f64, CliError>,
{
    let mut worst: f64 = 0.0;
    for _ in 0..n {
        let v = f(rng)?;
        // NaN must not be swallowed by `max`.
        worst = if v.is_nan() { f64::NAN } else { worst.max(v) };
        if worst.is_nan() {
            break;
        }
    }
    Ok(worst)
}

/// Number of points `q = g_t(φ_h(p))` with `q ∉ Ω_h`.
pub fn invariance_violations(h: SectorMap, n: usize, rng: &mut ChaCha8Rng) -> Result<usize, CliError> {
    let phi = HolomorphicMap::Phi(h);
    let mut count = 0;
    for _ in 0..n {
        let p = phi.evaluate(ball_point(rng))?;
        let g = HolomorphicMap::GSemigroup { theta: angle(rng), t: time(rng, MAX_SHIFT) };
        let q = g.evaluate(p)?;
        let inside = if h == SectorMap::CAYLEY { contains_omega(q.z, q.w) } else { h.contains(q) };
        count += usize::from(!inside);
    }
    Ok(count)
}

pub fn run_verify(s: &Settings) -> Outcome {
    let n = s.samples;
    let tol = s.tol;
    let h = SectorMap::new(s.beta.unwrap_or(DEFAULT_BETA))?;
    let cayley = SectorMap::CAYLEY;
    let mut report = Report::new(&["suite", "samples", "worst", "threshold", "margin", "passed"]);
    let mut rng = rng(s.seed);
    let rng = &mut rng;
    let mut suite = Suite { report: &mut report };

    for (label, map) in [("conjugacy", cayley), ("conjugacy-beta", h)] {
        let worst = max_over(n, rng, |rng| {
            let p = ball_point(rng);
            let (theta, t) = (angle(rng), time(rng, MAX_TIME));
            let lifted = HolomorphicMap::GSemigroup { theta, t }.evaluate(HolomorphicMap::Phi(map).evaluate(p)?)?;
            let lhs = HolomorphicMap::Psi(map).evaluate(lifted)?;
            let rhs = if map == cayley {
                HolomorphicMap::FSemigroup { theta, t }
            } else {
                HolomorphicMap::FhSemigroup { h: map, theta, t }
            }
            .evaluate(p)?;
            Ok((lhs - rhs).norm())
        })?;
        suite.record(label, n, worst, tol);
    }

    for (label, map) in [("semigroup", cayley), ("semigroup-beta", h)] {
        let worst = max_over(n, rng, |rng| {
            let p = ball_point(rng);
            let (theta, t, u) = (angle(rng), time(rng, MAX_TIME), time(rng, MAX_TIME));
            Ok(semigroup_defect(map, theta, t, u, &[p])?)
        })?;
        suite.record(label, n, worst, tol);
    }

    let map_theta = match s.self_test {
        Some(Fault::SemimodelTheta) => s.theta + 1e-3,
        None => s.theta,
    };
    for (label, map) in [("semimodel", cayley), ("semimodel-beta", h)] {
        let worst = max_over(n, rng, |rng| {
            let p = ball_point(rng);
            let t = time(rng, MAX_TIME);
            Ok(semimodel_defect_with(map, map_theta, s.theta, t, &[p])?)
        })?;
        suite.record(label, n, worst, tol);
    }

    for (label, map) in [("phi-psi-identity", cayley), ("phi-psi-identity-beta", h)] {
        let worst = max_over(n, rng, |rng| {
            let p = ball_point(rng);
            let back = HolomorphicMap::Psi(map).evaluate(HolomorphicMap::Phi(map).evaluate(p)?)?;
            Ok((back - p).norm())
        })?;
        suite.record(label, n, worst, 1e-12);
    }

    let worst = max_over(n, rng, |rng| {
        let (p, q) = (ball_point(rng), ball_point(rng));
        let (theta, t) = (angle(rng), time(rng, MAX_TIME));
        let before = dist_ball(p, q)?;
        let mut worst = f64::NEG_INFINITY;
        for f in [
            HolomorphicMap::FDiscrete { theta },
            HolomorphicMap::FSemigroup { theta, t },
            HolomorphicMap::FhSemigroup { h, theta, t },
        ] {
            worst = worst.max(dist_ball(f.evaluate(p)?, f.evaluate(q)?)? - before);
        }
        Ok(worst)
    })?;
    suite.record("schwarz-pick", n, worst, tol);

    let violations = invariance_violations(cayley, n, rng)?;
    suite.record("forward-invariance-omega", n, violations as f64, 0.0);
    let violations = invariance_violations(h, n, rng)?;
    suite.record("forward-invariance-omega-beta", n, violations as f64, 0.0);

    let worst = max_over(n, rng, |rng| {
        let z = disc_point(rng, 1.0);
        let (theta, t) = (angle(rng), time(rng, MAX_TIME));
        let p = Point2::new(z, c64(0.0, 0.0));
        let a = HolomorphicMap::FSemigroup { theta, t }.evaluate(p)?;
        let b = HolomorphicMap::FhSemigroup { h, theta, t }.evaluate(p)?;
        Ok(a.w.norm().max(b.w.norm()))
    })?;
    suite.record("slice-invariance", n, worst, 0.0);

    let triangle_defect = |d: [f64; 3]| (d[2] - d[0] - d[1]) / (1.0 + d[0] + d[1]);
    let worst = max_over(n, rng, |rng| {
        let (a, b, c) = (ball_point(rng), ball_point(rng), ball_point(rng));
        Ok(triangle_defect([dist_ball(a, b)?, dist_ball(b, c)?, dist_ball(a, c)?]))
    })?;
    suite.record("metric-axioms-ball", n, worst, tol);
    let worst = max_over(n, rng, |rng| {
        let pt = |rng: &mut ChaCha8Rng| Ok::<_, CliError>(HolomorphicMap::Phi(cayley).evaluate(ball_point(rng))?);
        let (a, b, c) = (pt(rng)?, pt(rng)?, pt(rng)?);
        let d = |x, y| Domain::BIDISC.distance(x, y);
        let sym = (d(a, b)? - d(b, a)?).abs();
        Ok(triangle_defect([d(a, b)?, d(b, c)?, d(a, c)?]).max(sym))
    })?;
    suite.record("metric-axioms-bidisc", n, worst, tol);

    let orbits = (n / 100).max(1);
    let worst = max_over(orbits, rng, |rng| {
        let p = ball_point(rng);
        let f = HolomorphicMap::FDiscrete { theta: s.theta };
        let modulus = model_coordinate(p)?.norm();
        let o = orbit(&f, p, 100)?;
        let mut worst: f64 = 0.0;
        for q in &o.points {
            worst = worst.max((model_coordinate(*q)?.norm() - modulus).abs());
        }
        Ok(worst)
    })?;
    suite.record("model-modulus-along-orbits", orbits, worst, 1e-12);

    Ok(report)
}

pub fn run_sigma(s: &Settings) -> Outcome {
    let mut report = Report::new(&["r", "sigma_closed", "sigma_brute", "rel_error", "offset", "half_width", "passed"]);
    for &r in &s.r_grid {
        let closed = sigma_closed_form(r)?;
        let search = sigma_bruteforce(r, s.samples)?;
        let (brute, offset, width) = match search {
            hypstep_core::domains::SigmaSearch::Certified { ratio, half_width, offset } => {
                (Some(ratio), Some(offset), Some(half_width))
            }
            hypstep_core::domains::SigmaSearch::NoCertificate => (None, None, None),
        };
        let rel = brute.map(|b| (b - closed).abs() / closed);
        let passed = rel.is_some_and(|e| e <= s.tol);
        report.push(vec![
            r.into(),
            closed.into(),
            brute.into(),
            rel.into(),
            offset.into(),
            width.into(),
            passed.into(),
        ]);
        report.check(passed, format!("sigma-reproduction r={r}"));
    }
    Ok(report)
}

fn model_step(p: Point2, theta: f64) -> Result<f64, CliError> {
    let l = model_coordinate(p)?;
    Ok(dist_disc(1.0, l, C64::from_polar(1.0, theta) * l)?)
}

pub fn run_step(s: &Settings) -> Outcome {
    let mut report = Report::new(&[
        "z_re",
        "z_im",
        "w_re",
        "w_im",
        "theta",
        "step_limit",
        "model",
        "abs_error",
        "iterations",
        "converged",
        "monotone",
        "passed",
    ]);
    let mut cases =
        vec![(Point2::real(0.2, 0.0), s.theta), (Point2::real(0.0, 0.5), s.theta), (Point2::real(0.0, 0.5), 0.0)];
    let mut rng = rng(s.seed);
    cases.extend((0..s.samples).map(|_| (ball_point(&mut rng), s.theta)));
    for (p, theta) in cases {
        let est = step(&HolomorphicMap::FDiscrete { theta }, p, s.tol, STEP_MAX_N)?;
        let model = model_step(p, theta)?;
        let err = (est.limit - model).abs();
        let monotone = est.is_monotone();
        let passed = err < 1e-6 && monotone;
        report.push(vec![
            p.z.re.into(),
            p.z.im.into(),
            p.w.re.into(),
            p.w.im.into(),
            theta.into(),
            est.limit.into(),
            model.into(),
            err.into(),
            est.iterations.into(),
            est.converged.into(),
            monotone.into(),
            passed.into(),
        ]);
        report.check(passed, format!("step-model-identity p={p:?} theta={theta}"));
    }
    Ok(report)
}

/// Recorded ceiling for sampled slimness of `Ω` triangles.
pub const OMEGA_SLIMNESS_BOUND: f64 = 1.0;
/// Four-point δ of a CAT(−1) space is at most `log 2`.
pub const BALL_DELTA_BOUND: f64 = LN_2;
/// Points per side used for the four-point δ of a triangle.
const DELTA_SIDE_POINTS: usize = 16;
/// Random sphere points per radius for the ball four-point δ.
const DELTA_SPHERE_POINTS: usize = 32;

fn triangle_points(tr: &TriangleReport, per_side: usize) -> Vec<Point2> {
    let mut pts = Vec::new();
    for side in [&tr.gamma_minus, &tr.gamma_plus, &tr.alpha] {
        pts.extend(side_samples(side, per_side));
    }
    pts.push(tr.q);
    pts
}

pub fn omega_triangle(r: f64) -> Result<TriangleReport, CliError> {
    let m = minimal_offset(r, 1.0)?;
    Ok(build_triangle(TriangleSpec { offset: m, ..TriangleSpec::flagship(r) })?)
}

pub fn run_slimness(s: &Settings) -> Outcome {
    let mut report = Report::new(&[
        "ambient",
        "r",
        "offset",
        "lower_bound",
        "g_estimate",
        "grid_error",
        "four_point_delta",
        "consistent",
    ]);
    let mut rng = rng(s.seed);
    let mut bidisc_bounds = Vec::new();
    let mut omega_max: f64 = 0.0;
    let mut ball_max: f64 = 0.0;
    for &r in &s.r_grid {
        for (label, domain) in [("bidisc", Domain::BIDISC), ("omega", Domain::OMEGA)] {
            let mut tr =
                if label == "bidisc" { build_triangle(TriangleSpec::flagship(r))? } else { omega_triangle(r)? };
            let est = tr.estimate_slimness(&domain, s.samples)?;
            let delta = four_point_delta(&triangle_points(&tr, DELTA_SIDE_POINTS), &domain)?;
            let consistent = est.g >= tr.lower_bound - est.grid_error - s.tol;
            report.push(vec![
                label.into(),
                r.into(),
                tr.spec.offset.into(),
                tr.lower_bound.into(),
                est.g.into(),
                est.grid_error.into(),
                delta.into(),
                consistent.into(),
            ]);
            report.check(consistent, format!("lower-bound-consistency {label} r={r}"));
            if label == "bidisc" {
                bidisc_bounds.push(tr.lower_bound);
            } else {
                omega_max = omega_max.max(est.g);
            }
        }
        let pts: Vec<Point2> = (0..DELTA_SPHERE_POINTS).map(|_| sphere_point(&mut rng, r)).collect();
        let delta = four_point_delta(&pts, &Domain::Ball)?;
        ball_max = ball_max.max(delta);
        report.push(vec![
            "ball".into(),
            r.into(),
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
            delta.into(),
            true.into(),
        ]);
    }
    let increasing = bidisc_bounds.windows(2).all(|w| w[1] > w[0]);
    report.check(increasing, "bidisc-lower-bound-increasing");
    report.check(omega_max <= OMEGA_SLIMNESS_BOUND, "omega-slimness-bounded");
    report.check(ball_max <= BALL_DELTA_BOUND + s.tol, "ball-four-point-bounded");
    if let (Some(first), Some(last)) = (bidisc_bounds.first(), bidisc_bounds.last()) {
        report.summary.push(("bidisc_growth_ratio", (last / first).into()));
    }
    report.summary.push(("omega_slimness_max", omega_max.into()));
    report.summary.push(("omega_slimness_bound", OMEGA_SLIMNESS_BOUND.into()));
    report.summary.push(("ball_delta_max", ball_max.into()));
    report.summary.push(("ball_delta_bound", BALL_DELTA_BOUND.into()));
    Ok(report)
}

/// The curve violating the height condition tenfold, with `M = 0`.
pub fn violated_gamma(r: f64, c: f64) -> Result<QuasiGeodesic, CliError> {
    let rp = r_prime(r)?;
    let a = comparison_constant(c)?.d;
    let span = dist_disc(r, c64(-rp, 0.0), c64(0.0, 0.0))?;
    let b = a + 10.0 * 2.0 / (c * std::f64::consts::PI) * span;
    Ok(build_gamma_unchecked(GammaSpec { r, half_width: 1.0, offset: 0.0, t0: -rp, t1: 0.0, a, b })?)
}

/// Parameter grid for `max_condition_check`.
const MARGIN_POINTS: usize = 1000;

pub fn run_qgeo(s: &Settings) -> Outcome {
    let mut report = Report::new(&[
        "case",
        "side",
        "ambient",
        "r",
        "offset",
        "a",
        "b",
        "lower_slack",
        "upper_slack",
        "max_condition_margin",
        "passed",
    ]);
    for &r in &s.r_grid {
        let tr = omega_triangle(r)?;
        for (side, gamma) in [("gamma-", &tr.gamma_minus), ("gamma+", &tr.gamma_plus), ("alpha", &tr.alpha)] {
            let margin = max_condition_check(gamma, MARGIN_POINTS)?;
            let case = if side == "alpha" { "flat" } else { "admissible" };
            for (ambient, domain) in [("bidisc", Domain::BIDISC), ("omega", Domain::OMEGA)] {
                let check = verify_quasi_geodesic(gamma, gamma.constants, &domain, s.samples, s.tol)?;
                let passed = check.holds() && margin >= 0.0;
                report.push(vec![
                    case.into(),
                    side.into(),
                    ambient.into(),
                    r.into(),
                    tr.spec.offset.into(),
                    gamma.spec.a.into(),
                    gamma.spec.b.into(),
                    check.lower_slack.into(),
                    check.upper_slack.into(),
                    margin.into(),
                    passed.into(),
                ]);
                report.check(passed, format!("quasi-geodesic {side} {ambient} r={r}"));
            }
        }
        let bad = violated_gamma(r, 2.0)?;
        let margin = max_condition_check(&bad, MARGIN_POINTS)?;
        let passed = margin < 0.0;
        report.push(vec![
            "violated".into(),
            "gamma-".into(),
            Cell::Empty,
            r.into(),
            0.0.into(),
            bad.spec.a.into(),
            bad.spec.b.into(),
            Cell::Empty,
            Cell::Empty,
            margin.into(),
            passed.into(),
        ]);
        report.check(passed, format!("height-condition-active r={r}"));
    }
    Ok(report)
}

/// Default exponents of the sector family.
pub const FAMILY_BETAS: [f64; 4] = [1.0, 0.75, 0.5, 0.25];

pub fn run_family(s: &Settings) -> Outcome {
    let mut report = Report::new(&[
        "beta",
        "radial_direction_error",
        "radial_distance_max",
        "delta_slope",
        "delta_slope_error",
        "l_non_increasing",
        "re_inverse_non_decreasing",
        "semigroup_defect",
        "semimodel_defect",
        "invariance_violations",
        "cayley_reduction_error",
        "passed",
    ]);
    let betas: Vec<f64> = match s.beta {
        Some(b) if b != 1.0 => vec![1.0, b],
        Some(_) => vec![1.0],
        None => FAMILY_BETAS.to_vec(),
    };
    let mut rng = rng(s.seed);
    let samples: Vec<Point2> = (0..s.samples).map(|_| ball_point(&mut rng)).collect();
    let times: Vec<(f64, f64)> = (0..s.samples).map(|_| (time(&mut rng, MAX_TIME), time(&mut rng, MAX_TIME))).collect();
    let radial_t: Vec<f64> = s.t_grid.iter().map(|t| 1.0 + t).collect();
    for beta in betas {
        let h = SectorMap::new(beta)?;
        let rows = radial_convergence_check(h, &radial_t)?;
        let direction_error = rows.iter().map(|r| (r.direction + 1.0).norm()).fold(0.0, f64::max);
        let distance_max = rows.iter().map(|r| r.distance_to_radius).fold(0.0, f64::max);
        let slope_exact = (beta * std::f64::consts::FRAC_PI_2).sin();
        let mut slope_error: f64 = 0.0;
        for &t in &radial_t {
            slope_error = slope_error.max((delta_sector(h, t)? / t - slope_exact).abs());
        }
        let mut l_ok = true;
        let mut re_ok = true;
        for y in [c64(1.0, 0.0), C64::from_polar(2.0, 0.5 * h.half_angle())] {
            let l = l_monotonicity_check(h, y, &s.t_grid)?;
            l_ok &= l.non_increasing;
            re_ok &= l.real_part_non_decreasing;
        }
        let mut semigroup: f64 = 0.0;
        let mut semimodel: f64 = 0.0;
        for (p, &(t, u)) in samples.iter().zip(&times) {
            semigroup = semigroup.max(semigroup_defect(h, s.theta, t, u, &[*p])?);
            semimodel = semimodel.max(semimodel_defect_with(h, s.theta, s.theta, t, &[*p])?);
        }
        let violations = invariance_violations(h, s.samples, &mut rng)?;
        let reduction = if beta == 1.0 {
            let mut worst: f64 = 0.0;
            for (p, &(t, _)) in samples.iter().zip(&times) {
                let a = HolomorphicMap::FhSemigroup { h, theta: s.theta, t }.evaluate(*p)?;
                let b = HolomorphicMap::FSemigroup { theta: s.theta, t }.evaluate(*p)?;
                worst = worst.max((a - b).norm());
            }
            Some(worst)
        } else {
            None
        };
        let passed = direction_error == 0.0
            && slope_error <= 1e-12
            && l_ok
            && re_ok
            && semigroup <= s.tol
            && semimodel <= s.tol
            && violations == 0
            && reduction.is_none_or(|e| e <= s.tol);
        report.push(vec![
            beta.into(),
            direction_error.into(),
            distance_max.into(),
            slope_exact.into(),
            slope_error.into(),
            l_ok.into(),
            re_ok.into(),
            semigroup.into(),
            semimodel.into(),
            violations.into(),
            reduction.into(),
            passed.into(),
        ]);
        report.check(passed, format!("sector-family beta={beta}"));
    }
    Ok(report)
}
