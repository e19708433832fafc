//! Explicit self-maps of the ball, their semigroups and models, and the
//! orbit-level estimators (step, dilation, convergence type).

use alloc::vec::Vec;
use core::f64::consts::SQRT_2;

use crate::domains::{from_polydisc, to_polydisc, SectorMap};
use crate::metrics::{dist_ball, BOUNDARY_MARGIN};
use crate::{c64, Error, Point2, Result, C64};

const ONE: C64 = c64(1.0, 0.0);

/// Default stopping tolerance for [`step`].
pub const STEP_TOL: f64 = 1e-9;
/// Default iteration cap for [`step`].
pub const STEP_MAX_N: usize = 100_000;

/// Slack allowed in the monotonicity checks.
pub const MONOTONE_SLACK: f64 = 1e-10;

/// `√a` after asserting `Re a > 0`, so the principal branch is never near
/// its cut.
fn root(a: C64, map: &'static str) -> Result<C64> {
    if a.re > 0.0 {
        Ok(a.sqrt())
    } else {
        Err(Error::BranchCut { map })
    }
}

fn in_ball(p: Point2) -> bool {
    p.is_finite() && {
        let n = p.norm();
        (1.0 - n) * (1.0 + n) > BOUNDARY_MARGIN
    }
}

fn check_ball(p: Point2) -> Result<()> {
    if in_ball(p) {
        Ok(())
    } else {
        Err(Error::DomainViolation { domain: "ball" })
    }
}

fn check_time(t: f64) -> Result<()> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::Range { parameter: "t", value: t })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HolomorphicMap {
    /// `φ_h : 𝔻 × ℂ → Ω_h`.
    Phi(SectorMap),
    /// `ψ_h = φ_h⁻¹ : ℂ × h(𝔻) → 𝔻 × ℂ`.
    Psi(SectorMap),
    /// `f(z, w) = ((1 + z)/(3 − z), √2·e^{iθ}w/√(3 − z))` on `𝔹²`.
    FDiscrete { theta: f64 },
    /// `f_t(z, w) = ((t + z(2 − t))/(2 + t − zt), √2·e^{itθ}w/√(2 + t − zt))`.
    FSemigroup { theta: f64, t: f64 },
    /// `f_t = ψ_h ∘ g_t ∘ φ_h`, in closed form
    /// `(h⁻¹(h(z) + t), e^{itθ}w·√(1 − z')/√(1 − z))`.
    FhSemigroup { h: SectorMap, theta: f64, t: f64 },
    /// `g_t(ζ, y) = (e^{itθ}ζ, y + t)`.
    GSemigroup { theta: f64, t: f64 },
    /// `Φ(z, w) = (z, (w − 1)/(w + 1))` on `𝔻 × ℍ`.
    Cayley,
    /// `(z, 0) ↦ ((1 + z)/(3 − z), 0)`, the restriction of `f` to `w = 0`.
    Slice,
}

impl HolomorphicMap {
    pub fn evaluate(&self, p: Point2) -> Result<Point2> {
        match *self {
            HolomorphicMap::Phi(h) => {
                root(ONE - p.z, "φ")?;
                h.embed(p)
            }
            HolomorphicMap::Psi(h) => {
                if h == SectorMap::CAYLEY {
                    root(ONE + p.w, "ψ")?;
                }
                h.pull_back(p)
            }
            HolomorphicMap::FDiscrete { theta } => {
                check_ball(p)?;
                let den = c64(3.0, 0.0) - p.z;
                let w = C64::from_polar(SQRT_2, theta) * p.w / root(den, "f")?;
                Ok(Point2::new((ONE + p.z) / den, w))
            }
            HolomorphicMap::FSemigroup { theta, t } => {
                check_time(t)?;
                check_ball(p)?;
                let den = c64(2.0 + t, 0.0) - p.z * t;
                let z = (p.z * (2.0 - t) + t) / den;
                let w = C64::from_polar(SQRT_2, t * theta) * p.w / root(den, "f_t")?;
                Ok(Point2::new(z, w))
            }
            HolomorphicMap::FhSemigroup { h, theta, t } => {
                check_time(t)?;
                check_ball(p)?;
                let z = h.inverse(h.apply(p.z)? + t)?;
                let ratio = root(ONE - z, "f_t")? / root(ONE - p.z, "f_t")?;
                Ok(Point2::new(z, C64::from_polar(1.0, t * theta) * p.w * ratio))
            }
            HolomorphicMap::GSemigroup { theta, t } => {
                check_time(t)?;
                Ok(Point2::new(C64::from_polar(1.0, t * theta) * p.z, p.w + t))
            }
            HolomorphicMap::Cayley => {
                if !(p.z.norm() < 1.0 && p.w.re > 0.0) {
                    return Err(Error::DomainViolation { domain: "𝔻 × ℍ" });
                }
                to_polydisc(p)
            }
            HolomorphicMap::Slice => {
                if p.w != c64(0.0, 0.0) {
                    return Err(Error::DomainViolation { domain: "𝔻 × {0}" });
                }
                Ok(Point2::new(slice_map(p.z)?, p.w))
            }
        }
    }
}

/// Inverse of [`HolomorphicMap::Cayley`].
pub fn cayley_inverse(p: Point2) -> Result<Point2> {
    from_polydisc(p)
}

/// `ℓ(z, w) = w / (√2·√(1 − z))`, the model coordinate.
pub fn model_coordinate(p: Point2) -> Result<C64> {
    Ok(p.w / (root(ONE - p.z, "ℓ")? * SQRT_2))
}

/// `z ↦ (1 + z)/(3 − z)` on `𝔻`.
pub fn slice_map(z: C64) -> Result<C64> {
    if !(z.norm() < 1.0) {
        return Err(Error::DomainViolation { domain: "disc" });
    }
    Ok((ONE + z) / (c64(3.0, 0.0) - z))
}

/// A self-map of `𝔹²` that can be iterated.
pub trait BallMap {
    fn apply(&self, p: Point2) -> Result<Point2>;
}

impl BallMap for HolomorphicMap {
    fn apply(&self, p: Point2) -> Result<Point2> {
        self.evaluate(p)
    }
}

impl<F: Fn(Point2) -> Result<Point2>> BallMap for F {
    fn apply(&self, p: Point2) -> Result<Point2> {
        self(p)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Orbit {
    /// `p, f(p), …`; every element is in `𝔹²`.
    pub points: Vec<Point2>,
    /// Set when an iterate came within `BOUNDARY_MARGIN` of the sphere (or
    /// the map failed) before `n` steps.
    pub truncated: bool,
}

pub fn orbit<M: BallMap + ?Sized>(map: &M, p: Point2, n: usize) -> Result<Orbit> {
    check_ball(p)?;
    let mut points = Vec::with_capacity(n + 1);
    points.push(p);
    let mut current = p;
    for _ in 0..n {
        match map.apply(current) {
            Ok(next) if in_ball(next) => {
                points.push(next);
                current = next;
            }
            _ => return Ok(Orbit { points, truncated: true }),
        }
    }
    Ok(Orbit { points, truncated: false })
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepEstimate {
    /// `d_n = k_{𝔹²}(fⁿp, fⁿ⁺¹p)` for `n = 0, 1, …`.
    pub distances: Vec<f64>,
    /// Extrapolated `lim d_n`.
    pub limit: f64,
    pub iterations: usize,
    /// `|d_{n+1} − d_n| < tol` was reached.
    pub converged: bool,
}

impl StepEstimate {
    /// Largest increase `d_{n+1} − d_n` (non-positive for a contraction).
    pub fn max_increase(&self) -> f64 {
        self.distances.windows(2).map(|w| w[1] - w[0]).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn is_monotone(&self) -> bool {
        self.distances.len() < 2 || self.max_increase() <= MONOTONE_SLACK
    }
}

/// `lim d_n` from the tail, assuming `d_n = L + a/n + b/n² + …`: two
/// Richardson levels over the indices `N/4, N/2, N`.
fn extrapolate(d: &[f64]) -> f64 {
    let last = d.len().saturating_sub(1);
    let n = last - last % 4;
    if n < 8 {
        return d.last().copied().unwrap_or(0.0);
    }
    let r_half = 2.0 * d[n] - d[n / 2];
    let r_quarter = 2.0 * d[n / 2] - d[n / 4];
    ((4.0 * r_half - r_quarter) / 3.0).max(0.0)
}

/// Hyperbolic step `lim k(fⁿp, fⁿ⁺¹p)` along the forward orbit of `p`.
pub fn step<M: BallMap + ?Sized>(map: &M, p: Point2, tol: f64, max_n: usize) -> Result<StepEstimate> {
    if !(tol > 0.0) {
        return Err(Error::Range { parameter: "tol", value: tol });
    }
    check_ball(p)?;
    let mut distances = Vec::new();
    let mut current = p;
    let mut converged = false;
    for _ in 0..max_n {
        let next = match map.apply(current) {
            Ok(q) if in_ball(q) => q,
            _ => break,
        };
        distances.push(dist_ball(current, next)?);
        current = next;
        if let [.., a, b] = distances[..] {
            if (b - a).abs() < tol {
                converged = true;
                break;
            }
        }
    }
    Ok(StepEstimate { limit: extrapolate(&distances), iterations: distances.len(), distances, converged })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DilationEstimate {
    pub points: Vec<Point2>,
    /// `(1 − ‖f(z)‖)/(1 − ‖z‖)` along the approach.
    pub ratios: Vec<f64>,
    /// Minimum over the final half of `ratios`. This bounds the liminf
    /// along this sequence only, not over all approaches.
    pub liminf: f64,
}

fn gap_to_sphere(p: Point2) -> f64 {
    let n = p.norm();
    (1.0 - n * n) / (1.0 + n)
}

pub fn dilation<M: BallMap + ?Sized>(map: &M, approach: &[Point2]) -> Result<DilationEstimate> {
    if approach.is_empty() {
        return Err(Error::Input("empty approach sequence"));
    }
    let ratios = approach
        .iter()
        .map(|&p| {
            check_ball(p)?;
            Ok(gap_to_sphere(map.apply(p)?) / gap_to_sphere(p))
        })
        .collect::<Result<Vec<f64>>>()?;
    let liminf = ratios[ratios.len() / 2..].iter().copied().fold(f64::INFINITY, f64::min);
    Ok(DilationEstimate { points: approach.to_vec(), ratios, liminf })
}

/// `(t_k, 0)` with `t_k = 1 − 2^{-k}`, `k = 1..=n`.
pub fn radial_approach(n: usize) -> Vec<Point2> {
    (1..=n).map(|k| Point2::real(1.0 - libm::ldexp(1.0, -(k as i32)), 0.0)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvergenceKind {
    Radial,
    Tangential,
    Indeterminate,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceClass {
    pub kind: ConvergenceKind,
    /// `|arg(1 − z_n)|` at the last point.
    pub final_angle: f64,
    /// `|w_n|²/|1 − z_n|` at the last point.
    pub final_ratio: f64,
    /// Minimum of the ratio over the last quarter.
    pub tail_ratio: f64,
}

pub const RADIAL_ANGLE: f64 = 0.01;
pub const RADIAL_RATIO: f64 = 0.01;
pub const TANGENTIAL_RATIO: f64 = 0.1;
/// Shorter orbits are always indeterminate.
pub const MIN_CLASSIFY_LEN: usize = 8;

pub fn classify_convergence(orbit: &[Point2]) -> ConvergenceClass {
    let ratio = |p: &Point2| p.w.norm_sqr() / (ONE - p.z).norm();
    let Some(last) = orbit.last() else {
        return ConvergenceClass {
            kind: ConvergenceKind::Indeterminate,
            final_angle: f64::NAN,
            final_ratio: f64::NAN,
            tail_ratio: f64::NAN,
        };
    };
    let final_angle = (ONE - last.z).arg().abs();
    let final_ratio = ratio(last);
    let tail = &orbit[orbit.len() - orbit.len() / 4..];
    let tail_ratio = tail.iter().map(ratio).fold(f64::INFINITY, f64::min);
    let kind = if orbit.len() < MIN_CLASSIFY_LEN {
        ConvergenceKind::Indeterminate
    } else if tail_ratio > TANGENTIAL_RATIO {
        ConvergenceKind::Tangential
    } else if final_angle < RADIAL_ANGLE && final_ratio < RADIAL_RATIO {
        ConvergenceKind::Radial
    } else {
        ConvergenceKind::Indeterminate
    };
    ConvergenceClass { kind, final_angle, final_ratio, tail_ratio }
}

fn semigroup_at(h: SectorMap, theta: f64, t: f64) -> HolomorphicMap {
    if h == SectorMap::CAYLEY {
        HolomorphicMap::FSemigroup { theta, t }
    } else {
        HolomorphicMap::FhSemigroup { h, theta, t }
    }
}

/// `max ‖f_{t+s}(p) − f_t(f_s(p))‖` over `samples`.
pub fn semigroup_defect(h: SectorMap, theta: f64, t: f64, s: f64, samples: &[Point2]) -> Result<f64> {
    check_time(t)?;
    check_time(s)?;
    let mut worst: f64 = 0.0;
    for &p in samples {
        let direct = semigroup_at(h, theta, t + s).evaluate(p)?;
        let composed = semigroup_at(h, theta, t).evaluate(semigroup_at(h, theta, s).evaluate(p)?)?;
        worst = worst.max((direct - composed).norm());
    }
    Ok(worst)
}

/// `max |ℓ(f_t(p)) − e^{itθ}ℓ(p)|` over `samples`.
pub fn semimodel_defect(h: SectorMap, theta: f64, t: f64, samples: &[Point2]) -> Result<f64> {
    semimodel_defect_with(h, theta, theta, t, samples)
}

/// As [`semimodel_defect`], with the rotation of the model taken at
/// `model_theta` instead of the map's own angle.
pub fn semimodel_defect_with(h: SectorMap, theta: f64, model_theta: f64, t: f64, samples: &[Point2]) -> Result<f64> {
    check_time(t)?;
    let rotation = C64::from_polar(1.0, t * model_theta);
    let map = semigroup_at(h, theta, t);
    let mut worst: f64 = 0.0;
    for &p in samples {
        let lhs = model_coordinate(map.evaluate(p)?)?;
        worst = worst.max((lhs - rotation * model_coordinate(p)?).norm());
    }
    Ok(worst)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LReport {
    /// `(t, L(t), Re ĥ⁻¹(y + t))`.
    pub rows: Vec<(f64, f64, f64)>,
    /// `L(t_{i+1}) ≤ L(t_i) + 1e-10` throughout.
    pub non_increasing: bool,
    /// `Re ĥ⁻¹(y + t)` never drops by more than `1e-10`.
    pub real_part_non_decreasing: bool,
}

/// Tabulates `L(t) = |1 + ĥ⁻¹(y + t)| / Re ĥ⁻¹(y + t)`.
pub fn l_monotonicity_check(h: SectorMap, y: C64, t_grid: &[f64]) -> Result<LReport> {
    if !h.in_image(y) {
        return Err(Error::DomainViolation { domain: "h(𝔻)" });
    }
    if t_grid.windows(2).any(|w| !(w[1] > w[0])) || t_grid.first().is_some_and(|&t| t < 0.0) {
        return Err(Error::Input("t-grid must be increasing and non-negative"));
    }
    let rows = t_grid
        .iter()
        .map(|&t| {
            let u = h.half_plane_inverse(y + t)?;
            Ok((t, (ONE + u).norm() / u.re, u.re))
        })
        .collect::<Result<Vec<_>>>()?;
    let non_increasing = rows.windows(2).all(|w| w[1].1 <= w[0].1 + MONOTONE_SLACK);
    let real_part_non_decreasing = rows.windows(2).all(|w| w[1].2 >= w[0].2 - MONOTONE_SLACK);
    Ok(LReport { rows, non_increasing, real_part_non_decreasing })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::dist_disc;
    use core::f64::consts::PI;

    const F_PI: HolomorphicMap = HolomorphicMap::FDiscrete { theta: PI };

    #[test]
    fn evaluate_examples() {
        let phi = HolomorphicMap::Phi(SectorMap::CAYLEY);
        let psi = HolomorphicMap::Psi(SectorMap::CAYLEY);
        assert_eq!(phi.evaluate(Point2::ORIGIN).unwrap(), Point2::real(0.0, 1.0));
        assert_eq!(psi.evaluate(Point2::real(0.0, 1.0)).unwrap(), Point2::ORIGIN);
        let f0 = F_PI.evaluate(Point2::ORIGIN).unwrap();
        assert!((f0 - Point2::real(1.0 / 3.0, 0.0)).norm() < 1e-16);
    }

    #[test]
    fn branch_cut_contact_is_reported() {
        let phi = HolomorphicMap::Phi(SectorMap::CAYLEY);
        assert_eq!(phi.evaluate(Point2::real(1.0, 0.0)), Err(Error::BranchCut { map: "φ" }));
        let psi = HolomorphicMap::Psi(SectorMap::CAYLEY);
        assert_eq!(psi.evaluate(Point2::real(0.0, -1.0)), Err(Error::BranchCut { map: "ψ" }));
        assert_eq!(model_coordinate(Point2::real(1.0, 0.5)), Err(Error::BranchCut { map: "ℓ" }));
        assert!(F_PI.evaluate(Point2::real(0.8, 0.8)).is_err());
    }

    #[test]
    fn semigroup_at_one_is_discrete_map() {
        let p = Point2::new(c64(0.2, -0.3), c64(0.1, 0.5));
        let a = HolomorphicMap::FSemigroup { theta: 0.7, t: 1.0 }.evaluate(p).unwrap();
        let b = HolomorphicMap::FDiscrete { theta: 0.7 }.evaluate(p).unwrap();
        assert!((a - b).norm() < 1e-15);
        let c = HolomorphicMap::FhSemigroup { h: SectorMap::CAYLEY, theta: 0.7, t: 1.0 }.evaluate(p).unwrap();
        assert!((a - c).norm() < 1e-15);
    }

    #[test]
    fn slice_orbit_first_terms() {
        let o = orbit(&F_PI, Point2::ORIGIN, 3).unwrap();
        let z: Vec<f64> = o.points.iter().map(|p| p.z.re).collect();
        assert_eq!(z[0], 0.0);
        assert!((z[1] - 1.0 / 3.0).abs() < 1e-16);
        assert!((z[2] - 0.5).abs() < 1e-16);
        assert!(o.points.iter().all(|p| p.w == c64(0.0, 0.0)));
        assert!(!o.truncated);
    }

    #[test]
    fn orbit_truncates_at_the_sphere() {
        let escape = |p: Point2| Ok(Point2::new(p.z * 0.5 + 0.5, p.w));
        let o = orbit(&escape, Point2::ORIGIN, 200).unwrap();
        assert!(o.truncated);
        assert!(o.points.len() < 60);
    }

    #[test]
    fn step_on_the_slice_vanishes() {
        let s = step(&F_PI, Point2::real(0.3, 0.0), STEP_TOL, STEP_MAX_N).unwrap();
        assert!(s.converged && s.is_monotone());
        assert!(s.limit < 1e-6, "{}", s.limit);
    }

    #[test]
    fn step_matches_model_distance() {
        let w0 = c64(0.5, 0.0);
        let s = step(&F_PI, Point2::new(c64(0.0, 0.0), w0), STEP_TOL, STEP_MAX_N).unwrap();
        let l = w0 / SQRT_2;
        let expected = dist_disc(1.0, l, -l).unwrap();
        assert!((expected - 0.738_997_943_851_738_63).abs() < 1e-15);
        assert!((s.limit - expected).abs() < 1e-8, "{} vs {}", s.limit, expected);
        assert!(s.is_monotone());
    }

    #[test]
    fn step_without_rotation_vanishes() {
        let f = HolomorphicMap::FDiscrete { theta: 2.0 * PI };
        let s = step(&f, Point2::new(c64(0.1, 0.2), c64(0.3, -0.4)), STEP_TOL, STEP_MAX_N).unwrap();
        assert!(s.limit < 1e-6, "{}", s.limit);
    }

    #[test]
    fn dilation_slice_and_control() {
        let approach = radial_approach(30);
        let d = dilation(&HolomorphicMap::Slice, &approach).unwrap();
        assert!(d.ratios.iter().all(|&r| r > 0.0));
        assert!((d.ratios.last().unwrap() - 1.0).abs() < 1e-8);
        assert!(d.liminf > 0.0 && d.liminf <= 1.0);
        let a = 0.5;
        let hyperbolic = |p: Point2| Ok(Point2::new((p.z + a) / (p.z * a + 1.0), p.w));
        let d = dilation(&hyperbolic, &approach).unwrap();
        assert!((d.liminf - (1.0 - a) / (1.0 + a)).abs() < 1e-6, "{}", d.liminf);
    }

    #[test]
    fn convergence_examples() {
        let radial = orbit(&F_PI, Point2::ORIGIN, 2000).unwrap();
        assert_eq!(classify_convergence(&radial.points).kind, ConvergenceKind::Radial);
        let f = HolomorphicMap::FDiscrete { theta: 1.3 };
        let tangential = orbit(&f, Point2::real(0.0, 0.5), 2000).unwrap();
        assert_eq!(classify_convergence(&tangential.points).kind, ConvergenceKind::Tangential);
        assert_eq!(classify_convergence(&radial.points[..4]).kind, ConvergenceKind::Indeterminate);
    }

    #[test]
    fn model_modulus_is_preserved_along_orbits() {
        let p = Point2::new(c64(-0.2, 0.4), c64(0.3, 0.2));
        let target = model_coordinate(p).unwrap().norm();
        let o = orbit(&HolomorphicMap::FDiscrete { theta: 0.4 }, p, 500).unwrap();
        for q in &o.points {
            assert!((model_coordinate(*q).unwrap().norm() - target).abs() < 1e-12);
        }
    }

    #[test]
    fn semigroup_and_semimodel_defects() {
        let samples =
            [Point2::ORIGIN, Point2::new(c64(0.3, 0.1), c64(-0.2, 0.6)), Point2::new(c64(-0.7, 0.0), c64(0.0, 0.5))];
        let half = SectorMap::new(0.5).unwrap();
        for h in [SectorMap::CAYLEY, half] {
            assert!(semigroup_defect(h, 0.9, 0.0, 0.0, &samples).unwrap() < 1e-12);
            assert!(semigroup_defect(h, 0.9, 1.0, 1.0, &samples).unwrap() < 1e-10);
            assert!(semigroup_defect(h, 0.9, 0.37, 4.2, &samples).unwrap() < 1e-10);
            assert!(semimodel_defect(h, PI / 3.0, 2.7, &samples).unwrap() < 1e-10);
        }
        assert!(semimodel_defect_with(half, 1.0, 1.001, 2.7, &samples).unwrap() > 1e-4);
    }

    #[test]
    fn l_is_non_increasing() {
        let grid: Vec<f64> = (0..50).map(|k| 0.2 * k as f64).collect();
        for beta in [1.0, 0.5, 0.3] {
            let h = SectorMap::new(beta).unwrap();
            for y in [c64(0.5, 0.0), c64(1.0, 0.2)] {
                let report = l_monotonicity_check(h, y, &grid).unwrap();
                assert!(report.non_increasing && report.real_part_non_decreasing);
            }
        }
        let report = l_monotonicity_check(SectorMap::CAYLEY, c64(2.0, 0.0), &[0.0, 1.0]).unwrap();
        assert!((report.rows[0].1 - 1.5).abs() < 1e-15);
        assert!((report.rows[1].1 - 4.0 / 3.0).abs() < 1e-15);
        assert!(l_monotonicity_check(SectorMap::CAYLEY, c64(-1.0, 0.0), &[0.0]).is_err());
    }
}
