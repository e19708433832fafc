//! Quasi-geodesics in `𝔻_r × S_{R,M}`, the slim-triangle family built from
//! them, and Gromov-type estimators.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::domains::r_prime;
use crate::metrics::{dist_disc, metric_disc, metric_halfstrip, Curve, KobayashiDomain};
use crate::{c64, Error, Point2, Result};

/// Relative slack tolerated when re-checking an inequality that holds with
/// equality by construction.
const EQUALITY_SLACK: f64 = 1e-12;

/// `D(c) = (1/π)·log((c + 1)/(c − 1))`: for real `s ≥ M + D·R`,
/// `κ_{S_{R,M}}(s; v) ≤ c·κ_{S_R}(s; v)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonConstant {
    pub c: f64,
    pub d: f64,
}

pub fn comparison_constant(c: f64) -> Result<ComparisonConstant> {
    if !(c > 1.0) {
        return Err(Error::Range { parameter: "c (needs c > 1)", value: c });
    }
    Ok(ComparisonConstant { c, d: libm::log1p(2.0 / (c - 1.0)) / PI })
}

/// Parameters of the curve joining `(t₀, a)` to `(t₁, b)` in `𝔻_r × S_{R,M}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaSpec {
    pub r: f64,
    pub half_width: f64,
    pub offset: f64,
    pub t0: f64,
    pub t1: f64,
    pub a: f64,
    pub b: f64,
}

/// `γ(t) = ((1 − t)t₀ + t·t₁, a + (b − a)·k_{𝔻_r}(t₀, γ₁(t))/k_{𝔻_r}(t₀, t₁))`
/// on `[0, 1]`, with claimed constants `(A, B)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuasiGeodesic {
    pub spec: GammaSpec,
    pub constants: (f64, f64),
    /// `k_{𝔻_r}(t₀, t₁)`.
    span: f64,
}

impl QuasiGeodesic {
    pub fn first(&self, t: f64) -> f64 {
        (1.0 - t) * self.spec.t0 + t * self.spec.t1
    }

    /// Share `k(t₀, γ₁(t))/k(t₀, t₁)` of the disc distance covered at `t`.
    fn progress(&self, x: f64) -> f64 {
        if x == self.spec.t1 {
            return 1.0;
        }
        dist_disc(self.spec.r, c64(self.spec.t0, 0.0), c64(x, 0.0)).unwrap_or(f64::NAN) / self.span
    }

    pub fn second(&self, t: f64) -> f64 {
        let rho = self.progress(self.first(t));
        if rho == 1.0 {
            self.spec.b
        } else {
            self.spec.a + (self.spec.b - self.spec.a) * rho
        }
    }

    /// `(γ₁'(t), γ₂'(t))`.
    pub fn velocity(&self, t: f64) -> (f64, f64) {
        let GammaSpec { r, t0, t1, a, b, .. } = self.spec;
        let v1 = t1 - t0;
        let disc_speed = metric_disc(r, c64(self.first(t), 0.0), c64(v1, 0.0)).unwrap_or(f64::NAN);
        (v1, (b - a) * disc_speed / self.span)
    }

    /// The point at which the fraction `f ∈ [0, 1]` of `k_{𝔻_r}(t₀, t₁)`
    /// has been covered; `γ₂` is then exactly `a + (b − a)·f`.
    pub fn point_at_fraction(&self, f: f64) -> Point2 {
        if f <= 0.0 {
            return self.start();
        }
        if f >= 1.0 {
            return self.end();
        }
        let GammaSpec { r, t0, t1, a, b, .. } = self.spec;
        let u0 = t0 / r;
        let tau = libm::tanh(f * self.span).copysign(t1 - t0);
        let x = r * (u0 + tau) / (1.0 + u0 * tau);
        Point2::real(x, a + (b - a) * f)
    }

    pub fn start(&self) -> Point2 {
        Point2::real(self.spec.t0, self.spec.a)
    }

    pub fn end(&self) -> Point2 {
        Point2::real(self.spec.t1, self.spec.b)
    }
}

impl Curve for QuasiGeodesic {
    type Point = Point2;

    fn interval(&self) -> (f64, f64) {
        (0.0, 1.0)
    }

    fn point(&self, t: f64) -> Point2 {
        Point2::real(self.first(t), self.second(t))
    }

    fn tangent(&self, t: f64) -> Point2 {
        let (v1, v2) = self.velocity(t);
        Point2::real(v1, v2)
    }
}

const IMAGE_CHECK_POINTS: usize = 100;

/// Builds the `(2, 0)` quasi-geodesic after checking every hypothesis.
pub fn build_gamma(spec: GammaSpec, c: f64) -> Result<QuasiGeodesic> {
    let GammaSpec { r, half_width, offset, t0, t1, a, b } = spec;
    if !(r > 0.5 && r < 1.0) {
        return Err(Error::ConstructionRefused("1/2 < r < 1"));
    }
    let rp = r_prime(r)?;
    if !(t0.abs() <= rp && t1.abs() <= rp) {
        return Err(Error::ConstructionRefused("-r'(r) <= t0, t1 <= r'(r)"));
    }
    let cc = comparison_constant(c)?;
    if !(a >= offset + cc.d * half_width) {
        return Err(Error::ConstructionRefused("a >= M + D(c)*R"));
    }
    if !(b >= a) {
        return Err(Error::ConstructionRefused("b >= a"));
    }
    let gamma = build_gamma_unchecked(spec)?;
    let allowed = 2.0 * half_width / (c * PI) * gamma.span;
    // `b − a` carries the rounding of `b` itself when the offset is large.
    let rounding = 4.0 * f64::EPSILON * b.abs();
    if !(b - a <= allowed * (1.0 + EQUALITY_SLACK) + rounding) {
        return Err(Error::ConstructionRefused("b - a <= 2R/(c*pi) * k_{D_r}(t0, t1)"));
    }
    for i in 0..=IMAGE_CHECK_POINTS {
        let p = gamma.point(i as f64 / IMAGE_CHECK_POINTS as f64);
        if !(p.z.re.abs() < r && p.w.re > offset) {
            return Err(Error::ConstructionRefused("image inside D_r x S_{R,M}"));
        }
    }
    Ok(gamma)
}

/// Same curve without the hypotheses on `a`, `b` and `c`; only the
/// formula's own requirements (`t₀ ≠ t₁` inside `𝔻_r`, `R > 0`) are checked.
pub fn build_gamma_unchecked(spec: GammaSpec) -> Result<QuasiGeodesic> {
    if spec.t0 == spec.t1 {
        return Err(Error::ConstructionRefused("t0 != t1"));
    }
    if !(spec.half_width > 0.0) {
        return Err(Error::Range { parameter: "R", value: spec.half_width });
    }
    let span = dist_disc(spec.r, c64(spec.t0, 0.0), c64(spec.t1, 0.0))?;
    Ok(QuasiGeodesic { spec, constants: (2.0, 0.0), span })
}

/// `min_u (κ_{𝔻_r}(γ₁; γ₁') − κ_{S_{R,M}}(γ₂; γ₂'))` on `points` equally
/// spaced parameters.
pub fn max_condition_check(gamma: &QuasiGeodesic, points: usize) -> Result<f64> {
    let GammaSpec { r, half_width, offset, .. } = gamma.spec;
    let n = points.max(2);
    let mut worst = f64::INFINITY;
    for i in 0..n {
        let t = i as f64 / (n - 1) as f64;
        let (v1, v2) = gamma.velocity(t);
        let disc = metric_disc(r, c64(gamma.first(t), 0.0), c64(v1, 0.0))?;
        let strip = metric_halfstrip(half_width, offset, c64(gamma.second(t), 0.0), c64(v2, 0.0))?;
        worst = worst.min(disc - strip);
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuasiGeodesicCheck {
    /// `min (k − (|ΔS|/A − B))` over grid pairs.
    pub lower_slack: f64,
    /// `min (A|ΔS| + B − k)` over grid pairs.
    pub upper_slack: f64,
    /// Hyperbolic length of the whole curve.
    pub length: f64,
    /// Accumulated quadrature error estimate.
    pub quadrature_error: f64,
}

impl QuasiGeodesicCheck {
    pub fn holds(&self) -> bool {
        self.lower_slack >= 0.0 && self.upper_slack >= 0.0
    }
}

/// Checks the two quasi-geodesic inequalities on all pairs of a
/// `grid`-point parameter grid, with `S` the hyperbolic arclength of `curve`
/// in `domain`.
pub fn verify_quasi_geodesic<C, D>(
    curve: &C,
    constants: (f64, f64),
    domain: &D,
    grid: usize,
    tol: f64,
) -> Result<QuasiGeodesicCheck>
where
    C: Curve,
    D: KobayashiDomain<Point = C::Point>,
{
    let (a_const, b_const) = constants;
    if !(a_const >= 1.0 && b_const >= 0.0) {
        return Err(Error::Input("quasi-geodesic constants need A >= 1, B >= 0"));
    }
    let n = grid.max(2);
    let (lo, hi) = curve.interval();
    let params: Vec<f64> = (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect();
    let mut arclength = Vec::with_capacity(n);
    arclength.push(0.0);
    let mut quadrature_error = 0.0;
    for w in params.windows(2) {
        let q = crate::metrics::hyperbolic_length(curve, domain, (w[0], w[1]), tol / n as f64)?;
        quadrature_error += q.error;
        arclength.push(arclength.last().copied().unwrap_or(0.0) + q.value);
    }
    let points: Vec<C::Point> = params.iter().map(|&t| curve.point(t)).collect();
    let mut lower_slack = f64::INFINITY;
    let mut upper_slack = f64::INFINITY;
    for i in 0..n {
        for j in i + 1..n {
            let k = domain.distance(points[i], points[j])?;
            let gap = arclength[j] - arclength[i];
            lower_slack = lower_slack.min(k - (gap / a_const - b_const));
            upper_slack = upper_slack.min(a_const * gap + b_const - k);
        }
    }
    Ok(QuasiGeodesicCheck { lower_slack, upper_slack, length: arclength[n - 1], quadrature_error })
}

/// Inputs of the triangle construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleSpec {
    pub r: f64,
    pub half_width: f64,
    pub offset: f64,
    pub c: f64,
    pub s0: f64,
}

impl TriangleSpec {
    /// `c = 2`, `s₀ = tanh 1`, `R = 1`, `M = 0`.
    pub fn flagship(r: f64) -> Self {
        TriangleSpec { r, half_width: 1.0, offset: 0.0, c: 2.0, s0: libm::tanh(1.0) }
    }
}

/// The triangle with base `(±r', a)` and apex `(0, b)`, where `a = M + D·R`
/// and `b − a = (2R/(cπ))·k_{𝔻_r}(0, r')`.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleReport {
    pub spec: TriangleSpec,
    pub r_prime: f64,
    pub d: f64,
    pub a: f64,
    pub b: f64,
    /// From `(−r', a)` to `(0, b)`.
    pub gamma_minus: QuasiGeodesic,
    /// From `(r', a)` to `(0, b)`.
    pub gamma_plus: QuasiGeodesic,
    /// Horizontal base from `(−r', a)` to `(r', a)`.
    pub alpha: QuasiGeodesic,
    /// The point of `γ⁻` over `−s₀`.
    pub q: Point2,
    pub lower_bound: f64,
    pub g_estimate: Option<SlimnessEstimate>,
}

pub fn build_triangle(spec: TriangleSpec) -> Result<TriangleReport> {
    let TriangleSpec { r, half_width, offset, c, s0 } = spec;
    let cc = comparison_constant(c)?;
    if !(r > 0.5 && r < 1.0) {
        return Err(Error::ConstructionRefused("1/2 < r < 1"));
    }
    let rp = r_prime(r)?;
    if !(s0 >= 0.0 && s0 < rp) {
        return Err(Error::Configuration("s0 must satisfy 0 <= s0 < r'(r)"));
    }
    let a = offset + cc.d * half_width;
    let span = dist_disc(r, c64(0.0, 0.0), c64(rp, 0.0))?;
    let b = a + 2.0 * half_width / (c * PI) * span;
    let side = |t0: f64, t1: f64, top: f64| build_gamma(GammaSpec { r, half_width, offset, t0, t1, a, b: top }, c);
    let gamma_minus = side(-rp, 0.0, b)?;
    let gamma_plus = side(rp, 0.0, b)?;
    let alpha = side(-rp, rp, a)?;
    let climb = dist_disc(r, c64(-rp, 0.0), c64(-s0, 0.0))? / dist_disc(r, c64(-rp, 0.0), c64(0.0, 0.0))?;
    let q = Point2::real(-s0, (b - a) * climb + a);
    let mut report = TriangleReport {
        spec,
        r_prime: rp,
        d: cc.d,
        a,
        b,
        gamma_minus,
        gamma_plus,
        alpha,
        q,
        lower_bound: 0.0,
        g_estimate: None,
    };
    report.lower_bound = slimness_lower_bound(&report)?;
    Ok(report)
}

/// `½·log(((b − a)/a)·k_{𝔻_r}(r', s₀)/k_{𝔻_r}(r', 0) + 1)`, a lower bound for
/// the distance from `q` to the base `α` in any ambient inside `𝔻 × ℍ`.
pub fn slimness_lower_bound(tr: &TriangleReport) -> Result<f64> {
    let r = tr.spec.r;
    let ratio =
        dist_disc(r, c64(tr.r_prime, 0.0), c64(tr.spec.s0, 0.0))? / dist_disc(r, c64(tr.r_prime, 0.0), c64(0.0, 0.0))?;
    Ok(0.5 * libm::log1p((tr.b - tr.a) / tr.a * ratio))
}

/// The same bound after substituting the construction's `a`, `b`:
/// `½·log(1 + (2/(cπD))·k_{𝔻_r}(r', s₀))`, valid when `M = 0`.
pub fn flagship_lower_bound(r: f64, c: f64, s0: f64) -> Result<f64> {
    let d = comparison_constant(c)?.d;
    let k = dist_disc(r, c64(r_prime(r)?, 0.0), c64(s0, 0.0))?;
    Ok(0.5 * libm::log1p(2.0 / (c * PI * d) * k))
}

/// Default number of samples per side.
pub const SIDE_SAMPLES: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlimnessEstimate {
    /// Max over sampled points of a side of the min distance to the samples
    /// of the other two sides.
    pub g: f64,
    /// Largest distance between consecutive samples on a side; the true
    /// slimness is at least `g − grid_error`.
    pub grid_error: f64,
}

/// `n` points spaced evenly in disc distance along the side.
pub fn side_samples(curve: &QuasiGeodesic, n: usize) -> Vec<Point2> {
    let n = n.max(2);
    (0..n).map(|i| curve.point_at_fraction(i as f64 / (n - 1) as f64)).collect()
}

/// Sampled slimness of the triangle in `domain`; `q` is inserted, in
/// order, among the samples of `γ⁻`.
pub fn slimness_estimate<D>(tr: &TriangleReport, domain: &D, per_side: usize) -> Result<SlimnessEstimate>
where
    D: KobayashiDomain<Point = Point2>,
{
    let mut minus = side_samples(&tr.gamma_minus, per_side);
    let at = minus.partition_point(|p| p.z.re < tr.q.z.re);
    minus.insert(at, tr.q);
    let sides = [minus, side_samples(&tr.gamma_plus, per_side), side_samples(&tr.alpha, per_side)];
    slimness_of_sides(&sides, domain)
}

/// Sampled slimness of three point sequences (each ordered along its side).
pub fn slimness_of_sides<D>(sides: &[Vec<Point2>; 3], domain: &D) -> Result<SlimnessEstimate>
where
    D: KobayashiDomain<Point = Point2>,
{
    let mut g: f64 = 0.0;
    let mut grid_error: f64 = 0.0;
    for (i, side) in sides.iter().enumerate() {
        for w in side.windows(2) {
            grid_error = grid_error.max(domain.distance(w[0], w[1])?);
        }
        for &p in side {
            let mut nearest = f64::INFINITY;
            for (j, other) in sides.iter().enumerate() {
                if i == j {
                    continue;
                }
                for &q in other {
                    nearest = nearest.min(domain.distance(p, q)?);
                }
            }
            g = g.max(nearest);
        }
    }
    Ok(SlimnessEstimate { g, grid_error })
}

impl TriangleReport {
    /// Runs [`slimness_estimate`] and keeps the result in the report.
    pub fn estimate_slimness<D>(&mut self, domain: &D, per_side: usize) -> Result<SlimnessEstimate>
    where
        D: KobayashiDomain<Point = Point2>,
    {
        let estimate = slimness_estimate(self, domain, per_side)?;
        self.g_estimate = Some(estimate);
        Ok(estimate)
    }

    pub fn vertices(&self) -> [Point2; 3] {
        [self.alpha.start(), self.alpha.end(), self.gamma_minus.end()]
    }
}

/// Max over 4-tuples of half the gap between the largest and the middle of
/// the three pair sums `d(x,y) + d(z,w)`.
pub fn four_point_delta<D: KobayashiDomain>(points: &[D::Point], domain: &D) -> Result<f64> {
    let n = points.len();
    if n < 4 {
        return Err(Error::Input("four-point delta needs at least 4 points"));
    }
    let mut dist = alloc::vec![0.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let d = domain.distance(points[i], points[j])?;
            dist[i * n + j] = d;
            dist[j * n + i] = d;
        }
    }
    let d = |i: usize, j: usize| dist[i * n + j];
    let mut delta: f64 = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    let mut sums = [d(i, j) + d(k, l), d(i, k) + d(j, l), d(i, l) + d(j, k)];
                    sums.sort_by(f64::total_cmp);
                    delta = delta.max(0.5 * (sums[2] - sums[1]));
                }
            }
        }
    }
    Ok(delta)
}
