//! Kobayashi–Royden metrics and Kobayashi distances of the model domains.
//!
//! Normalisation: the disc carries `κ_𝔻(z; v) = |v| / (1 − |z|²)`, so that
//! `k_𝔻(0, t) = atanh t` and `k_ℍ(a, b) = ½·|log(b/a)|` for real `a, b > 0`.
//! The strip and half-strip metrics are push-forwards of the half-plane
//! metric through explicit conformal maps, so all values here are closed
//! forms; only [`hyperbolic_length`] integrates.

use core::f64::consts::{FRAC_PI_2, PI};
use core::ops::{Add, Mul, Sub};

use crate::domains::SectorMap;
use crate::quadrature::{adaptive_simpson, Quadrature};
use crate::{Error, Point2, Result, C64};

/// Points whose (scaled) distance to the boundary of a disc or the ball is
/// below this are rejected rather than evaluated.
pub const BOUNDARY_MARGIN: f64 = 1e-14;

/// Below this pseudo-distance `atanh` is evaluated directly; above it the
/// log form built from `1 − |a|²`, `1 − |b|²` avoids cancellation.
const ATANH_SWITCH: f64 = 0.5;

fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 && r <= 1.0 {
        Ok(())
    } else {
        Err(Error::Range { parameter: "disc radius", value: r })
    }
}

fn check_half_width(half_width: f64) -> Result<()> {
    if half_width > 0.0 && half_width.is_finite() {
        Ok(())
    } else {
        Err(Error::Range { parameter: "strip half-width", value: half_width })
    }
}

fn check_offset(offset: f64) -> Result<()> {
    if offset >= 0.0 && offset.is_finite() {
        Ok(())
    } else {
        Err(Error::Range { parameter: "half-strip offset", value: offset })
    }
}

/// `1 − |z|²` for `z` in the unit disc, or an error near the boundary.
fn unit_gap(z: C64, domain: &'static str) -> Result<f64> {
    let m = z.norm();
    if !m.is_finite() || m >= 1.0 - BOUNDARY_MARGIN {
        return Err(Error::DomainViolation { domain });
    }
    Ok((1.0 - m) * (1.0 + m))
}

/// `atanh ρ` where `ρ = num / den` and `den² − num² = gap_product`.
fn atanh_of_ratio(num: f64, den: f64, gap_product: f64) -> f64 {
    let rho = num / den;
    if rho < ATANH_SWITCH {
        libm::atanh(rho)
    } else {
        libm::log(den + num) - 0.5 * libm::log(gap_product)
    }
}

/// `κ_{𝔻_r}(z; v) = r|v| / (r² − |z|²)`.
pub fn metric_disc(r: f64, z: C64, v: C64) -> Result<f64> {
    check_radius(r)?;
    let zs = z / r;
    let gap = unit_gap(zs, "disc")?;
    Ok(v.norm() / (r * gap))
}

/// Kobayashi distance of `𝔻_r`.
pub fn dist_disc(r: f64, a: C64, b: C64) -> Result<f64> {
    check_radius(r)?;
    let (a, b) = (a / r, b / r);
    let ga = unit_gap(a, "disc")?;
    let gb = unit_gap(b, "disc")?;
    let num = (a - b).norm();
    let den = (C64::new(1.0, 0.0) - a.conj() * b).norm();
    Ok(atanh_of_ratio(num, den, ga * gb))
}

fn check_half_plane(z: C64) -> Result<()> {
    if z.re > 0.0 && z.is_finite() {
        Ok(())
    } else {
        Err(Error::DomainViolation { domain: "right half-plane" })
    }
}

/// `κ_ℍ(z; v) = |v| / (2 Re z)`.
pub fn metric_halfplane(z: C64, v: C64) -> Result<f64> {
    check_half_plane(z)?;
    Ok(v.norm() / (2.0 * z.re))
}

/// Kobayashi distance of the right half-plane, `atanh |(a − b)/(a + b̄)|`.
pub fn dist_halfplane(a: C64, b: C64) -> Result<f64> {
    check_half_plane(a)?;
    check_half_plane(b)?;
    let num = (a - b).norm();
    let den = (a + b.conj()).norm();
    Ok(atanh_of_ratio(num, den, 4.0 * a.re * b.re))
}

fn check_strip(half_width: f64, z: C64) -> Result<()> {
    check_half_width(half_width)?;
    if z.is_finite() && z.im.abs() < half_width {
        Ok(())
    } else {
        Err(Error::DomainViolation { domain: "strip" })
    }
}

/// Metric of `S_R = {|Im w| < R}` pulled back through `w ↦ exp(πw/(2R))`:
/// `(π/(4R))·|v| / cos(π Im z / (2R))`.
pub fn metric_strip(half_width: f64, z: C64, v: C64) -> Result<f64> {
    check_strip(half_width, z)?;
    let angle = FRAC_PI_2 * z.im / half_width;
    Ok(PI / (4.0 * half_width) * v.norm() / libm::cos(angle))
}

pub fn dist_strip(half_width: f64, a: C64, b: C64) -> Result<f64> {
    check_strip(half_width, a)?;
    check_strip(half_width, b)?;
    let scale = FRAC_PI_2 / half_width;
    let lift = |z: C64| (C64::from_polar(1.0, z.im * scale), z.re * scale);
    Ok(dist_halfplane_scaled(lift(a), lift(b)))
}

/// `k_ℍ(e^{s}·A, e^{t}·B)` for `(A, s)`, `(B, t)` with `Re A, Re B > 0`,
/// without forming the possibly overflowing products.
fn dist_halfplane_scaled(a: (C64, f64), b: (C64, f64)) -> f64 {
    let ((lo, s), (hi, t)) = if a.1 <= b.1 { (a, b) } else { (b, a) };
    let gap = t - s;
    let lo = lo * libm::exp(-gap);
    let num = (lo - hi).norm();
    let den = (lo + hi.conj()).norm();
    if num < ATANH_SWITCH * den {
        libm::atanh(num / den)
    } else {
        libm::log(den + num) + 0.5 * gap - 0.5 * libm::log(4.0 * a.0.re * b.0.re)
    }
}

fn check_half_strip(half_width: f64, offset: f64, z: C64) -> Result<()> {
    check_half_width(half_width)?;
    check_offset(offset)?;
    if z.is_finite() && z.im.abs() < half_width && z.re > offset {
        Ok(())
    } else {
        Err(Error::DomainViolation { domain: "half-strip" })
    }
}

/// Metric of `S_{R,M} = {|Im w| < R, Re w > M}` through the conformal map
/// `w ↦ sinh(π(w − M)/(2R))` onto ℍ.
///
/// With `u = x + iy = π(w − M)/(2R)` this is
/// `(π/(4R))·|v|·√(sinh²x + cos²y) / (sinh x · cos y)`; on the real axis it
/// reduces to `(π/(4R))·coth(x)·|v|`.
pub fn metric_halfstrip(half_width: f64, offset: f64, z: C64, v: C64) -> Result<f64> {
    check_half_strip(half_width, offset, z)?;
    let x = FRAC_PI_2 * (z.re - offset) / half_width;
    let y = FRAC_PI_2 * z.im / half_width;
    let cy = libm::cos(y);
    let sx = libm::sinh(x);
    let ratio = libm::sqrt(1.0 + (cy / sx) * (cy / sx));
    Ok(PI / (4.0 * half_width) * v.norm() * ratio / cy)
}

pub fn dist_halfstrip(half_width: f64, offset: f64, a: C64, b: C64) -> Result<f64> {
    check_half_strip(half_width, offset, a)?;
    check_half_strip(half_width, offset, b)?;
    let scale = FRAC_PI_2 / half_width;
    // sinh(x + iy)·e^{-x} = ½(e^{iy} − e^{-2x}e^{-iy}), scale x.
    let lift = |z: C64| {
        let x = (z.re - offset) * scale;
        let y = z.im * scale;
        let decay = libm::exp(-2.0 * x);
        let re = -0.5 * libm::cos(y) * libm::expm1(-2.0 * x);
        (C64::new(re, 0.5 * libm::sin(y) * (1.0 + decay)), x)
    };
    Ok(dist_halfplane_scaled(lift(a), lift(b)))
}

/// Kobayashi–Royden metric of `𝔹²`:
/// `√(|v|²/(1−|p|²) + |⟨v,p⟩|²/(1−|p|²)²)`.
pub fn metric_ball(p: Point2, v: Point2) -> Result<f64> {
    let gap = ball_gap(p)?;
    let radial = v.inner(&p).norm();
    Ok(libm::sqrt(v.norm_sqr() / gap + (radial / gap) * (radial / gap)))
}

fn ball_gap(p: Point2) -> Result<f64> {
    let m = p.norm();
    if !m.is_finite() || m >= 1.0 - BOUNDARY_MARGIN {
        return Err(Error::DomainViolation { domain: "ball" });
    }
    Ok((1.0 - m) * (1.0 + m))
}

/// Kobayashi distance of `𝔹²`,
/// `atanh √(1 − (1−‖p‖²)(1−‖q‖²)/|1−⟨p,q⟩|²)`.
///
/// The numerator `|1−⟨p,q⟩|² − (1−‖p‖²)(1−‖q‖²)` is evaluated as
/// `‖q−p‖² − |p₁(q₂−p₂) − p₂(q₁−p₁)|²`, which keeps full relative accuracy
/// for nearby points.
pub fn dist_ball(p: Point2, q: Point2) -> Result<f64> {
    let gp = ball_gap(p)?;
    let gq = ball_gap(q)?;
    let d = q - p;
    let cross = p.z * d.w - p.w * d.z;
    let num_sq = (d.norm_sqr() - cross.norm_sqr()).max(0.0);
    let den = (C64::new(1.0, 0.0) - p.inner(&q)).norm();
    Ok(atanh_of_ratio(libm::sqrt(num_sq), den, gp * gq))
}

/// Distance (or infinitesimal metric) of a product: the max of the factors.
pub fn dist_product(left: f64, right: f64) -> Result<f64> {
    if !(left >= 0.0 && right >= 0.0) {
        return Err(Error::Contract("product components must be nonnegative"));
    }
    Ok(left.max(right))
}

/// `k_{Ω_h}(p, q) = k_{𝔹²}(ψ_h(p), ψ_h(q))`.
pub fn dist_pullback(h: SectorMap, p: Point2, q: Point2) -> Result<f64> {
    if !h.contains(p) || !h.contains(q) {
        return Err(Error::DomainViolation { domain: "Ω_h" });
    }
    dist_ball(h.pull_back(p)?, h.pull_back(q)?)
}

/// A domain carrying a Kobayashi–Royden metric and distance.
pub trait KobayashiDomain {
    type Point: Copy;

    fn contains(&self, p: Self::Point) -> bool;

    fn metric(&self, p: Self::Point, v: Self::Point) -> Result<f64>;

    fn distance(&self, a: Self::Point, b: Self::Point) -> Result<f64>;
}

/// Planar model domains.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PlanarDomain {
    Disc { radius: f64 },
    HalfPlane,
    Strip { half_width: f64 },
    HalfStrip { half_width: f64, offset: f64 },
}

impl PlanarDomain {
    pub fn disc(radius: f64) -> Result<Self> {
        check_radius(radius)?;
        Ok(PlanarDomain::Disc { radius })
    }

    pub fn strip(half_width: f64) -> Result<Self> {
        check_half_width(half_width)?;
        Ok(PlanarDomain::Strip { half_width })
    }

    pub fn half_strip(half_width: f64, offset: f64) -> Result<Self> {
        check_half_width(half_width)?;
        check_offset(offset)?;
        Ok(PlanarDomain::HalfStrip { half_width, offset })
    }
}

impl KobayashiDomain for PlanarDomain {
    type Point = C64;

    fn contains(&self, p: C64) -> bool {
        if !p.is_finite() {
            return false;
        }
        match *self {
            PlanarDomain::Disc { radius } => p.norm() < radius * (1.0 - BOUNDARY_MARGIN),
            PlanarDomain::HalfPlane => p.re > 0.0,
            PlanarDomain::Strip { half_width } => p.im.abs() < half_width,
            PlanarDomain::HalfStrip { half_width, offset } => p.im.abs() < half_width && p.re > offset,
        }
    }

    fn metric(&self, p: C64, v: C64) -> Result<f64> {
        match *self {
            PlanarDomain::Disc { radius } => metric_disc(radius, p, v),
            PlanarDomain::HalfPlane => metric_halfplane(p, v),
            PlanarDomain::Strip { half_width } => metric_strip(half_width, p, v),
            PlanarDomain::HalfStrip { half_width, offset } => metric_halfstrip(half_width, offset, p, v),
        }
    }

    fn distance(&self, a: C64, b: C64) -> Result<f64> {
        match *self {
            PlanarDomain::Disc { radius } => dist_disc(radius, a, b),
            PlanarDomain::HalfPlane => dist_halfplane(a, b),
            PlanarDomain::Strip { half_width } => dist_strip(half_width, a, b),
            PlanarDomain::HalfStrip { half_width, offset } => dist_halfstrip(half_width, offset, a, b),
        }
    }
}

/// Domains of `ℂ²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    Product(PlanarDomain, PlanarDomain),
    Ball,
    /// `Ω_h = φ_h(𝔹²)` with the metric transported from the ball.
    Pullback(SectorMap),
}

impl Domain {
    /// `𝔻 × ℍ`.
    pub const BIDISC: Domain = Domain::Product(PlanarDomain::Disc { radius: 1.0 }, PlanarDomain::HalfPlane);

    /// `Ω = φ(𝔹²)`.
    pub const OMEGA: Domain = Domain::Pullback(SectorMap::CAYLEY);
}

impl KobayashiDomain for Domain {
    type Point = Point2;

    fn contains(&self, p: Point2) -> bool {
        match *self {
            Domain::Product(l, r) => l.contains(p.z) && r.contains(p.w),
            Domain::Ball => p.is_finite() && p.norm() < 1.0 - BOUNDARY_MARGIN,
            Domain::Pullback(h) => h.contains(p),
        }
    }

    fn metric(&self, p: Point2, v: Point2) -> Result<f64> {
        match *self {
            Domain::Product(l, r) => dist_product(l.metric(p.z, v.z)?, r.metric(p.w, v.w)?),
            Domain::Ball => metric_ball(p, v),
            Domain::Pullback(h) => {
                if !h.contains(p) {
                    return Err(Error::DomainViolation { domain: "Ω_h" });
                }
                let (q, dq) = h.pull_back_tangent(p, v)?;
                metric_ball(q, dq)
            }
        }
    }

    fn distance(&self, a: Point2, b: Point2) -> Result<f64> {
        match *self {
            Domain::Product(l, r) => dist_product(l.distance(a.z, b.z)?, r.distance(a.w, b.w)?),
            Domain::Ball => dist_ball(a, b),
            Domain::Pullback(h) => dist_pullback(h, a, b),
        }
    }
}

/// Point or tangent type of a [`Curve`].
pub trait Tangent: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn magnitude(&self) -> f64;
}

impl Tangent for C64 {
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

impl Tangent for Point2 {
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

/// A parametrised curve with an analytic derivative.
pub trait Curve {
    type Point: Tangent;

    fn interval(&self) -> (f64, f64);

    fn point(&self, t: f64) -> Self::Point;

    fn tangent(&self, t: f64) -> Self::Point;
}

impl<C: Curve + ?Sized> Curve for &C {
    type Point = C::Point;

    fn interval(&self) -> (f64, f64) {
        (**self).interval()
    }

    fn point(&self, t: f64) -> Self::Point {
        (**self).point(t)
    }

    fn tangent(&self, t: f64) -> Self::Point {
        (**self).tangent(t)
    }
}

/// Straight segment `t ↦ start + t·(end − start)` on `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment<P> {
    pub start: P,
    pub end: P,
}

impl<P: Tangent> Curve for Segment<P> {
    type Point = P;

    fn interval(&self) -> (f64, f64) {
        (0.0, 1.0)
    }

    fn point(&self, t: f64) -> P {
        self.start + (self.end - self.start) * t
    }

    fn tangent(&self, _t: f64) -> P {
        self.end - self.start
    }
}

/// Largest relative disagreement between `tangent` and a centred finite
/// difference at `samples` interior points.
pub fn derivative_defect<C: Curve>(curve: &C, samples: usize) -> f64 {
    let (a, b) = curve.interval();
    let span = b - a;
    let h = 1e-6 * span;
    let mut worst: f64 = 0.0;
    for i in 1..=samples {
        let t = a + span * (i as f64) / (samples as f64 + 1.0);
        let fd = (curve.point(t + h) - curve.point(t - h)) * (0.5 / h);
        let exact = curve.tangent(t);
        let scale = exact.magnitude().max(1e-300);
        worst = worst.max((fd - exact).magnitude() / scale);
    }
    worst
}

/// `∫_s^t κ(γ(u); γ'(u)) du` over the sub-interval `[s, t]` by adaptive Simpson.
pub fn hyperbolic_length<D, C>(curve: &C, domain: &D, interval: (f64, f64), tol: f64) -> Result<Quadrature>
where
    D: KobayashiDomain,
    C: Curve<Point = D::Point>,
{
    let (lo, hi) = curve.interval();
    let (s, t) = interval;
    if s < lo || t > hi || s > t {
        return Err(Error::Contract("length sub-interval outside the curve parameter range"));
    }
    adaptive_simpson(|u| domain.metric(curve.point(u), curve.tangent(u)), s, t, tol)
}
