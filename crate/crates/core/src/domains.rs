//! The explicit domains: `Ω`, `Ω̃ = Φ(Ω)`, the family `Ω_h`, sector sets
//! `V_{C,M}`, and the inscribed-product computations around them.
//!
//! Inclusion statements such as `𝔻_r × S_{R,M} ⊂ Ω` are certified by
//! boundary sampling ([`InclusionCertificate`]); they are sampled checks,
//! not proofs.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, SQRT_2};

use crate::metrics::{dist_disc, dist_halfplane};
use crate::{c64, Error, Point2, Result, C64};

const ONE: C64 = c64(1.0, 0.0);

/// `(ζ, y) ∈ Ω` iff `Re y > 0` and `|ζ|² < Re y / |1 + y|`.
pub fn contains_omega(zeta: C64, y: C64) -> bool {
    y.re > 0.0 && zeta.norm_sqr() * (ONE + y).norm() < y.re
}

/// Signed slack `Re y/|1+y| − |ζ|²`; positive inside `Ω` (for `Re y > 0`).
pub fn omega_margin(zeta: C64, y: C64) -> f64 {
    y.re / (ONE + y).norm() - zeta.norm_sqr()
}

/// `(ζ, y) ∈ Ω̃` iff `|y|² + 2|ζ|²|1 − y| < 1`.
pub fn contains_tilde_omega(zeta: C64, y: C64) -> bool {
    y.norm_sqr() + 2.0 * zeta.norm_sqr() * (ONE - y).norm() < 1.0
}

/// `Φ(z, w) = (z, (w − 1)/(w + 1))`, from `𝔻 × ℍ` to `𝔻 × 𝔻`.
pub fn to_polydisc(p: Point2) -> Result<Point2> {
    if p.w == -ONE {
        return Err(Error::BranchCut { map: "Φ" });
    }
    Ok(Point2::new(p.z, (p.w - ONE) / (p.w + ONE)))
}

/// `Φ⁻¹(z, y) = (z, (1 + y)/(1 − y))`.
pub fn from_polydisc(p: Point2) -> Result<Point2> {
    if p.w == ONE {
        return Err(Error::BranchCut { map: "Φ⁻¹" });
    }
    Ok(Point2::new(p.z, (ONE + p.w) / (ONE - p.w)))
}

/// The Riemann map `h_β(z) = ((1 + z)/(1 − z))^β` onto the symmetric sector
/// `{|arg y| < βπ/2}`, for `β ∈ (0, 1]`.
///
/// `β = 1` is the Cayley transform, for which `Ω_h = Ω`. In half-plane
/// coordinates `ĥ = h ∘ 𝒞⁻¹` is simply `x ↦ x^β`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorMap {
    beta: f64,
}

impl SectorMap {
    pub const CAYLEY: SectorMap = SectorMap { beta: 1.0 };

    pub fn new(beta: f64) -> Result<Self> {
        if beta > 0.0 && beta <= 1.0 {
            Ok(SectorMap { beta })
        } else {
            Err(Error::Range { parameter: "β", value: beta })
        }
    }

    pub fn beta(self) -> f64 {
        self.beta
    }

    fn is_cayley(self) -> bool {
        self.beta == 1.0
    }

    /// Half-opening `βπ/2` of the image sector.
    pub fn half_angle(self) -> f64 {
        self.beta * FRAC_PI_2
    }

    /// Membership of `y` in `h(𝔻)`.
    pub fn in_image(self, y: C64) -> bool {
        if !y.is_finite() {
            return false;
        }
        if self.is_cayley() {
            y.re > 0.0
        } else {
            y != c64(0.0, 0.0) && y.arg().abs() < self.half_angle()
        }
    }

    pub fn apply(self, z: C64) -> Result<C64> {
        if !(z.norm() < 1.0) {
            return Err(Error::DomainViolation { domain: "disc" });
        }
        let c = (ONE + z) / (ONE - z);
        Ok(if self.is_cayley() { c } else { c.powf(self.beta) })
    }

    /// `ĥ⁻¹(y) = y^{1/β}` (principal branch) for `y ∈ h(𝔻)`.
    pub fn half_plane_inverse(self, y: C64) -> Result<C64> {
        if !self.in_image(y) {
            return Err(Error::DomainViolation { domain: "h(𝔻)" });
        }
        Ok(if self.is_cayley() { y } else { y.powf(1.0 / self.beta) })
    }

    /// `h⁻¹(y) = (y^{1/β} − 1)/(y^{1/β} + 1)`.
    pub fn inverse(self, y: C64) -> Result<C64> {
        let u = self.half_plane_inverse(y)?;
        Ok((u - ONE) / (u + ONE))
    }

    /// Membership in `Ω_h`: `y ∈ h(𝔻)` and
    /// `|h⁻¹(y)|² + 2|ζ|²|1 − h⁻¹(y)| < 1`. Points with `y ∉ h(𝔻)` are
    /// simply outside.
    ///
    /// With `u = ĥ⁻¹(y)` the inequality is `|ζ|²·|1 + u| < Re u`, which is
    /// evaluated as `|ζ|²·|1 + 1/u| < cos(arg u)` once `|u| ≥ 1`; `h⁻¹(y)`
    /// itself rounds to 1 far out in the sector.
    pub fn contains(self, p: Point2) -> bool {
        if !p.z.is_finite() || !self.in_image(p.w) {
            return false;
        }
        let zeta2 = p.z.norm_sqr();
        if p.w.norm() <= 1.0 {
            let u = if self.is_cayley() { p.w } else { p.w.powf(1.0 / self.beta) };
            zeta2 * (ONE + u).norm() < u.re
        } else {
            let inv = if self.is_cayley() { p.w.inv() } else { p.w.powf(-1.0 / self.beta) };
            zeta2 * (ONE + inv).norm() < libm::cos(p.w.arg() / self.beta)
        }
    }

    /// `φ_h(z, w) = (w / (√2·√(1 − z)), h(z))`, defined on `𝔻 × ℂ`.
    pub fn embed(self, p: Point2) -> Result<Point2> {
        let gap = ONE - p.z;
        if !(gap.re > 0.0) {
            return Err(Error::BranchCut { map: "φ_h" });
        }
        let zeta = p.w / (gap.sqrt() * SQRT_2);
        Ok(Point2::new(zeta, self.apply(p.z)?))
    }

    /// `ψ_h = φ_h⁻¹`, `ψ_h(ζ, y) = (h⁻¹(y), 2ζ/√(1 + ĥ⁻¹(y)))`; for `β = 1`
    /// this is `((y − 1)/(y + 1), 2ζ/√(1 + y))`.
    pub fn pull_back(self, q: Point2) -> Result<Point2> {
        let u = self.half_plane_inverse(q.w)?;
        let one_u = ONE + u;
        if !(one_u.re > 0.0) {
            return Err(Error::BranchCut { map: "ψ_h" });
        }
        Ok(Point2::new((u - ONE) / one_u, q.z * 2.0 / one_u.sqrt()))
    }

    /// `ψ_h(q)` together with the push-forward `dψ_h(q)·v`.
    pub fn pull_back_tangent(self, q: Point2, v: Point2) -> Result<(Point2, Point2)> {
        let u = self.half_plane_inverse(q.w)?;
        let one_u = ONE + u;
        if !(one_u.re > 0.0) {
            return Err(Error::BranchCut { map: "ψ_h" });
        }
        // du/dy = u/(βy); for β = 1 it is 1.
        let du = if self.is_cayley() { ONE } else { u / (q.w * self.beta) };
        let root = one_u.sqrt();
        let point = Point2::new((u - ONE) / one_u, q.z * 2.0 / root);
        let dz = v.w * du * 2.0 / (one_u * one_u);
        let dw = v.z * 2.0 / root - q.z * v.w * du / (one_u * root);
        Ok((point, Point2::new(dz, dw)))
    }
}

/// The angular set `V_{C,M} = {Re w > M, |Im w| < C·Re w}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorSet {
    pub slope: f64,
    pub offset: f64,
}

impl SectorSet {
    pub fn new(slope: f64, offset: f64) -> Result<Self> {
        if !(slope > 0.0) {
            return Err(Error::Range { parameter: "sector slope C", value: slope });
        }
        if !(offset >= 0.0) {
            return Err(Error::Range { parameter: "sector offset M", value: offset });
        }
        Ok(SectorSet { slope, offset })
    }

    pub fn contains(&self, w: C64) -> bool {
        w.re > self.offset && w.im.abs() < self.slope * w.re
    }
}

/// How densely a product boundary is sampled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundarySampling {
    /// Points on the circle `|ζ| = r(1 − 10⁻⁹)`.
    pub angles: usize,
    /// Points per boundary segment of the second factor.
    pub per_edge: usize,
}

impl Default for BoundarySampling {
    fn default() -> Self {
        BoundarySampling { angles: 8, per_edge: 1000 }
    }
}

/// Outcome of a sampled inclusion check. `witness` is a sampled point of
/// the product that fails membership.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InclusionCertificate {
    pub sampled_points: usize,
    pub witness: Option<Point2>,
}

impl InclusionCertificate {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// Sampled fibre radius, just inside the open disc `𝔻_r`.
const FIBRE_SHRINK: f64 = 1e-9;
/// Relative inward offset keeping samples inside the open second factor.
const EDGE_SHRINK: f64 = 1e-12;
/// Samples along unbounded edges reach `(1 + M)·10^6` past the corner.
const FAR_DECADES: f64 = 6.0;

fn certify<I, F>(radius: f64, sampling: BoundarySampling, fibre: I, member: F) -> InclusionCertificate
where
    I: Iterator<Item = C64> + Clone,
    F: Fn(Point2) -> bool,
{
    let rho = radius * (1.0 - FIBRE_SHRINK);
    let mut count = 0;
    for k in 0..sampling.angles.max(1) {
        let angle = core::f64::consts::TAU * k as f64 / sampling.angles.max(1) as f64;
        let zeta = C64::from_polar(rho, angle);
        for y in fibre.clone() {
            count += 1;
            let p = Point2::new(zeta, y);
            if !member(p) {
                return InclusionCertificate { sampled_points: count, witness: Some(p) };
            }
        }
    }
    InclusionCertificate { sampled_points: count, witness: None }
}

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> + Clone {
    let n = n.max(2);
    (0..n).map(move |j| lo + (hi - lo) * j as f64 / (n - 1) as f64)
}

fn far_edge(start: f64, scale: f64, n: usize) -> impl Iterator<Item = f64> + Clone {
    let n = n.max(2);
    (0..n).map(move |j| {
        let e = FAR_DECADES * j as f64 / (n - 1) as f64;
        start + scale * (libm::pow(10.0, e) - 1.0)
    })
}

/// Samples the boundary of `𝔻_r × S_{R,M}` against `member`.
pub fn certify_half_strip<F>(
    r: f64,
    half_width: f64,
    offset: f64,
    sampling: BoundarySampling,
    member: F,
) -> InclusionCertificate
where
    F: Fn(Point2) -> bool,
{
    let x0 = offset + EDGE_SHRINK * (1.0 + offset);
    let u0 = half_width * (1.0 - EDGE_SHRINK);
    let n = sampling.per_edge;
    let left = linspace(-u0, u0, n).map(move |u| c64(x0, u));
    let top = far_edge(x0, 1.0 + offset, n).map(move |x| c64(x, u0));
    let bottom = far_edge(x0, 1.0 + offset, n).map(move |x| c64(x, -u0));
    certify(r, sampling, left.chain(top).chain(bottom), member)
}

/// Samples the boundary of `𝔻_r × V_{C,M}` against `member`.
pub fn certify_sector<F>(r: f64, sector: SectorSet, sampling: BoundarySampling, member: F) -> InclusionCertificate
where
    F: Fn(Point2) -> bool,
{
    let x0 = sector.offset + EDGE_SHRINK * (1.0 + sector.offset);
    let c = sector.slope * (1.0 - EDGE_SHRINK);
    let n = sampling.per_edge;
    let left = linspace(-c * x0, c * x0, n).map(move |u| c64(x0, u));
    let top = far_edge(x0, 1.0 + sector.offset, n).map(move |x| c64(x, c * x));
    let bottom = far_edge(x0, 1.0 + sector.offset, n).map(move |x| c64(x, -c * x));
    certify(r, sampling, left.chain(top).chain(bottom), member)
}

fn check_open_unit(parameter: &'static str, r: f64) -> Result<()> {
    if r > 0.0 && r < 1.0 {
        Ok(())
    } else {
        Err(Error::Range { parameter, value: r })
    }
}

/// `Q(M) = M / √((1 + M)² + R²)`; `𝔻_r × S_{R,M} ⊂ Ω` iff `Q(M) ≥ r²`.
pub fn inscribed_ratio(offset: f64, half_width: f64) -> f64 {
    offset / libm::hypot(1.0 + offset, half_width)
}

/// Least `M ≥ 0` with `Q(M) ≥ r²`, by bisection. The returned value is the
/// upper end of the final bracket, so `Q(M) ≥ r²` holds for it.
pub fn minimal_offset(r: f64, half_width: f64) -> Result<f64> {
    check_open_unit("r", r)?;
    if !(half_width > 0.0 && half_width.is_finite()) {
        return Err(Error::Range { parameter: "R", value: half_width });
    }
    let target = r * r;
    let mut hi = 1.0;
    while inscribed_ratio(hi, half_width) < target {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    while hi - lo > 1e-12 * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if inscribed_ratio(mid, half_width) >= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// `σ(r) = √((1 − r⁴)/r⁴)`, the supremum of `R/M` over `𝔻_r × S_{R,M} ⊂ Ω`.
pub fn sigma_closed_form(r: f64) -> Result<f64> {
    check_open_unit("r", r)?;
    let r4 = r * r * r * r;
    Ok(libm::sqrt((1.0 - r4) / r4))
}

/// Supremum of `R/M` for the sector family: `tan(β·arccos r²)`.
///
/// For `y = M + iR` with `M → ∞` the membership ratio of `Ω_h` tends to
/// `cos(arg(y)/β)`, and the corner of the rectangle is the binding point.
/// At `β = 1` this equals [`sigma_closed_form`].
pub fn sigma_sector_family(h: SectorMap, r: f64) -> Result<f64> {
    check_open_unit("r", r)?;
    Ok(libm::tan(h.beta() * libm::acos(r * r)))
}

/// Offsets scanned by the brute-force σ search: `grid` points spread
/// log-uniformly over `[10⁻², 10⁶]`.
pub fn sigma_offset(i: usize, grid: usize) -> f64 {
    if grid < 2 {
        return 1e6;
    }
    libm::pow(10.0, -2.0 + 8.0 * i as f64 / (grid - 1) as f64)
}

/// Sampling used per rectangle by [`sigma_bruteforce`].
pub const SIGMA_SAMPLING: BoundarySampling = BoundarySampling { angles: 4, per_edge: 24 };

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SigmaSearch {
    Certified {
        ratio: f64,
        half_width: f64,
        offset: f64,
    },
    /// No rectangle on the grid passed the sampled check.
    NoCertificate,
}

impl SigmaSearch {
    pub fn ratio(&self) -> Option<f64> {
        match *self {
            SigmaSearch::Certified { ratio, .. } => Some(ratio),
            SigmaSearch::NoCertificate => None,
        }
    }
}

/// Brute-force `σ(r)` for `Ω`: for each offset `M_i`, `i < grid`, the widest
/// certified half-strip is found by bisection on `R` using only sampled
/// membership tests.
pub fn sigma_bruteforce(r: f64, grid: usize) -> Result<SigmaSearch> {
    sigma_bruteforce_with(r, grid, SIGMA_SAMPLING, |p| contains_omega(p.z, p.w))
}

pub fn sigma_bruteforce_with<F>(r: f64, grid: usize, sampling: BoundarySampling, member: F) -> Result<SigmaSearch>
where
    F: Fn(Point2) -> bool,
{
    check_open_unit("r", r)?;
    let fits = |w: f64, m: f64| certify_half_strip(r, w, m, sampling, &member).holds();
    let mut best = SigmaSearch::NoCertificate;
    let mut best_ratio = 0.0;
    for i in 0..grid {
        let m = sigma_offset(i, grid);
        let mut lo = 1e-9 * m;
        if !fits(lo, m) {
            continue;
        }
        let mut hi = m;
        let mut doublings = 0;
        while fits(hi, m) {
            lo = hi;
            hi *= 2.0;
            doublings += 1;
            if doublings > 60 {
                return Err(Error::Configuration("membership accepts unbounded strips"));
            }
        }
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if fits(mid, m) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let ratio = lo / m;
        if ratio > best_ratio {
            best_ratio = ratio;
            best = SigmaSearch::Certified { ratio, half_width: lo, offset: m };
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SectorFit {
    /// `𝔻_r × V_{C,M} ⊂ Ω` passed the sampled check at this offset.
    Fits { offset: f64, certificate: InclusionCertificate },
    /// No offset works; `witness` lies in `𝔻_r × V_{C,M}` for every
    /// `M < 10⁶` and outside `Ω`.
    Blocked { witness: Point2 },
}

/// Decides whether some `𝔻_r × V_{C,M}` fits in `Ω` (it does iff
/// `C < σ(r)`), returning the smallest certified offset on the grid
/// `M*·(1 + k/100)`, where `M* = 1/(√(1 + K) − 1)` and
/// `K = 1/r⁴ − 1 − C²` solves `K ≥ 1/t² + 2/t` for `t ≥ M*`.
pub fn sector_fits(r: f64, slope: f64, sampling: BoundarySampling) -> Result<SectorFit> {
    check_open_unit("r", r)?;
    if !(slope > 0.0) {
        return Err(Error::Range { parameter: "C", value: slope });
    }
    let sigma = sigma_closed_form(r)?;
    if slope >= sigma {
        let witness =
            sector_violation_witness(r, slope, 1e6).ok_or(Error::Configuration("witness construction failed"))?;
        return Ok(SectorFit::Blocked { witness });
    }
    let r4 = r * r * r * r;
    let k = 1.0 / r4 - 1.0 - slope * slope;
    let base = 1.0 / (libm::sqrt(1.0 + k) - 1.0);
    for step in 0..=100 {
        let offset = base * (1.0 + step as f64 / 100.0);
        let sector = SectorSet::new(slope, offset)?;
        let certificate = certify_sector(r, sector, sampling, |p| contains_omega(p.z, p.w));
        if certificate.holds() {
            return Ok(SectorFit::Fits { offset, certificate });
        }
    }
    Err(Error::Configuration("no grid offset certified below 2·M*"))
}

/// A point of `𝔻_r × V_{C,M}` (every `M < t`) with `Re y = t` that lies
/// outside `Ω`. Requires `C ≥ σ(r)` and `t` large enough that
/// `s = (1/t² + 2/t)/2 < 2σ(r)²`; the aperture used is `√(σ² − s/2) < σ`.
pub fn sector_violation_witness(r: f64, slope: f64, t: f64) -> Option<Point2> {
    let sigma = sigma_closed_form(r).ok()?;
    if !(t > 0.0) || !(slope >= sigma) {
        return None;
    }
    let s = 0.5 * (1.0 / (t * t) + 2.0 / t);
    let a2 = sigma * sigma - 0.5 * s;
    if a2 <= 0.0 {
        return None;
    }
    let r4 = r * r * r * r;
    let zeta = libm::pow(1.0 / r4 + 0.5 * s, -0.25);
    Some(Point2::new(c64(zeta, 0.0), c64(t, t * libm::sqrt(a2))))
}

/// `r'(r) = √((2r² − r)/(2 − r))`, the radius up to which
/// `κ_{𝔻_r} ≤ 2κ_𝔻`. Defined for `1/2 ≤ r ≤ 1`.
pub fn r_prime(r: f64) -> Result<f64> {
    if !(0.5..=1.0).contains(&r) {
        return Err(Error::Range { parameter: "r (needs 1/2 ≤ r ≤ 1)", value: r });
    }
    Ok(libm::sqrt((2.0 * r * r - r) / (2.0 - r)))
}

/// Ambient whose inscribed-product growth is tabulated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DiagnosticDomain {
    Omega,
    OmegaH(SectorMap),
    /// `𝔻 × ℍ` itself: every product fits, `σ ≡ ∞`.
    Bidisc,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SufficiencyRow {
    pub r: f64,
    /// `None` when `σ` is unbounded.
    pub sigma: Option<f64>,
    /// `σ(r)·|log(1 − r)|`.
    pub log_product: Option<f64>,
    /// `σ(r)·k_{𝔻_r}(s₀, r'(r))`.
    pub intrinsic_product: Option<f64>,
}

impl SufficiencyRow {
    pub fn unbounded(&self) -> bool {
        self.sigma.is_none()
    }
}

pub fn sufficiency_diagnostics(domain: DiagnosticDomain, r_grid: &[f64], s0: f64) -> Result<Vec<SufficiencyRow>> {
    if !(0.0..1.0).contains(&s0) {
        return Err(Error::Range { parameter: "s₀", value: s0 });
    }
    r_grid
        .iter()
        .map(|&r| {
            if !(r > 0.5 && r < 1.0) {
                return Err(Error::Range { parameter: "r (needs 1/2 < r < 1)", value: r });
            }
            let sigma = match domain {
                DiagnosticDomain::Omega => Some(sigma_closed_form(r)?),
                DiagnosticDomain::OmegaH(h) => Some(sigma_sector_family(h, r)?),
                DiagnosticDomain::Bidisc => None,
            };
            let log_term = libm::fabs(libm::log(1.0 - r));
            let intrinsic = dist_disc(r, c64(s0, 0.0), c64(r_prime(r)?, 0.0))?;
            Ok(SufficiencyRow {
                r,
                sigma,
                log_product: sigma.map(|s| s * log_term),
                intrinsic_product: sigma.map(|s| s * intrinsic),
            })
        })
        .collect()
}

/// Euclidean distance from `t > 0` to the boundary of the sector `h_β(𝔻)`:
/// `t·sin(βπ/2)`.
pub fn delta_sector(h: SectorMap, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Range { parameter: "t", value: t });
    }
    Ok(t * libm::sin(h.half_angle()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialRow {
    pub t: f64,
    /// `h⁻¹(t)`.
    pub preimage: C64,
    /// `|h⁻¹(t) − 1|`.
    pub gap: f64,
    /// `(h⁻¹(t) − 1)/|h⁻¹(t) − 1|`; radial approach means this tends to −1.
    pub direction: C64,
    /// `k_𝔻(h⁻¹(t), [0, 1))`.
    pub distance_to_radius: f64,
}

/// `k_𝔻(z, [0, 1))`. The foot on the diameter is found in the half-plane
/// picture, where geodesics orthogonal to `(0, ∞)` are circles about 0.
pub fn dist_to_unit_radius(z: C64) -> Result<f64> {
    let w = (ONE + z) / (ONE - z);
    if !(w.re > 0.0) {
        return Err(Error::DomainViolation { domain: "disc" });
    }
    let foot = c64(w.norm(), 0.0);
    if foot.re >= 1.0 {
        dist_halfplane(foot, w)
    } else {
        dist_disc(1.0, z, c64(0.0, 0.0))
    }
}

pub fn radial_convergence_check(h: SectorMap, t_grid: &[f64]) -> Result<Vec<RadialRow>> {
    t_grid
        .iter()
        .map(|&t| {
            let preimage = h.inverse(c64(t, 0.0))?;
            let offset = preimage - ONE;
            let gap = offset.norm();
            Ok(RadialRow {
                t,
                preimage,
                gap,
                direction: offset / gap,
                distance_to_radius: dist_to_unit_radius(preimage)?,
            })
        })
        .collect()
}
