use core::ops::{Add, Mul, Sub};

pub use num_complex::Complex64 as C64;

#[inline]
pub const fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// A point (or tangent vector) of `ℂ²`.
///
/// The coordinates are called `z`, `w` on the ball side and read as
/// `(ζ, y)` on the bidisc side of the embedding.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub z: C64,
    pub w: C64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { z: c64(0.0, 0.0), w: c64(0.0, 0.0) };

    #[inline]
    pub const fn new(z: C64, w: C64) -> Self {
        Point2 { z, w }
    }

    pub fn real(z: f64, w: f64) -> Self {
        Point2::new(c64(z, 0.0), c64(w, 0.0))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.z.norm_sqr() + self.w.norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.norm_sqr())
    }

    /// Hermitian product `⟨self, other⟩ = z·conj(z') + w·conj(w')`.
    pub fn inner(&self, other: &Point2) -> C64 {
        self.z * other.z.conj() + self.w * other.w.conj()
    }

    pub fn is_finite(&self) -> bool {
        self.z.is_finite() && self.w.is_finite()
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.z + rhs.z, self.w + rhs.w)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.z - rhs.z, self.w - rhs.w)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, rhs: f64) -> Point2 {
        Point2::new(self.z * rhs, self.w * rhs)
    }
}
