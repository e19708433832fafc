//! Seeded sampling; every random quantity in a run is drawn from one
//! ChaCha stream created from `--seed`.

use hypstep_core::{c64, Point2, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point of the open unit ball of `ℂ²`, by rejection from the cube.
pub fn ball_point<R: Rng>(rng: &mut R) -> Point2 {
    loop {
        let v: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let p = Point2::new(c64(v[0], v[1]), c64(v[2], v[3]));
        if p.norm() < 1.0 - 1e-9 {
            return p;
        }
    }
}

/// Uniform point of the sphere of the given radius.
pub fn sphere_point<R: Rng>(rng: &mut R, radius: f64) -> Point2 {
    loop {
        let p = ball_point(rng);
        let n = p.norm();
        if n > 1e-3 {
            return p * (radius / n);
        }
    }
}

pub fn disc_point<R: Rng>(rng: &mut R, radius: f64) -> C64 {
    loop {
        let z = c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if z.norm() < 1.0 - 1e-9 {
            return z * radius;
        }
    }
}

pub fn angle<R: Rng>(rng: &mut R) -> f64 {
    rng.gen_range(0.0..std::f64::consts::TAU)
}

pub fn time<R: Rng>(rng: &mut R, max: f64) -> f64 {
    rng.gen_range(0.0..max)
}
