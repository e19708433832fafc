use std::f64::consts::TAU;

use hypstep_core::domains::{
    contains_omega, minimal_offset, sigma_bruteforce_with, sigma_sector_family, BoundarySampling, SectorMap,
};
use hypstep_core::dynamics::{l_monotonicity_check, model_coordinate, step, HolomorphicMap};
use hypstep_core::geodesics::{build_triangle, slimness_estimate, TriangleSpec};
use hypstep_core::metrics::{
    dist_ball, dist_disc, dist_halfplane, dist_halfstrip, dist_strip, hyperbolic_length, Domain, KobayashiDomain,
    PlanarDomain, Segment,
};
use hypstep_core::{c64, Point2, C64};
use proptest::prelude::*;
use proptest::strategy::ValueTree;

fn disc_point(radius: f64) -> impl Strategy<Value = C64> {
    (0.0..0.999f64, 0.0..TAU).prop_map(move |(rho, t)| C64::from_polar(radius * rho, t))
}

fn ball_point() -> impl Strategy<Value = Point2> {
    (0.0..0.999f64, 0.0..0.999f64, 0.0..TAU, 0.0..TAU).prop_map(|(a, b, s, t)| {
        let w = b * (1.0 - a * a).sqrt();
        Point2::new(C64::from_polar(a, s), C64::from_polar(w, t))
    })
}

fn half_plane_point() -> impl Strategy<Value = C64> {
    (-6.0..6.0f64, -20.0..20.0f64).prop_map(|(x, y)| c64(10f64.powf(x), y))
}

fn half_strip_point(half_width: f64, offset: f64) -> impl Strategy<Value = C64> {
    (-6.0..3.0f64, -0.999..0.999f64).prop_map(move |(x, y)| c64(offset + 10f64.powf(x), half_width * y))
}

fn triangle<D: Fn(C64, C64) -> f64>(d: D, a: C64, b: C64, c: C64) -> Result<(), TestCaseError> {
    let (ab, bc, ac) = (d(a, b), d(b, c), d(a, c));
    prop_assert!(ab >= 0.0 && (ab - d(b, a)).abs() <= 1e-12 * (1.0 + ab));
    prop_assert!(ac <= ab + bc + 1e-10 * (1.0 + ab + bc), "{ac} > {ab} + {bc}");
    prop_assert!(d(a, a) <= 1e-15);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn disc_is_a_metric(a in disc_point(0.7), b in disc_point(0.7), c in disc_point(0.7)) {
        triangle(|x, y| dist_disc(0.7, x, y).unwrap(), a, b, c)?;
    }

    #[test]
    fn half_plane_is_a_metric(a in half_plane_point(), b in half_plane_point(), c in half_plane_point()) {
        triangle(|x, y| dist_halfplane(x, y).unwrap(), a, b, c)?;
    }

    #[test]
    fn strip_is_a_metric(a in half_strip_point(2.0, -50.0), b in half_strip_point(2.0, -50.0), c in half_strip_point(2.0, -50.0)) {
        triangle(|x, y| dist_strip(2.0, x, y).unwrap(), a, b, c)?;
    }

    #[test]
    fn half_strip_is_a_metric(a in half_strip_point(0.5, 1.0), b in half_strip_point(0.5, 1.0), c in half_strip_point(0.5, 1.0)) {
        triangle(|x, y| dist_halfstrip(0.5, 1.0, x, y).unwrap(), a, b, c)?;
    }

    #[test]
    fn ball_is_a_metric(p in ball_point(), q in ball_point(), s in ball_point()) {
        let (pq, qs, ps) = (dist_ball(p, q).unwrap(), dist_ball(q, s).unwrap(), dist_ball(p, s).unwrap());
        prop_assert!((pq - dist_ball(q, p).unwrap()).abs() <= 1e-12 * (1.0 + pq));
        prop_assert!(ps <= pq + qs + 1e-10 * (1.0 + pq + qs));
        prop_assert!(dist_ball(p, p).unwrap() <= 1e-15);
    }

    // Inclusion decreases distances: 𝔻_r ⊂ 𝔻 and S_{R,M} ⊂ S_R.
    #[test]
    fn inclusions_are_contractions(a in disc_point(0.6), b in disc_point(0.6),
                                   x in half_strip_point(1.0, 2.0), y in half_strip_point(1.0, 2.0)) {
        prop_assert!(dist_disc(1.0, a, b).unwrap() <= dist_disc(0.6, a, b).unwrap() + 1e-12);
        prop_assert!(dist_strip(1.0, x, y).unwrap() <= dist_halfstrip(1.0, 2.0, x, y).unwrap() + 1e-12);
    }

    #[test]
    fn ball_sits_between_bidisc_and_omega(p in ball_point(), q in ball_point()) {
        // φ maps 𝔹² into Ω ⊂ 𝔻 × ℍ, so the bidisc distance of the images
        // is at most the ball distance.
        let phi = HolomorphicMap::Phi(SectorMap::CAYLEY);
        let (fp, fq) = (phi.evaluate(p).unwrap(), phi.evaluate(q).unwrap());
        let ball = dist_ball(p, q).unwrap();
        prop_assert!((Domain::OMEGA.distance(fp, fq).unwrap() - ball).abs() <= 1e-9 * (1.0 + ball));
        prop_assert!(Domain::BIDISC.distance(fp, fq).unwrap() <= ball + 1e-9 * (1.0 + ball));
    }

    #[test]
    fn phi_psi_round_trip(p in ball_point(), beta in 0.05..1.0f64) {
        for h in [SectorMap::CAYLEY, SectorMap::new(beta).unwrap()] {
            let q = HolomorphicMap::Phi(h).evaluate(p).unwrap();
            prop_assert!(h.contains(q));
            let back = HolomorphicMap::Psi(h).evaluate(q).unwrap();
            prop_assert!((back - p).norm() <= 1e-12, "{:?}", back - p);
        }
    }

    #[test]
    fn conjugacy(p in ball_point(), t in 0.0..10.0f64, theta in 0.0..TAU) {
        let phi = HolomorphicMap::Phi(SectorMap::CAYLEY);
        let psi = HolomorphicMap::Psi(SectorMap::CAYLEY);
        let g = HolomorphicMap::GSemigroup { theta, t };
        let lhs = psi.evaluate(g.evaluate(phi.evaluate(p).unwrap()).unwrap()).unwrap();
        let rhs = HolomorphicMap::FSemigroup { theta, t }.evaluate(p).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-10);
    }

    #[test]
    fn sector_semigroup_is_cayley_at_beta_one(p in ball_point(), t in 0.0..10.0f64, theta in 0.0..TAU) {
        let a = HolomorphicMap::FhSemigroup { h: SectorMap::CAYLEY, theta, t }.evaluate(p).unwrap();
        let b = HolomorphicMap::FSemigroup { theta, t }.evaluate(p).unwrap();
        prop_assert!((a - b).norm() <= 1e-12);
    }

    #[test]
    fn schwarz_pick(p in ball_point(), q in ball_point(), t in 0.0..5.0f64, theta in 0.0..TAU, beta in 0.1..1.0f64) {
        let maps = [
            HolomorphicMap::FDiscrete { theta },
            HolomorphicMap::FSemigroup { theta, t },
            HolomorphicMap::FhSemigroup { h: SectorMap::new(beta).unwrap(), theta, t },
        ];
        let before = dist_ball(p, q).unwrap();
        for f in maps {
            let after = dist_ball(f.evaluate(p).unwrap(), f.evaluate(q).unwrap()).unwrap();
            prop_assert!(after <= before + 1e-10, "{f:?}: {after} > {before}");
        }
    }

    #[test]
    fn slice_is_invariant(z in disc_point(1.0), t in 0.0..10.0f64, theta in 0.0..TAU, beta in 0.1..1.0f64) {
        let p = Point2::new(z, c64(0.0, 0.0));
        for f in [HolomorphicMap::FSemigroup { theta, t },
                  HolomorphicMap::FhSemigroup { h: SectorMap::new(beta).unwrap(), theta, t }] {
            prop_assert_eq!(f.evaluate(p).unwrap().w, c64(0.0, 0.0));
        }
    }

    #[test]
    fn g_preserves_omega_and_omega_h(p in ball_point(), t in 0.0..50.0f64, theta in 0.0..TAU, beta in 0.05..1.0f64) {
        for h in [SectorMap::CAYLEY, SectorMap::new(beta).unwrap()] {
            let q = HolomorphicMap::Phi(h).evaluate(p).unwrap();
            let moved = HolomorphicMap::GSemigroup { theta, t }.evaluate(q).unwrap();
            prop_assert!(h.contains(moved));
            if h == SectorMap::CAYLEY {
                prop_assert!(contains_omega(moved.z, moved.w));
            }
        }
    }

    #[test]
    fn model_coordinate_rotates(p in ball_point(), t in 0.0..10.0f64, theta in 0.0..TAU) {
        let f = HolomorphicMap::FSemigroup { theta, t };
        let lhs = model_coordinate(f.evaluate(p).unwrap()).unwrap();
        let rhs = C64::from_polar(1.0, t * theta) * model_coordinate(p).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-10);
    }

    #[test]
    fn l_is_monotone_for_random_base_points(beta in 0.05..1.0f64, rho in 0.01..100.0f64, angle in -0.99..0.99f64) {
        let h = SectorMap::new(beta).unwrap();
        let y = C64::from_polar(rho, angle * h.half_angle());
        let grid: Vec<f64> = (0..100).map(|k| 0.05 * k as f64 * (1.0 + rho)).collect();
        let report = l_monotonicity_check(h, y, &grid).unwrap();
        prop_assert!(report.non_increasing && report.real_part_non_decreasing);
    }

    #[test]
    fn ball_distance_is_below_path_length(p in ball_point(), q in ball_point()) {
        prop_assume!((p - q).norm() > 1e-3);
        let seg = Segment { start: p, end: q };
        let length = hyperbolic_length(&seg, &Domain::Ball, (0.0, 1.0), 1e-9).unwrap();
        prop_assert!(dist_ball(p, q).unwrap() <= length.value + 1e-8);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn step_sequence_is_monotone(p in ball_point(), theta in 0.0..TAU) {
        let s = step(&HolomorphicMap::FDiscrete { theta }, p, 1e-9, 20_000).unwrap();
        prop_assert!(s.is_monotone(), "max increase {}", s.max_increase());
    }
}

#[test]
fn step_limit_matches_model_distance_on_random_points() {
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    for _ in 0..25 {
        let p = ball_point().new_tree(&mut runner).unwrap().current();
        let theta = (0.0..TAU).new_tree(&mut runner).unwrap().current();
        let s = step(&HolomorphicMap::FDiscrete { theta }, p, 1e-9, 100_000).unwrap();
        let l = model_coordinate(p).unwrap();
        let expected = dist_disc(1.0, l, C64::from_polar(1.0, theta) * l).unwrap();
        assert!((s.limit - expected).abs() < 1e-6, "{p:?}, θ={theta}: {} vs {expected}", s.limit);
    }
}

#[test]
fn planar_distances_match_lengths_of_geodesics() {
    let hp = PlanarDomain::HalfPlane;
    let seg = Segment { start: c64(0.01, 3.0), end: c64(50.0, 3.0) };
    // With ℍ = {Re > 0} the positive real axis is a geodesic; a parallel
    // segment off the axis is strictly longer than the distance.
    let real = Segment { start: c64(0.01, 0.0), end: c64(50.0, 0.0) };
    let l = hyperbolic_length(&real, &hp, (0.0, 1.0), 1e-10).unwrap().value;
    assert!((l - hp.distance(real.start, real.end).unwrap()).abs() < 1e-8);
    let off = hyperbolic_length(&seg, &hp, (0.0, 1.0), 1e-10).unwrap().value;
    assert!(hp.distance(seg.start, seg.end).unwrap() < off);

    let strip = PlanarDomain::strip(1.5).unwrap();
    let axis = Segment { start: c64(-7.0, 0.0), end: c64(4.0, 0.0) };
    let l = hyperbolic_length(&axis, &strip, (0.0, 1.0), 1e-10).unwrap().value;
    assert!((l - strip.distance(axis.start, axis.end).unwrap()).abs() < 1e-8);

    let hs = PlanarDomain::half_strip(0.8, 2.0).unwrap();
    let axis = Segment { start: c64(2.001, 0.0), end: c64(9.0, 0.0) };
    let l = hyperbolic_length(&axis, &hs, (0.0, 1.0), 1e-10).unwrap().value;
    assert!((l - hs.distance(axis.start, axis.end).unwrap()).abs() < 1e-8);
}

#[test]
fn sector_sigma_matches_bruteforce() {
    for beta in [0.5, 0.75] {
        let h = SectorMap::new(beta).unwrap();
        for r in [0.6, 0.8] {
            let expected = sigma_sector_family(h, r).unwrap();
            let search =
                sigma_bruteforce_with(r, 1000, BoundarySampling { angles: 2, per_edge: 16 }, |p| h.contains(p))
                    .unwrap();
            let found = search.ratio().unwrap();
            assert!((found - expected).abs() < 0.01 * expected, "β={beta}, r={r}: {found} vs {expected}");
        }
    }
}

#[test]
fn projection_bound_on_flagship_triangles() {
    for k in 1..=4 {
        let r = 1.0 - 10f64.powi(-k);
        let tr = build_triangle(TriangleSpec::flagship(r)).unwrap();
        let plus: Vec<Point2> =
            (0..=100).map(|i| hypstep_core::metrics::Curve::point(&tr.gamma_plus, i as f64 / 100.0)).collect();
        for i in 0..=50 {
            let p = hypstep_core::metrics::Curve::point(&tr.gamma_minus, i as f64 / 50.0);
            let floor = dist_disc(1.0, p.z, c64(0.0, 0.0)).unwrap();
            for q in &plus {
                assert!(Domain::BIDISC.distance(p, *q).unwrap() >= floor - 1e-12);
            }
        }
    }
}

#[test]
fn big_lower_bound_forces_big_estimate() {
    // Any triangle whose lower bound exceeds a candidate G has sampled
    // slimness above G.
    let candidate = 0.6;
    for k in 1..=5 {
        let tr = build_triangle(TriangleSpec::flagship(1.0 - 10f64.powi(-k))).unwrap();
        if tr.lower_bound > candidate {
            let est = slimness_estimate(&tr, &Domain::BIDISC, 80).unwrap();
            assert!(est.g > candidate, "k={k}");
        }
    }
}

#[test]
fn omega_triangles_fit_inside_omega() {
    for r in [0.9, 0.99] {
        let m = minimal_offset(r, 1.0).unwrap();
        let tr = build_triangle(TriangleSpec { r, half_width: 1.0, offset: m, c: 2.0, s0: 0.5 }).unwrap();
        for v in tr.vertices() {
            assert!(Domain::OMEGA.contains(v));
        }
        let est = slimness_estimate(&tr, &Domain::OMEGA, 40).unwrap();
        assert!(est.g.is_finite());
    }
}
