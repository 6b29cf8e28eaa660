//! Randomized invariants of the geometry and width layers. The sweeps here
//! run at development scale; the acceptance suite repeats the critical ones
//! at full scale.

use latwidth_core::catalog;
use latwidth_core::covering::{covering_radius_bracket, covers_plane};
use latwidth_core::enclosure::{flatness_zero, sqrt_enclosure};
use latwidth_core::metrics::{
    difference_body, euclidean_min_width, first_minimum, lattice_width, polar, width_in_direction,
};
use latwidth_core::point::{Direction, Pt};
use latwidth_core::polygon::{convex_hull, LatticePolygon};
use latwidth_core::rational::{frac, rat, to_f64, Rat};
use latwidth_core::sampling::{
    random_lattice_polygon, random_rational_polygon, random_unimodular_map, sampler,
};
use latwidth_core::unimodular::{apply_map, are_equivalent, UnimodularMap};
use num_traits::Signed;
use proptest::prelude::*;

#[test]
fn apply_map_round_trips() {
    let mut rng = sampler(101);
    for _ in 0..1000 {
        let p = random_lattice_polygon(&mut rng, 5, 6);
        let m = random_unimodular_map(&mut rng, 3, 5);
        let there = apply_map(&m, &p);
        let back = apply_map(&m.inverse(), &there);
        assert_eq!(back, p);
    }
}

#[test]
fn lattice_point_counts_are_unimodular_invariants() {
    let mut rng = sampler(102);
    for _ in 0..300 {
        let p = random_lattice_polygon(&mut rng, 4, 6);
        let m = random_unimodular_map(&mut rng, 3, 4);
        let q = apply_map(&m, &p);
        assert_eq!(p.interior_count(), q.interior_count());
        assert_eq!(p.total_count(), q.total_count());
    }
}

#[test]
fn picks_theorem_cross_check() {
    let mut rng = sampler(103);
    for _ in 0..300 {
        let p = random_lattice_polygon(&mut rng, 5, 7);
        let interior = p.interior_count() as i64;
        let boundary = (p.total_count() as i64) - interior;
        // area = interior + boundary/2 − 1
        assert_eq!(
            p.area() * rat(2),
            rat(2 * interior + boundary - 2),
            "at {p:?}"
        );
    }
}

#[test]
fn contains_agrees_with_halfplane_signs() {
    let mut rng = sampler(104);
    let mut checked = 0;
    while checked < 10_000 {
        let p = random_rational_polygon(&mut rng, 4, 4, 5);
        let hps = p.halfplane_description().unwrap();
        for _ in 0..10 {
            let probe = Pt::new(
                latwidth_core::sampling::random_rat_in(&mut rng, &rat(-5), &rat(5)),
                latwidth_core::sampling::random_rat_in(&mut rng, &rat(-5), &rat(5)),
            );
            let closed = hps.iter().all(|h| !h.slack(&probe).is_negative());
            let strict = hps.iter().all(|h| h.slack(&probe).is_positive());
            assert_eq!(p.contains(&probe, false), closed);
            assert_eq!(p.contains(&probe, true), strict);
            checked += 1;
        }
    }
}

#[test]
fn equivalence_is_reflexive_and_symmetric() {
    let mut rng = sampler(105);
    let corpus: Vec<LatticePolygon> = (0..100)
        .map(|_| random_lattice_polygon(&mut rng, 4, 6))
        .collect();
    for p in &corpus {
        assert!(are_equivalent(p, p).unwrap().is_some());
    }
    for pair in corpus.chunks(2) {
        if pair.len() == 2 {
            let ab = are_equivalent(&pair[0], &pair[1]).unwrap().is_some();
            let ba = are_equivalent(&pair[1], &pair[0]).unwrap().is_some();
            assert_eq!(ab, ba);
        }
    }
    // and equivalence really transports one polygon onto the other
    let m = UnimodularMap::new([[2, 1], [1, 1]], (3, -2)).unwrap();
    for p in corpus.iter().take(20) {
        let q = apply_map(&m, p);
        let w = are_equivalent(p, &q).unwrap().expect("equivalent by construction");
        assert_eq!(apply_map(&w, p), q);
    }
}

#[test]
fn width_is_a_unimodular_invariant() {
    let mut rng = sampler(106);
    for _ in 0..1000 {
        let p = random_lattice_polygon(&mut rng, 4, 5);
        let m = random_unimodular_map(&mut rng, 2, 3);
        let q = apply_map(&m, &p);
        assert_eq!(
            lattice_width(&p).unwrap().value,
            lattice_width(&q).unwrap().value,
            "at {p:?}"
        );
    }
}

#[test]
fn width_matches_polar_difference_first_minimum() {
    let mut rng = sampler(107);
    for _ in 0..300 {
        let p = random_rational_polygon(&mut rng, 3, 3, 5);
        let w = lattice_width(&p).unwrap().value;
        let dual = first_minimum(&polar(&difference_body(&p)).unwrap()).unwrap();
        assert_eq!(w, dual, "at {p:?}");
    }
}

#[test]
fn width_is_homogeneous_and_monotone() {
    let mut rng = sampler(108);
    for _ in 0..300 {
        let p = random_lattice_polygon(&mut rng, 4, 5);
        let lam = latwidth_core::sampling::random_rat_in(&mut rng, &frac(1, 3), &rat(3));
        let scaled = p.scale(&lam);
        assert_eq!(
            lattice_width(&scaled).unwrap().value,
            lam * lattice_width(&p).unwrap().value
        );
        // monotone under adding points
        let mut pts = p.vertices().to_vec();
        pts.push(Pt::ints(6, 6));
        pts.push(Pt::ints(-5, 2));
        let bigger = convex_hull(&pts).unwrap();
        assert!(lattice_width(&p).unwrap().value <= lattice_width(&bigger).unwrap().value);
    }
}

#[test]
fn width_squared_bounded_by_area() {
    // w(P)² ≤ c₂·area with c₂ = 128/π² through the safe enclosure side
    let pi = latwidth_core::enclosure::pi();
    let c2_lo = rat(128) / (&pi.hi * &pi.hi);
    let mut rng = sampler(109);
    for _ in 0..1000 {
        let p = random_rational_polygon(&mut rng, 4, 4, 6);
        let w = lattice_width(&p).unwrap().value;
        assert!(&w * &w <= &c2_lo * p.area(), "at {p:?}");
    }
}

#[test]
fn lattice_point_discrepancy_bounds() {
    let f0 = flatness_zero();
    let mut rng = sampler(110);
    let mut checked = 0;
    let mut lower_checked = 0;
    while checked < 1000 {
        let p = random_lattice_polygon(&mut rng, 4, 6);
        let w = lattice_width(&p).unwrap().value;
        if w <= f0.hi {
            continue;
        }
        checked += 1;
        let area = p.area();
        let g_interior = rat(p.interior_count() as i64);
        let g_total = rat(p.total_count() as i64);
        // upper: G ≤ area·(1 + c/w)², strengthened with the lower enclosure
        let up = rat(1) + &f0.lo / &w;
        assert!(g_total <= &area * &up * &up, "upper bound at {p:?}");
        assert!(g_interior <= g_total);
        // lower: needs the plane covered by P + Z²
        if covers_plane(&p).unwrap() {
            lower_checked += 1;
            let down = rat(1) - &f0.lo / &w;
            assert!(down.is_positive());
            assert!(&area * &down * &down <= g_interior, "lower bound at {p:?}");
        }
    }
    assert!(lower_checked > 50, "covered filter kept {lower_checked}");
}

#[test]
fn covering_radius_times_width_bounded() {
    let f0 = flatness_zero();
    let tol = frac(1, 64);
    let mut rng = sampler(111);
    for _ in 0..15 {
        let p = random_lattice_polygon(&mut rng, 3, 5);
        let bracket = covering_radius_bracket(&p, &tol).unwrap();
        let w = lattice_width(&p).unwrap().value;
        // upper ≤ μ + tol, so upper·w ≤ (hollow width bound) + w·tol
        assert!(
            &bracket.upper * &w <= &f0.hi + &w * &tol,
            "at {p:?}: bracket [{}, {}], w = {}",
            bracket.lower,
            bracket.upper,
            w
        );
        // the lower witness certifies a hollow translate
        if bracket.lower.is_positive() {
            let hollow = p.scale(&bracket.lower).translate(&bracket.witness_translate);
            assert_eq!(hollow.interior_count(), 0);
        }
    }
}

#[test]
fn euclidean_width_ratio_below_regular_triangle() {
    // rational proxy of the regular triangle, vertex error below 1e-6
    let h = Rat::new(866025403784439i64.into(), 1_000_000_000_000_000i64.into());
    let t_reg = convex_hull(&[
        Pt::ints(0, 0),
        Pt::ints(1, 0),
        Pt::new(frac(1, 2), h),
    ])
    .unwrap();
    let reg_ratio = {
        let e = euclidean_min_width(&t_reg).unwrap();
        e.approx() / to_f64(&t_reg.area()).sqrt()
    };
    let mut rng = sampler(112);
    for _ in 0..1000 {
        let p = random_rational_polygon(&mut rng, 4, 4, 6);
        let e = euclidean_min_width(&p).unwrap();
        let ratio = e.approx() / to_f64(&p.area()).sqrt();
        assert!(ratio <= reg_ratio + 1e-9, "at {p:?}: {ratio} vs {reg_ratio}");
    }
}

#[test]
fn width_in_direction_scans_vertices() {
    // support widths agree with a direct scan over many random directions
    let mut rng = sampler(113);
    for _ in 0..100 {
        let p = random_rational_polygon(&mut rng, 4, 3, 6);
        for (dx, dy) in [(1i64, 0i64), (0, 1), (3, -2), (5, 7)] {
            let d = Direction::new(dx, dy).unwrap();
            let w = width_in_direction(&p, d);
            let vals: Vec<Rat> = p
                .vertices()
                .iter()
                .map(|v| rat(dx) * &v.x + rat(dy) * &v.y)
                .collect();
            let lo = vals.iter().min().unwrap();
            let hi = vals.iter().max().unwrap();
            assert_eq!(w, hi - lo);
        }
    }
}

#[test]
fn sandwich_bound_per_interior_count() {
    // lattice maxima per interior count stay under the flatness chain bound
    let scan =
        latwidth_core::search::isominwidth_scan(&latwidth_core::search::SearchSpec::triangles(
            3, 1, 20,
        ))
        .unwrap();
    let f0 = flatness_zero();
    let fv = latwidth_core::enclosure::flatness_volume();
    for (k, w) in &scan.max_width_per_count {
        let sk = sqrt_enclosure(&rat(*k as i64));
        assert!(rat(*w) <= &f0.lo + &fv.lo * &sk.lo, "k = {k}, M = {w}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hull_contains_its_points(pts in prop::collection::vec((-8i64..=8, -8i64..=8), 1..9)) {
        let points: Vec<Pt> = pts.iter().map(|&(x, y)| Pt::ints(x, y)).collect();
        let hull = convex_hull(&points).unwrap();
        for p in &points {
            prop_assert!(hull.contains(p, false));
        }
    }

    #[test]
    fn clip_preserves_membership(
        pts in prop::collection::vec((-6i64..=6, -6i64..=6), 3..8),
        n in (-4i64..=4, -4i64..=4),
        c in -6i64..=6,
    ) {
        prop_assume!(n != (0, 0));
        let points: Vec<Pt> = pts.iter().map(|&(x, y)| Pt::ints(x, y)).collect();
        let hull = convex_hull(&points).unwrap();
        let hp = latwidth_core::polygon::HalfPlane::new(
            (n.0.into(), n.1.into()),
            rat(c),
        );
        let clipped = hull.clip(&hp);
        for probe in &points {
            let inside_both = hull.contains(probe, false) && hp.contains(probe, false);
            if inside_both {
                prop_assert!(clipped.as_ref().is_some_and(|q| q.contains(probe, false)));
            }
        }
    }

    #[test]
    fn degenerate_widths_error(x in -5i64..=5, y in -5i64..=5, k in 1i64..=4) {
        let seg = convex_hull(&[Pt::ints(x, y), Pt::ints(x + k, y + 2 * k)]).unwrap();
        prop_assert!(lattice_width(&seg).is_err());
        prop_assert_eq!(seg.area(), rat(0));
    }
}

#[test]
fn catalog_fixed_points() {
    // a couple of frozen values used across suites
    assert_eq!(
        lattice_width(&catalog::hollow_width2_quadrilateral()).unwrap().value,
        rat(2)
    );
    assert_eq!(catalog::two_point_maximizer().interior_count(), 2);
    assert_eq!(
        lattice_width(&catalog::centered_width3_triangle()).unwrap().value,
        rat(3)
    );
}
