//! Corpus-level checks of the blocking machinery: shards against face
//! cones, forbidden-cone disjointness, extension postconditions, and the
//! colinear-boundary-points width bound.

use latwidth_core::catalog;
use latwidth_core::maximality::{blocking_data, is_k_maximal, k_maximal_extension};
use latwidth_core::metrics::lattice_width;
use latwidth_core::point::Pt;
use latwidth_core::polygon::{convex_hull, LatticePolygon};
use latwidth_core::rational::{frac, rat, Rat};
use latwidth_core::region::{face_cone, forbidden_cone, shard};
use latwidth_core::sampling::{random_lattice_polygon, sampler, Sampler};
use latwidth_core::unimodular::are_equivalent;
use num_bigint::BigInt;

fn probe_grid(step: i64, radius: i64) -> Vec<Pt> {
    let mut out = Vec::new();
    for x in (-radius * step)..=(radius * step) {
        for y in (-radius * step)..=(radius * step) {
            out.push(Pt::new(
                Rat::new(BigInt::from(x), BigInt::from(step)),
                Rat::new(BigInt::from(y), BigInt::from(step)),
            ));
        }
    }
    out
}

/// Membership in every sampled face cone and membership in the shard agree.
#[test]
fn shards_equal_sampled_face_cone_intersections() {
    let mut rng = sampler(201);
    for body in [
        catalog::blocking_hexagon(),
        catalog::blocking_cross(),
        catalog::terminal_triangle(),
    ] {
        for e in 0..body.num_edges() {
            let s = shard(&body, e).unwrap();
            let (a, b) = body.edge(e);
            let (a, b) = (a.clone(), b.clone());
            let edge_seg = convex_hull(&[a.clone(), b.clone()]).unwrap();
            // 100 random interior-ish apexes of B \ e
            let mut apexes = Vec::new();
            while apexes.len() < 100 {
                let x = latwidth_core::sampling::random_rat_in(&mut rng, &rat(-1), &rat(1));
                let y = latwidth_core::sampling::random_rat_in(&mut rng, &rat(-1), &rat(1));
                let p = Pt::new(x, y);
                if body.contains(&p, false) && !edge_seg.contains(&p, false) {
                    apexes.push(p);
                }
            }
            let cones: Vec<_> = apexes
                .iter()
                .map(|x0| face_cone(x0, (&a, &b)).unwrap())
                .collect();
            for probe in probe_grid(2, 3) {
                let in_shard = s.contains(&probe);
                let in_all = cones.iter().all(|c| c.contains(&probe));
                assert_eq!(in_shard, in_all, "{body:?} edge {e} at {probe:?}");
            }
        }
    }
}

fn one_maximal_corpus(rng: &mut Sampler, count: usize) -> Vec<LatticePolygon> {
    let mut corpus = vec![
        catalog::scaled_standard_triangle(3),
        catalog::centered_width3_triangle(),
        catalog::extremal_hexagon().scale(&frac(2, 3)),
    ];
    while corpus.len() < count {
        let p = random_lattice_polygon(rng, 4, 6);
        if p.interior_count() != 1 {
            continue;
        }
        match k_maximal_extension(&p, &rat(1), &rat(10)) {
            Ok(ext) => corpus.push(ext),
            Err(_) => continue,
        }
    }
    corpus
}

/// Blocking polygons of 1-maximal polygons are two-dimensional with at most
/// one interior lattice point.
#[test]
fn blocking_polygons_are_flat_and_lean() {
    let mut rng = sampler(202);
    for p in one_maximal_corpus(&mut rng, 40) {
        assert!(is_k_maximal(&p, 1).unwrap(), "corpus member not 1-maximal: {p:?}");
        let data = blocking_data(&p).unwrap();
        let hull = data.blocking_polygon.expect("blocked everywhere");
        assert!(hull.is_full_dimensional(), "blocking polygon degenerate for {p:?}");
        assert!(hull.interior_count() <= 1);
    }
}

/// A 1-maximal polygon avoids the forbidden cone of every lattice point
/// other than its interior point.
#[test]
fn forbidden_cones_miss_the_polygon() {
    let mut rng = sampler(203);
    for p in one_maximal_corpus(&mut rng, 30) {
        let interior = p.lattice_points(true)[0];
        let data = blocking_data(&p).unwrap();
        let hull = data.blocking_polygon.unwrap();
        // probes: vertices and edge midpoints of P
        let mut probes: Vec<Pt> = p.vertices().to_vec();
        for i in 0..p.num_edges() {
            let (a, b) = p.edge(i);
            probes.push(Pt::new(
                (&a.x + &b.x) / rat(2),
                (&a.y + &b.y) / rat(2),
            ));
        }
        for qx in -4..=4 {
            for qy in -4..=4 {
                if (qx, qy) == interior {
                    continue;
                }
                let q = Pt::ints(qx, qy);
                if hull.contains(&q, true) {
                    continue;
                }
                let cone = forbidden_cone(&hull, &q).unwrap();
                for probe in &probes {
                    assert!(
                        !cone.contains(probe),
                        "{probe:?} of {p:?} inside the cone at ({qx},{qy})"
                    );
                }
            }
        }
    }
}

/// Extension output contains its input, keeps its interior points and is
/// k-maximal.
#[test]
fn extension_postconditions() {
    let mut rng = sampler(204);
    let mut done = 0;
    while done < 25 {
        let p = random_lattice_polygon(&mut rng, 4, 6);
        let k = p.interior_count();
        let Ok(ext) = k_maximal_extension(&p, &rat(1), &rat(10)) else {
            continue;
        };
        assert!(is_k_maximal(&ext, k).unwrap());
        for v in p.vertices() {
            assert!(ext.contains(v, false));
        }
        assert_eq!(p.lattice_points(true), ext.lattice_points(true));
        done += 1;
    }
}

/// One-interior-point polygons with three colinear lattice points on an edge
/// have width at most 3, and exactly 3 only for the width-3 triangle class.
#[test]
fn colinear_edge_points_force_width_three() {
    let mut rng = sampler(205);
    let reference = catalog::scaled_standard_triangle(3);
    let mut found = 0;
    let mut equality_seen = false;
    let mut attempts = 0;
    // seed the two width-3 representatives with a long bottom edge
    let mut queue: Vec<LatticePolygon> = vec![
        reference.clone(),
        convex_hull(&[Pt::ints(-2, -1), Pt::ints(1, -1), Pt::ints(1, 2)]).unwrap(),
        convex_hull(&[Pt::ints(-1, -1), Pt::ints(2, -1), Pt::ints(-1, 2)]).unwrap(),
    ];
    while found < 60 && attempts < 200_000 {
        attempts += 1;
        let p = queue
            .pop()
            .unwrap_or_else(|| random_lattice_polygon(&mut rng, 4, 5));
        if p.interior_count() != 1 {
            continue;
        }
        let has_long_edge = (0..p.num_edges()).any(|i| {
            let (a, b) = p.edge(i);
            latwidth_core::maximality::segment_interior_lattice_points(a, b).len() >= 1
                && {
                    // at least 3 lattice points on the edge including ends
                    let interior_pts =
                        latwidth_core::maximality::segment_interior_lattice_points(a, b).len();
                    let ends = (a.is_integer() as usize) + (b.is_integer() as usize);
                    interior_pts + ends >= 3
                }
        });
        if !has_long_edge {
            continue;
        }
        found += 1;
        let w = lattice_width(&p).unwrap().value;
        assert!(w <= rat(3), "width {w} > 3 at {p:?}");
        if w == rat(3) {
            equality_seen = true;
            assert!(
                are_equivalent(&p, &reference).unwrap().is_some(),
                "width-3 polygon not equivalent to the reference: {p:?}"
            );
        }
    }
    assert!(found >= 60, "only {found} colinear-edge polygons found");
    assert!(equality_seen, "no equality case sampled");
}

/// The hexagon blocking polygon of the width-3 triangle is recovered by the
/// extension machinery when starting from a slightly shrunken copy.
#[test]
fn extension_recovers_width3_blocking_hexagon() {
    let shrunk = convex_hull(&[
        Pt::new(frac(1, 8), frac(1, 8)),
        Pt::new(frac(23, 8), frac(1, 8)),
        Pt::new(frac(1, 8), frac(23, 8)),
    ])
    .unwrap();
    assert_eq!(shrunk.lattice_points(true), vec![(1, 1)]);
    let ext = k_maximal_extension(&shrunk, &rat(1), &rat(8)).unwrap();
    assert!(is_k_maximal(&ext, 1).unwrap());
    let data = blocking_data(&ext).unwrap();
    assert!(data.blocking_polygon.unwrap().is_full_dimensional());
}
