//! Determinism and monotonicity of the brute-force enumeration, plus the
//! agreement of its two width code paths with the rational implementation.

use latwidth_core::metrics::lattice_width;
use latwidth_core::rational::rat;
use latwidth_core::search::{
    enumerate_polygons, int_lattice_width, reference_width, search, SearchSpec, SearchVisitor,
};

#[test]
fn search_is_deterministic() {
    let spec = SearchSpec::triangles(3, 0, 1);
    let a = search(&spec).unwrap();
    let b = search(&spec).unwrap();
    assert_eq!(a.max_width, b.max_width);
    assert_eq!(a.argmax, b.argmax);
    assert_eq!(a.histogram, b.histogram);
    assert_eq!(a.visited, b.visited);
}

#[test]
fn max_width_monotone_in_box_radius() {
    let mut previous = rat(0);
    for r in 2..=4 {
        let res = search(&SearchSpec::triangles(r, 0, 1)).unwrap();
        assert!(res.max_width >= previous, "radius {r}");
        previous = res.max_width;
    }
}

/// Every triangle in a small box gets the same width from the dual-box
/// enumeration, the capped reference scan, and the rational implementation.
#[test]
fn three_width_routes_agree_exhaustively() {
    #[derive(Default)]
    struct Collect {
        polys: Vec<Vec<(i64, i64)>>,
    }
    impl SearchVisitor for Collect {
        fn visit(&mut self, verts: &[(i64, i64)], _g: usize, _w: i64) {
            self.polys.push(verts.to_vec());
        }
        fn merge(mut self, other: Self) -> Self {
            self.polys.extend(other.polys);
            self
        }
    }
    let spec = SearchSpec::triangles(3, 0, usize::MAX);
    let all: Collect = enumerate_polygons(&spec).unwrap();
    assert!(all.polys.len() > 10_000);
    for verts in &all.polys {
        let fast = int_lattice_width(verts);
        assert_eq!(fast, reference_width(verts, 6), "reference at {verts:?}");
        let pts: Vec<latwidth_core::point::Pt> = verts
            .iter()
            .map(|&(x, y)| latwidth_core::point::Pt::ints(x, y))
            .collect();
        let poly = latwidth_core::polygon::convex_hull(&pts).unwrap();
        assert_eq!(rat(fast), lattice_width(&poly).unwrap().value, "exact at {verts:?}");
    }
}
