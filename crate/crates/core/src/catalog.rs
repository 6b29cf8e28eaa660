//! Named polygons used across checks, fixtures and tests.

use crate::point::Pt;
use crate::polygon::{convex_hull, LatticePolygon};
use crate::rational::{frac, rat};

fn poly(pts: &[(i64, i64)]) -> LatticePolygon {
    convex_hull(&pts.iter().map(|&(x, y)| Pt::ints(x, y)).collect::<Vec<_>>()).unwrap()
}

/// `conv{(0,0),(1,0),(0,1)}`.
pub fn standard_triangle() -> LatticePolygon {
    poly(&[(0, 0), (1, 0), (0, 1)])
}

/// The standard triangle dilated by `k`.
pub fn scaled_standard_triangle(k: i64) -> LatticePolygon {
    poly(&[(0, 0), (k, 0), (0, k)])
}

/// `conv{(-1,-1),(0,1),(1,0)}`: the width-2 triangle with one interior point
/// that is extremal for the width-to-area ratio.
pub fn terminal_triangle() -> LatticePolygon {
    poly(&[(-1, -1), (0, 1), (1, 0)])
}

/// `[0,1]^2`.
pub fn unit_square() -> LatticePolygon {
    poly(&[(0, 0), (1, 0), (1, 1), (0, 1)])
}

/// `[-1,1]^2`.
pub fn symmetric_square() -> LatticePolygon {
    poly(&[(-1, -1), (1, -1), (1, 1), (-1, 1)])
}

/// The origin-centered copy `conv{(-1,-1),(-1,2),(2,-1)}` of the width-3
/// triangle; the equality case of the non-symmetric transference product.
pub fn centered_width3_triangle() -> LatticePolygon {
    poly(&[(-1, -1), (-1, 2), (2, -1)])
}

/// `conv{±(2,1), ±(1,2), ±(-1,1)}`: the symmetric transference extremizer.
pub fn extremal_hexagon() -> LatticePolygon {
    poly(&[(2, 1), (1, 2), (-1, 1), (-2, -1), (-1, -2), (1, -1)])
}

/// `(5/3)·T0 + (1/3)e1`: the two-interior-point polygon of width 10/3.
pub fn two_point_maximizer() -> LatticePolygon {
    let t0 = terminal_triangle();
    t0.scale(&frac(5, 3)).translate(&Pt::new(frac(1, 3), rat(0)))
}

/// The hollow quadrilateral `conv{(3/2,1/2),(1/2,3/2),(-1/2,1/2),(1/2,-1/2)}`
/// of lattice width exactly 2.
pub fn hollow_width2_quadrilateral() -> LatticePolygon {
    convex_hull(&[
        Pt::new(frac(3, 2), frac(1, 2)),
        Pt::new(frac(1, 2), frac(3, 2)),
        Pt::new(frac(-1, 2), frac(1, 2)),
        Pt::new(frac(1, 2), frac(-1, 2)),
    ])
    .unwrap()
}

/// Blocking hexagon `conv{±(1,0), ±(1,1), ±(0,1)}`.
pub fn blocking_hexagon() -> LatticePolygon {
    poly(&[(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)])
}

/// Blocking cross `conv{±e1, ±e2}`.
pub fn blocking_cross() -> LatticePolygon {
    poly(&[(1, 0), (0, 1), (-1, 0), (0, -1)])
}
