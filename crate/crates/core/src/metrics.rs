//! Width functionals, successive minima, polar and difference bodies.

use crate::error::{Error, Result};
use crate::point::{primitive_from_rational, Direction, Pt};
use crate::polygon::{convex_hull, HalfPlane, LatticePolygon};
use crate::rational::{rat, to_f64, Rat};
use num_bigint::BigInt;

use num_traits::{Signed, ToPrimitive, Zero};

/// Result of a lattice-width computation: the exact minimum and a primitive
/// direction attaining it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WidthResult {
    pub value: Rat,
    pub minimizer: Direction,
}

/// `max ⟨u,x⟩ − min ⟨u,x⟩` over the vertices.
pub fn width_in_direction(p: &LatticePolygon, u: Direction) -> Rat {
    let ux = rat(u.x);
    let uy = rat(u.y);
    let mut it = p.vertices().iter().map(|v| &ux * &v.x + &uy * &v.y);
    let first = it.next().expect("polygon has a vertex");
    let (mut lo, mut hi) = (first.clone(), first);
    for val in it {
        if val < lo {
            lo = val;
        } else if val > hi {
            hi = val;
        }
    }
    hi - lo
}

/// Minimum width over a finite direction set; ties broken by the canonical
/// ordering `(‖u‖², u_y, u_x)` on canonical representatives.
pub fn width_over_set(p: &LatticePolygon, dirs: &[Direction]) -> WidthResult {
    assert!(!dirs.is_empty(), "direction set must be non-empty");
    let mut best: Option<WidthResult> = None;
    for &d in dirs {
        let c = d.canonical();
        let w = width_in_direction(p, c);
        let better = match &best {
            None => true,
            Some(b) => {
                w < b.value
                    || (w == b.value
                        && direction_key(c) < direction_key(b.minimizer))
            }
        };
        if better {
            best = Some(WidthResult { value: w, minimizer: c });
        }
    }
    best.unwrap()
}

fn direction_key(d: Direction) -> (i64, i64, i64) {
    (d.norm_sq(), d.y, d.x)
}

/// Exact lattice width of a full-dimensional polygon.
///
/// The candidate directions are all primitive `u` with
/// `‖u‖₂ ≤ w(P, e₁) / (2ρ)`, where `ρ` is a certified rational lower bound on
/// the inscribed-circle radius: a disc of radius `ρ` inside `P` forces
/// `w(P,u) ≥ 2ρ‖u‖₂`, so larger directions cannot attain the minimum.
pub fn lattice_width(p: &LatticePolygon) -> Result<WidthResult> {
    if !p.is_full_dimensional() {
        return Err(Error::DegeneratePolygon);
    }
    let hps = p.halfplane_description()?;
    let rho = inscribed_radius_lower_bound(&hps);
    assert!(rho.is_positive());
    let gamma = width_in_direction(p, Direction { x: 1, y: 0 });
    // ‖u‖² ≤ (γ / 2ρ)²
    let bound = &gamma / (rat(2) * &rho);
    let bound_sq = &bound * &bound;
    let mut dirs = Vec::new();
    let max_coord = crate::rational::rat_floor_i64(&bound).max(1);
    for x in 0..=max_coord {
        for y in -max_coord..=max_coord {
            if x == 0 && y <= 0 {
                continue;
            }
            if rat(x * x + y * y) > bound_sq {
                continue;
            }
            if num_integer::Integer::gcd(&x, &y).abs() != 1 {
                continue;
            }
            dirs.push(Direction { x, y });
        }
    }
    debug_assert!(dirs.contains(&Direction { x: 1, y: 0 }));
    Ok(width_over_set(p, &dirs))
}

/// Largest `r` with `⟨aᵢ,x⟩ + r·νᵢ ≤ bᵢ` feasible, where `νᵢ ≥ ‖aᵢ‖₂` is a
/// rational upper enclosure. Any feasible point carries a disc of radius `r`
/// inside the polygon, so the optimum under-approximates the true inradius.
/// Solved exactly by enumerating the basis triples of the tiny LP.
fn inscribed_radius_lower_bound(hps: &[HalfPlane]) -> Rat {
    let nu: Vec<Rat> = hps
        .iter()
        .map(|h| sqrt_upper(&(&h.normal.0 * &h.normal.0 + &h.normal.1 * &h.normal.1)))
        .collect();
    let m = hps.len();
    let mut best = Rat::zero();
    for i in 0..m {
        for j in (i + 1)..m {
            for k in (j + 1)..m {
                if let Some((x, y, r)) = solve3(&hps[i], &nu[i], &hps[j], &nu[j], &hps[k], &nu[k]) {
                    if !r.is_positive() || r <= best {
                        continue;
                    }
                    let pt = Pt::new(x, y);
                    let feasible = hps
                        .iter()
                        .zip(&nu)
                        .all(|(h, v)| h.eval(&pt) + &r * v <= h.offset);
                    if feasible {
                        best = r;
                    }
                }
            }
        }
    }
    best
}

/// Rational upper bound on `√n` within `2⁻⁴⁰` of the true value.
fn sqrt_upper(n: &BigInt) -> Rat {
    debug_assert!(!n.is_negative());
    let shift = 40u32;
    let scaled = n << (2 * shift as usize);
    let root = scaled.sqrt();
    let denom = BigInt::from(1) << shift as usize;
    if &root * &root == scaled {
        Rat::new(root, denom)
    } else {
        Rat::new(root + 1, denom)
    }
}

fn solve3(
    h1: &HalfPlane,
    n1: &Rat,
    h2: &HalfPlane,
    n2: &Rat,
    h3: &HalfPlane,
    n3: &Rat,
) -> Option<(Rat, Rat, Rat)> {
    // rows (aᵢx, aᵢy, νᵢ | bᵢ), Cramer's rule
    let row = |h: &HalfPlane, n: &Rat| {
        (
            Rat::from_integer(h.normal.0.clone()),
            Rat::from_integer(h.normal.1.clone()),
            n.clone(),
            h.offset.clone(),
        )
    };
    let (a1, b1, c1, d1) = row(h1, n1);
    let (a2, b2, c2, d2) = row(h2, n2);
    let (a3, b3, c3, d3) = row(h3, n3);
    let det3 = |m: [[&Rat; 3]; 3]| -> Rat {
        m[0][0] * &(m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * &(m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * &(m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let det = det3([[&a1, &b1, &c1], [&a2, &b2, &c2], [&a3, &b3, &c3]]);
    if det.is_zero() {
        return None;
    }
    let dx = det3([[&d1, &b1, &c1], [&d2, &b2, &c2], [&d3, &b3, &c3]]);
    let dy = det3([[&a1, &d1, &c1], [&a2, &d2, &c2], [&a3, &d3, &c3]]);
    let dr = det3([[&a1, &b1, &d1], [&a2, &b2, &d2], [&a3, &b3, &d3]]);
    Some((dx / det.clone(), dy / det.clone(), dr / det))
}

/// Minkowski sum of two convex polygons by merging edge vectors; falls back
/// to the hull of pairwise sums for degenerate inputs.
pub fn minkowski_sum(p: &LatticePolygon, q: &LatticePolygon) -> LatticePolygon {
    if !p.is_full_dimensional() || !q.is_full_dimensional() {
        let mut pts = Vec::new();
        for a in p.vertices() {
            for b in q.vertices() {
                pts.push(a + b);
            }
        }
        return convex_hull(&pts).unwrap();
    }
    // Rotate so traversal starts at the bottom-most vertex (min y, then min
    // x); from there CCW edge vectors are sorted by angle within [0, 2π).
    let bottom_index = |poly: &LatticePolygon| -> usize {
        let mut idx = 0;
        for (i, v) in poly.vertices().iter().enumerate() {
            let best = &poly.vertices()[idx];
            if (&v.y, &v.x) < (&best.y, &best.x) {
                idx = i;
            }
        }
        idx
    };
    let edges_from = |poly: &LatticePolygon, start: usize| -> Vec<Pt> {
        let n = poly.num_vertices();
        (0..n)
            .map(|k| {
                let (a, b) = poly.edge((start + k) % n);
                b - a
            })
            .collect()
    };
    let (bp, bq) = (bottom_index(p), bottom_index(q));
    let ep = edges_from(p, bp);
    let eq = edges_from(q, bq);
    let angle_less = |a: &Pt, b: &Pt| -> bool {
        let upper = |v: &Pt| -> u8 {
            // 0 for angles in [0, π), 1 for [π, 2π)
            if v.y.is_positive() || (v.y.is_zero() && v.x.is_positive()) {
                0
            } else {
                1
            }
        };
        let (ha, hb) = (upper(a), upper(b));
        if ha != hb {
            return ha < hb;
        }
        a.cross(b).is_positive()
    };
    let mut cur = &p.vertices()[bp] + &q.vertices()[bq];
    let mut verts = vec![cur.clone()];
    let (mut i, mut j) = (0usize, 0usize);
    while i < ep.len() || j < eq.len() {
        let step = if i == ep.len() {
            let e = eq[j].clone();
            j += 1;
            e
        } else if j == eq.len() {
            let e = ep[i].clone();
            i += 1;
            e
        } else if angle_less(&ep[i], &eq[j]) {
            let e = ep[i].clone();
            i += 1;
            e
        } else {
            let e = eq[j].clone();
            j += 1;
            e
        };
        cur = &cur + &step;
        verts.push(cur.clone());
    }
    convex_hull(&verts).unwrap()
}

/// The difference body `P − P`, an origin-symmetric polygon.
pub fn difference_body(p: &LatticePolygon) -> LatticePolygon {
    minkowski_sum(p, &p.negate())
}

/// Polar polygon `P* = {y : ⟨x,y⟩ ≤ 1 ∀x ∈ P}`; vertices of the polar are
/// the reciprocals of the edges of `P`.
pub fn polar(p: &LatticePolygon) -> Result<LatticePolygon> {
    if !p.contains(&Pt::origin(), true) {
        return Err(Error::OriginNotInterior);
    }
    let hps = p.halfplane_description()?;
    let verts: Vec<Pt> = hps
        .iter()
        .map(|h| {
            debug_assert!(h.offset.is_positive());
            Pt::new(
                Rat::from_integer(h.normal.0.clone()) / &h.offset,
                Rat::from_integer(h.normal.1.clone()) / &h.offset,
            )
        })
        .collect();
    convex_hull(&verts)
}

/// Gauge of `z` with respect to a polygon with the origin interior:
/// `max_i ⟨aᵢ,z⟩ / bᵢ`.
pub fn gauge(hps: &[HalfPlane], z: &Pt) -> Rat {
    let mut best: Option<Rat> = None;
    for h in hps {
        let v = h.eval(z) / &h.offset;
        if best.as_ref().map_or(true, |b| v > *b) {
            best = Some(v);
        }
    }
    best.expect("nonempty half-plane description")
}

/// First successive minimum `λ₁(P) = min{λ ≥ 0 : λP ∩ ℤ² ≠ {o}}`.
///
/// Any minimizer lies in `g·P` for the initial bound
/// `g = min(gauge(e₁), gauge(e₂))`, so scanning the integer points of that
/// dilate's bounding box is exhaustive.
pub fn first_minimum(p: &LatticePolygon) -> Result<Rat> {
    if !p.contains(&Pt::origin(), true) {
        return Err(Error::OriginNotInterior);
    }
    let hps = p.halfplane_description()?;
    let g1 = gauge(&hps, &Pt::ints(1, 0));
    let g2 = gauge(&hps, &Pt::ints(0, 1));
    let mut best = if g1 < g2 { g1 } else { g2 };
    let dilate = p.scale(&best);
    let (xmin, xmax, ymin, ymax) = dilate.bbox();
    let x0 = crate::rational::rat_floor_i64(&xmin);
    let x1 = crate::rational::rat_ceil_i64(&xmax);
    let y0 = crate::rational::rat_floor_i64(&ymin);
    let y1 = crate::rational::rat_ceil_i64(&ymax);
    for x in x0..=x1 {
        for y in y0..=y1 {
            if x == 0 && y == 0 {
                continue;
            }
            let g = gauge(&hps, &Pt::ints(x, y));
            if g < best {
                best = g;
            }
        }
    }
    Ok(best)
}

/// Transference product. Non-symmetric: `λ₁(P)·w(P)`, using the identity
/// that the width equals the first minimum of the polar difference body.
/// Symmetric: `λ₁(P)·λ₁(P*) = λ₁(P)·w(P)/2`.
pub fn transference_product(p: &LatticePolygon, symmetric: bool) -> Result<Rat> {
    if !p.contains(&Pt::origin(), true) {
        return Err(Error::OriginNotInterior);
    }
    if symmetric && !p.is_centrally_symmetric() {
        return Err(Error::NotCentrallySymmetric);
    }
    let lambda1 = first_minimum(p)?;
    let w = lattice_width(p)?.value;
    Ok(if symmetric {
        lambda1 * w / rat(2)
    } else {
        lambda1 * w
    })
}

/// Euclidean minimal width: exact square plus a float rendering.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EuclideanWidth {
    /// Exact value of the squared minimal width.
    pub squared: Rat,
}

impl EuclideanWidth {
    pub fn approx(&self) -> f64 {
        to_f64(&self.squared).sqrt()
    }
}

/// Minimal Euclidean width of a full-dimensional polygon; attained in the
/// direction of one of the edge normals.
pub fn euclidean_min_width(p: &LatticePolygon) -> Result<EuclideanWidth> {
    if !p.is_full_dimensional() {
        return Err(Error::DegeneratePolygon);
    }
    let n = p.num_vertices();
    let mut best: Option<Rat> = None;
    for i in 0..n {
        let (a, b) = p.edge(i);
        let d = b - a;
        let (nx, ny) = primitive_from_rational(&d.y, &(-&d.x))?;
        let norm_sq = Rat::from_integer(&nx * &nx + &ny * &ny);
        let u = Direction {
            x: nx.to_i64().expect("normal fits i64"),
            y: ny.to_i64().expect("normal fits i64"),
        };
        let w = width_in_direction(p, u);
        let sq = &w * &w / norm_sq;
        if best.as_ref().map_or(true, |b| sq < *b) {
            best = Some(sq);
        }
    }
    Ok(EuclideanWidth {
        squared: best.unwrap(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::rational::frac;

    fn dir(x: i64, y: i64) -> Direction {
        Direction::new(x, y).unwrap()
    }

    /// Brute-force width over all primitive directions with `‖u‖∞ ≤ cap`;
    /// independent of the inradius-bounded enumeration.
    pub(crate) fn brute_force_width(p: &LatticePolygon, cap: i64) -> Rat {
        let mut best: Option<Rat> = None;
        for x in -cap..=cap {
            for y in -cap..=cap {
                if (x, y) == (0, 0) || num_integer::Integer::gcd(&x, &y).abs() != 1 {
                    continue;
                }
                let w = width_in_direction(p, Direction { x, y });
                if best.as_ref().map_or(true, |b| w < *b) {
                    best = Some(w);
                }
            }
        }
        best.unwrap()
    }

    #[test]
    fn directional_widths() {
        let p3 = catalog::scaled_standard_triangle(3);
        assert_eq!(width_in_direction(&p3, dir(1, 0)), rat(3));
        let t0 = catalog::terminal_triangle();
        assert_eq!(width_in_direction(&t0, dir(1, -1)), rat(2));
        assert_eq!(width_in_direction(&catalog::unit_square(), dir(1, 1)), rat(2));
    }

    #[test]
    fn widths_of_catalog_bodies() {
        let p3 = catalog::scaled_standard_triangle(3);
        let w = lattice_width(&p3).unwrap();
        assert_eq!(w.value, rat(3));
        assert_eq!(w.minimizer, dir(1, 0));

        let t0 = catalog::terminal_triangle();
        assert_eq!(brute_force_width(&t0, 5), rat(2));
        assert_eq!(lattice_width(&t0).unwrap().value, rat(2));

        let quad = catalog::hollow_width2_quadrilateral();
        assert_eq!(lattice_width(&quad).unwrap().value, rat(2));

        let seg = convex_hull(&[Pt::ints(0, 0), Pt::ints(1, 0)]).unwrap();
        assert!(matches!(lattice_width(&seg), Err(Error::DegeneratePolygon)));
    }

    #[test]
    fn width_over_direction_sets() {
        let base = crate::point::base_direction_set();
        // this copy of the width-3 triangle has all three widths equal to 3
        let copy = convex_hull(&[Pt::ints(-1, -2), Pt::ints(2, 1), Pt::ints(-1, 1)]).unwrap();
        for &d in &base {
            assert_eq!(width_in_direction(&copy, d), rat(3));
        }
        let p3 = catalog::scaled_standard_triangle(3);
        assert_eq!(width_over_set(&p3, &base).value, rat(3));
        let t0 = catalog::terminal_triangle();
        assert_eq!(width_over_set(&t0, &base).value, rat(2));
        assert_eq!(
            width_over_set(&t0, &[dir(1, 0)]).value,
            width_in_direction(&t0, dir(1, 0))
        );
    }

    #[test]
    fn difference_bodies() {
        // pairwise vertex differences + hull as the oracle
        let oracle = |p: &LatticePolygon| -> LatticePolygon {
            let mut pts = Vec::new();
            for a in p.vertices() {
                for b in p.vertices() {
                    pts.push(a - b);
                }
            }
            convex_hull(&pts).unwrap()
        };
        let d = catalog::standard_triangle();
        let db = difference_body(&d);
        assert_eq!(db, oracle(&d));
        let hexagon = convex_hull(&[
            Pt::ints(1, 0),
            Pt::ints(0, 1),
            Pt::ints(-1, 1),
            Pt::ints(-1, 0),
            Pt::ints(0, -1),
            Pt::ints(1, -1),
        ])
        .unwrap();
        assert_eq!(db, hexagon);

        let seg = convex_hull(&[Pt::ints(0, 0), Pt::ints(1, 0)]).unwrap();
        assert_eq!(
            difference_body(&seg),
            convex_hull(&[Pt::ints(-1, 0), Pt::ints(1, 0)]).unwrap()
        );

        let sym = catalog::symmetric_square();
        assert_eq!(difference_body(&sym), sym.scale(&rat(2)));
        assert_eq!(difference_body(&sym), oracle(&sym));
    }

    #[test]
    fn polar_bodies() {
        let sq = catalog::symmetric_square();
        let cross = catalog::blocking_cross();
        assert_eq!(polar(&sq).unwrap(), cross);
        assert_eq!(polar(&cross).unwrap(), sq);
        let t0 = catalog::terminal_triangle();
        assert_eq!(polar(&polar(&t0).unwrap()).unwrap(), t0);
        assert!(matches!(
            polar(&catalog::unit_square()),
            Err(Error::OriginNotInterior)
        ));
        // polar of the hexagon, edge by edge
        let h = catalog::extremal_hexagon();
        let ph = polar(&h).unwrap();
        let expected = convex_hull(&[
            Pt::new(frac(1, 3), frac(1, 3)),
            Pt::new(frac(-1, 3), frac(2, 3)),
            Pt::new(frac(-2, 3), frac(1, 3)),
            Pt::new(frac(-1, 3), frac(-1, 3)),
            Pt::new(frac(1, 3), frac(-2, 3)),
            Pt::new(frac(2, 3), frac(-1, 3)),
        ])
        .unwrap();
        assert_eq!(ph, expected);
    }

    #[test]
    fn first_minima() {
        let h = catalog::extremal_hexagon();
        // gauge of (1,0) against the edge 2x − y = 3 gives 2/3; brute force
        // over ‖z‖∞ ≤ 3 confirms nothing smaller
        let hps = h.halfplane_description().unwrap();
        let mut best = gauge(&hps, &Pt::ints(1, 0));
        for x in -3i64..=3 {
            for y in -3i64..=3 {
                if (x, y) != (0, 0) {
                    let g = gauge(&hps, &Pt::ints(x, y));
                    if g < best {
                        best = g;
                    }
                }
            }
        }
        assert_eq!(best, frac(2, 3));
        assert_eq!(first_minimum(&h).unwrap(), frac(2, 3));
        assert_eq!(first_minimum(&catalog::symmetric_square()).unwrap(), rat(1));
        assert_eq!(first_minimum(&catalog::centered_width3_triangle()).unwrap(), rat(1));
        assert!(matches!(
            first_minimum(&catalog::unit_square()),
            Err(Error::OriginNotInterior)
        ));
    }

    #[test]
    fn transference_products() {
        let t = catalog::centered_width3_triangle();
        assert_eq!(transference_product(&t, false).unwrap(), rat(3));
        let h = catalog::extremal_hexagon();
        assert_eq!(transference_product(&h, true).unwrap(), frac(4, 3));
        let sq = catalog::symmetric_square();
        assert_eq!(transference_product(&sq, true).unwrap(), rat(1));
        assert!(matches!(
            transference_product(&t, true),
            Err(Error::NotCentrallySymmetric)
        ));
    }

    #[test]
    fn euclidean_widths() {
        assert_eq!(
            euclidean_min_width(&catalog::unit_square()).unwrap().squared,
            rat(1)
        );
        let d = catalog::standard_triangle();
        assert_eq!(euclidean_min_width(&d).unwrap().squared, frac(1, 2));
        let p3 = catalog::scaled_standard_triangle(3);
        assert_eq!(euclidean_min_width(&p3).unwrap().squared, frac(9, 2));
    }

    #[test]
    fn width_equals_polar_difference_minimum() {
        for p in [
            catalog::scaled_standard_triangle(3),
            catalog::terminal_triangle(),
            catalog::extremal_hexagon(),
            catalog::hollow_width2_quadrilateral(),
        ] {
            let w = lattice_width(&p).unwrap().value;
            let dual = first_minimum(&polar(&difference_body(&p)).unwrap()).unwrap();
            assert_eq!(w, dual);
        }
    }
}
