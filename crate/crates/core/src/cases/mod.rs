//! Parametrized circumscriber families over the classified blocking
//! polygons, and the grid verifier that re-checks the width-3 bound on each
//! family numerically with exact-rational certificates at the optima.
//!
//! A family fixes a blocking polygon `B` with edges `e₀..e_{m−1}` (vertices
//! `b₀..b_{m−1}` counterclockwise) and one admissible region per edge. A
//! circumscriber has one vertex `pᵢ` per edge, and consecutive vertices are
//! colinear with the shared blocking vertex: `(pᵢ, bᵢ₊₁, pᵢ₊₁)`. Free
//! vertices come from the parameter vector; slide vertices move along the
//! line through their predecessor's blocking vertex; the rest are line-line
//! intersections.

mod algebra;
mod engine;

pub use algebra::{
    ellipse_max_check, hexagon_forced_diagonal_identity, hexagon_width_sum_check,
    kite_algebra_check, lagrange_regularity_check, standard_triangle_hyperbola_check,
    terminal_elimination_check, trapezoid_identity_check, EllipseMaxReport, TerminalReport,
};
pub use engine::{feasible_grid_samples, verify_all, verify_case, Certificate, VerificationReport};

use crate::error::{Error, Result};
use crate::point::{base_direction_set, orient, Direction, Pt};
use crate::polygon::{convex_hull, LatticePolygon};
use crate::rational::{rat, Rat};
use crate::region::{Cell, Constraint, Region};
use num_traits::{Signed, Zero};

/// The eight case families.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CaseName {
    Hex,
    Pent,
    Cross,
    Pyr,
    Kite,
    Trap,
    St,
    Term,
}

impl CaseName {
    pub const ALL: [CaseName; 8] = [
        CaseName::Hex,
        CaseName::Pent,
        CaseName::Cross,
        CaseName::Pyr,
        CaseName::Kite,
        CaseName::Trap,
        CaseName::St,
        CaseName::Term,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CaseName::Hex => "hex",
            CaseName::Pent => "pent",
            CaseName::Cross => "cross",
            CaseName::Pyr => "pyr",
            CaseName::Kite => "kite",
            CaseName::Trap => "trap",
            CaseName::St => "st",
            CaseName::Term => "term",
        }
    }

    pub fn parse(s: &str) -> Result<CaseName> {
        match s {
            "hex" => Ok(CaseName::Hex),
            "pent" => Ok(CaseName::Pent),
            "cross" => Ok(CaseName::Cross),
            "pyr" => Ok(CaseName::Pyr),
            "kite" => Ok(CaseName::Kite),
            "trap" => Ok(CaseName::Trap),
            "st" | "empty-triangle" => Ok(CaseName::St),
            "term" => Ok(CaseName::Term),
            other => Err(Error::UnknownCase(other.to_string())),
        }
    }
}

/// How each vertex slot is produced from the parameter vector.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SlotKind {
    /// Two parameters: the vertex coordinates.
    Free,
    /// One parameter in `[0, 1]`: position along the line through the
    /// previous slot's shared blocking vertex, within the region's box.
    Slide,
    /// No parameters: intersection of the two neighboring colinearity lines.
    Derived,
}

#[derive(Clone, Debug)]
pub struct CaseFamily {
    pub name: CaseName,
    pub blocking_polygon: LatticePolygon,
    pub interior_point: (i64, i64),
    /// One admissible region per edge slot.
    pub regions: Vec<Region>,
    /// Region label per slot, matching the case analysis (`"S1"`, ...).
    pub labels: Vec<&'static str>,
    pub slots: Vec<SlotKind>,
    pub direction_set: Vec<Direction>,
    /// Axis boxes of the parameter vector (free coordinates first, in slot
    /// order, then one `[0,1]` axis per slide slot).
    pub param_box: Vec<(f64, f64)>,
    /// Reflection normalization applied by the underlying analysis, if any.
    pub normalization: Option<&'static str>,
    pub(crate) cells_f64: Vec<Vec<Vec<(f64, f64, f64)>>>,
    pub(crate) bboxes: Vec<(Rat, Rat, Rat, Rat)>,
}

/// Box clip for unbounded regions when deriving parameter ranges.
pub const PARAM_CLIP: f64 = 8.0;

fn tri_cell(pts: &[(i64, i64)]) -> Cell {
    let poly = convex_hull(&pts.iter().map(|&(x, y)| Pt::ints(x, y)).collect::<Vec<_>>()).unwrap();
    let constraints = poly
        .halfplane_description()
        .unwrap()
        .into_iter()
        .map(|hp| Constraint { hp, strict: false })
        .collect();
    Cell { constraints }
}

fn strip_cell(constraints: &[((i64, i64), i64)]) -> Cell {
    Cell {
        constraints: constraints
            .iter()
            .map(|&(n, c)| Constraint::closed(n, rat(c)))
            .collect(),
    }
}

struct CaseDef {
    blocking: &'static [(i64, i64)],
    interior: (i64, i64),
    labels: &'static [&'static str],
    slots: &'static [SlotKind],
    normalization: Option<&'static str>,
}

fn case_def(name: CaseName) -> (CaseDef, Vec<Region>) {
    use SlotKind::*;
    match name {
        CaseName::Hex => (
            CaseDef {
                blocking: &[(-1, -1), (0, -1), (1, 0), (1, 1), (0, 1), (-1, 0)],
                interior: (0, 0),
                labels: &["S1", "S2", "S3", "S4", "S5", "S6"],
                slots: &[Free, Derived, Free, Derived, Free, Derived],
                normalization: None,
            },
            vec![
                Region::single(tri_cell(&[(-1, -1), (-1, -2), (0, -1)])),
                Region::single(tri_cell(&[(0, -1), (1, -1), (1, 0)])),
                Region::single(tri_cell(&[(1, 0), (2, 1), (1, 1)])),
                Region::single(tri_cell(&[(1, 1), (1, 2), (0, 1)])),
                Region::single(tri_cell(&[(0, 1), (-1, 1), (-1, 0)])),
                Region::single(tri_cell(&[(-1, 0), (-2, -1), (-1, -1)])),
            ],
        ),
        CaseName::Pent => (
            CaseDef {
                blocking: &[(-1, -1), (0, -1), (1, 0), (0, 1), (-1, 0)],
                interior: (0, 0),
                labels: &["S1", "S2", "S3", "S4", "S5"],
                slots: &[Free, Derived, Free, Slide, Derived],
                normalization: None,
            },
            vec![
                Region::single(tri_cell(&[(-1, -1), (-1, -2), (0, -1)])),
                Region::single(tri_cell(&[(0, -1), (2, -1), (1, 0)])),
                Region {
                    cells: vec![
                        tri_cell(&[(1, 0), (2, 1), (0, 1)]),
                        tri_cell(&[(1, 0), (1, 2), (0, 1)]),
                    ],
                },
                Region::single(tri_cell(&[(0, 1), (-1, 2), (-1, 0)])),
                Region::single(tri_cell(&[(-1, 0), (-2, -1), (-1, -1)])),
            ],
        ),
        CaseName::Cross => (
            CaseDef {
                blocking: &[(-1, 0), (0, -1), (1, 0), (0, 1)],
                interior: (0, 0),
                labels: &["S3", "S4", "S1", "S2"],
                slots: &[Free, Derived, Free, Derived],
                normalization: None,
            },
            vec![
                Region {
                    cells: vec![
                        tri_cell(&[(-1, 0), (-2, -1), (0, -1)]),
                        tri_cell(&[(-1, 0), (-1, -2), (0, -1)]),
                    ],
                },
                Region {
                    cells: vec![
                        tri_cell(&[(0, -1), (1, -2), (1, 0)]),
                        tri_cell(&[(0, -1), (2, -1), (1, 0)]),
                    ],
                },
                Region {
                    cells: vec![
                        tri_cell(&[(1, 0), (2, 1), (0, 1)]),
                        tri_cell(&[(1, 0), (1, 2), (0, 1)]),
                    ],
                },
                Region {
                    cells: vec![
                        tri_cell(&[(0, 1), (-1, 2), (-1, 0)]),
                        tri_cell(&[(0, 1), (-2, 1), (-1, 0)]),
                    ],
                },
            ],
        ),
        CaseName::Pyr => (
            CaseDef {
                blocking: &[(-1, 0), (1, 0), (0, 1)],
                interior: (0, 0),
                labels: &["S3", "S1", "S2"],
                slots: &[Derived, Free, Slide],
                normalization: Some("reflection x -> -x"),
            },
            vec![
                Region::single(tri_cell(&[(1, 0), (3, -2), (1, -1)])),
                Region::single(tri_cell(&[(0, 1), (1, 1), (1, 2)])),
                // {-1 <= y <= 1, x + 2y <= -1}
                Region::single(strip_cell(&[((0, -1), 1), ((0, 1), 1), ((1, 2), -1)])),
            ],
        ),
        CaseName::Kite => (
            CaseDef {
                blocking: &[(-1, -1), (0, -1), (1, 1), (-1, 0)],
                interior: (0, 0),
                labels: &["S1", "S2", "S3", "S4"],
                slots: &[Free, Derived, Free, Derived],
                normalization: None,
            },
            vec![
                Region::single(tri_cell(&[(-1, -1), (-1, -3), (0, -1)])),
                Region {
                    cells: vec![
                        tri_cell(&[(0, -1), (1, -1), (1, 1)]),
                        tri_cell(&[(0, -1), (3, 2), (1, 1)]),
                    ],
                },
                Region {
                    cells: vec![
                        tri_cell(&[(1, 1), (2, 3), (-1, 0)]),
                        tri_cell(&[(1, 1), (-1, 1), (-1, 0)]),
                    ],
                },
                Region::single(tri_cell(&[(-1, 0), (-3, -1), (-1, -1)])),
            ],
        ),
        CaseName::Trap => (
            CaseDef {
                blocking: &[(-1, 0), (1, 0), (0, 1), (-1, 1)],
                interior: (0, 0),
                labels: &["S1", "S2", "S3", "S4"],
                slots: &[Free, Derived, Free, Derived],
                normalization: None,
            },
            vec![
                Region {
                    cells: vec![
                        tri_cell(&[(-1, 0), (-1, -2), (1, 0)]),
                        tri_cell(&[(-1, 0), (1, -2), (1, 0)]),
                        tri_cell(&[(-1, 0), (4, -2), (1, 0)]),
                    ],
                },
                // {0 <= y <= 1, x + y >= 2}
                Region::single(strip_cell(&[((0, -1), 0), ((0, 1), 1), ((-1, -1), -2)])),
                Region::single(tri_cell(&[(-1, 1), (-1, 2), (0, 1)])),
                // {x <= -1, 0 <= y <= 1}
                Region::single(strip_cell(&[((1, 0), -1), ((0, -1), 0), ((0, 1), 1)])),
            ],
        ),
        CaseName::St => (
            CaseDef {
                blocking: &[(-1, -1), (0, -1), (-1, 0)],
                interior: (0, 0),
                labels: &["S1", "S2", "S3"],
                slots: &[Derived, Free, Slide],
                normalization: Some("reflection over y = x"),
            },
            vec![
                // {-1 <= x <= 0, y <= 2x - 1}
                Region::single(strip_cell(&[((-1, 0), 1), ((1, 0), 0), ((-2, 1), -1)])),
                Region::single(tri_cell(&[(0, 0), (1, 1), (2, 3), (1, 2)])),
                // {-1 <= y <= 0, y >= x + 1}
                Region::single(strip_cell(&[((0, -1), 1), ((0, 1), 0), ((1, -1), -1)])),
            ],
        ),
        CaseName::Term => (
            CaseDef {
                blocking: &[(-1, -1), (1, 0), (0, 1)],
                interior: (0, 0),
                labels: &["S2", "S3", "S1"],
                slots: &[Derived, Free, Slide],
                normalization: Some("reflection over y = x"),
            },
            vec![
                Region::single(tri_cell(&[(1, -1), (2, -1), (1, 0)])),
                Region::single(tri_cell(&[(1, 2), (1, 3), (0, 1)])),
                Region::single(tri_cell(&[(-2, -1), (-3, -2), (-1, -1)])),
            ],
        ),
    }
}

fn region_bbox(region: &Region) -> (Rat, Rat, Rat, Rat) {
    let clip = rat(PARAM_CLIP as i64);
    let frame = convex_hull(&[
        Pt::new(-&clip, -&clip),
        Pt::new(clip.clone(), -&clip),
        Pt::new(clip.clone(), clip.clone()),
        Pt::new(-&clip, clip.clone()),
    ])
    .unwrap();
    let mut bounds: Option<(Rat, Rat, Rat, Rat)> = None;
    for cell in &region.cells {
        let mut poly = frame.clone();
        let mut alive = true;
        for c in &cell.constraints {
            match poly.clip(&c.hp) {
                Some(q) => poly = q,
                None => {
                    alive = false;
                    break;
                }
            }
        }
        if !alive {
            continue;
        }
        let (x0, x1, y0, y1) = poly.bbox();
        bounds = Some(match bounds {
            None => (x0, x1, y0, y1),
            Some((a0, a1, b0, b1)) => (a0.min(x0), a1.max(x1), b0.min(y0), b1.max(y1)),
        });
    }
    bounds.expect("region meets the parameter clip box")
}

/// Builds the named family with its regions, parameter boxes and float
/// mirrors of the region constraints.
pub fn build_case(name: CaseName) -> CaseFamily {
    let (def, regions) = case_def(name);
    let blocking = convex_hull(
        &def.blocking
            .iter()
            .map(|&(x, y)| Pt::ints(x, y))
            .collect::<Vec<_>>(),
    )
    .unwrap();
    debug_assert_eq!(blocking.num_vertices(), def.blocking.len());
    let bboxes: Vec<(Rat, Rat, Rat, Rat)> = regions.iter().map(region_bbox).collect();
    let mut param_box = Vec::new();
    for (i, kind) in def.slots.iter().enumerate() {
        match kind {
            SlotKind::Free => {
                let (x0, x1, y0, y1) = &bboxes[i];
                param_box.push((crate::rational::to_f64(x0), crate::rational::to_f64(x1)));
                param_box.push((crate::rational::to_f64(y0), crate::rational::to_f64(y1)));
            }
            SlotKind::Slide => {}
            SlotKind::Derived => {}
        }
    }
    for kind in def.slots.iter() {
        if matches!(kind, SlotKind::Slide) {
            param_box.push((0.0, 1.0));
        }
    }
    let cells_f64 = regions
        .iter()
        .map(|r| {
            r.cells
                .iter()
                .map(|c| {
                    c.constraints
                        .iter()
                        .map(|cn| {
                            (
                                crate::rational::to_f64(&Rat::from_integer(cn.hp.normal.0.clone())),
                                crate::rational::to_f64(&Rat::from_integer(cn.hp.normal.1.clone())),
                                crate::rational::to_f64(&cn.hp.offset),
                            )
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    CaseFamily {
        name,
        blocking_polygon: blocking,
        interior_point: def.interior,
        regions,
        labels: def.labels.to_vec(),
        slots: def.slots.to_vec(),
        direction_set: base_direction_set(),
        param_box,
        normalization: def.normalization,
        cells_f64,
        bboxes,
    }
}

impl CaseFamily {
    pub fn param_count(&self) -> usize {
        self.param_box.len()
    }

    /// Region labeled as in the case analysis.
    pub fn region_labeled(&self, label: &str) -> Option<&Region> {
        self.labels
            .iter()
            .position(|&l| l == label)
            .map(|i| &self.regions[i])
    }

    pub(crate) fn blocking_vertex(&self, i: usize) -> &Pt {
        let n = self.blocking_polygon.num_vertices();
        &self.blocking_polygon.vertices()[i % n]
    }
}

fn line_through(a: &Pt, b: &Pt) -> Option<(Rat, Rat, Rat)> {
    // ⟨(A, B), x⟩ = C through a and b
    let d = b - a;
    if d.x.is_zero() && d.y.is_zero() {
        return None;
    }
    let aa = d.y.clone();
    let bb = -&d.x;
    let cc = &aa * &a.x + &bb * &a.y;
    Some((aa, bb, cc))
}

/// Exact circumscriber for a parameter vector: `None` when the colinearity
/// system is unsolvable, a vertex leaves its region, the interior count is
/// not one at the designated point, or a blocking point escapes the family's
/// blocking polygon.
pub fn instantiate(family: &CaseFamily, params: &[Rat]) -> Option<LatticePolygon> {
    assert_eq!(params.len(), family.param_count(), "parameter arity");
    let m = family.slots.len();
    let mut slots: Vec<Option<Pt>> = vec![None; m];
    let mut it = params.iter();
    // free slots consume coordinate pairs in slot order
    for (i, kind) in family.slots.iter().enumerate() {
        if matches!(kind, SlotKind::Free) {
            let x = it.next().unwrap().clone();
            let y = it.next().unwrap().clone();
            slots[i] = Some(Pt::new(x, y));
        }
    }
    // slides move along the line through the previous slot's blocking vertex
    for (i, kind) in family.slots.iter().enumerate() {
        if matches!(kind, SlotKind::Slide) {
            let sigma = it.next().unwrap();
            let prev = slots[(i + m - 1) % m].clone()?;
            let b = family.blocking_vertex(i);
            let dir = b - &prev;
            let (t0, t1) = slide_range(&family.bboxes[i], b, &dir)?;
            let t = &t0 + (&t1 - &t0) * sigma;
            if !t.is_positive() {
                return None;
            }
            slots[i] = Some(b + &dir.scale(&t));
        }
    }
    for (i, kind) in family.slots.iter().enumerate() {
        if matches!(kind, SlotKind::Derived) {
            let prev = slots[(i + m - 1) % m].clone()?;
            let next = slots[(i + 1) % m].clone()?;
            let b_in = family.blocking_vertex(i);
            let b_out = family.blocking_vertex(i + 1);
            let l1 = line_through(&prev, b_in)?;
            let l2 = line_through(b_out, &next)?;
            let det = &l1.0 * &l2.1 - &l1.1 * &l2.0;
            if det.is_zero() {
                // coincident lines: the slot degenerates onto the blocking
                // edge; distinct parallels are infeasible
                let on = &l1.0 * &b_out.x + &l1.1 * &b_out.y == l1.2;
                if !on {
                    return None;
                }
                slots[i] = Some(Pt::new(
                    (&b_in.x + &b_out.x) / rat(2),
                    (&b_in.y + &b_out.y) / rat(2),
                ));
            } else {
                let x = (&l1.2 * &l2.1 - &l1.1 * &l2.2) / &det;
                let y = (&l1.0 * &l2.2 - &l1.2 * &l2.0) / &det;
                slots[i] = Some(Pt::new(x, y));
            }
        }
    }
    let pts: Vec<Pt> = slots.into_iter().map(|s| s.unwrap()).collect();
    // every vertex in its region
    for (i, p) in pts.iter().enumerate() {
        if !family.regions[i].contains(p) {
            return None;
        }
    }
    // each shared blocking vertex strictly between its neighbors
    for i in 0..m {
        let b = family.blocking_vertex(i + 1);
        let (a, c) = (&pts[i], &pts[(i + 1) % m]);
        if !orient(a, c, b).is_zero() {
            return None;
        }
        let d = c - a;
        let t = (b - a).dot(&d);
        if !t.is_positive() || t >= d.dot(&d) {
            return None;
        }
    }
    let poly = convex_hull(&pts).ok()?;
    if !poly.is_full_dimensional() {
        return None;
    }
    if poly.lattice_points(true) != vec![family.interior_point] {
        return None;
    }
    // blocking points stay inside the family's blocking polygon
    let data = crate::maximality::blocking_data(&poly).ok()?;
    for pts_on_edge in &data.per_edge {
        for &(x, y) in pts_on_edge {
            if !family.blocking_polygon.contains(&Pt::ints(x, y), false) {
                return None;
            }
        }
    }
    Some(poly)
}

/// Parameter interval of `b + t·dir` within an axis box, `t ≥ 0`.
fn slide_range(bbox: &(Rat, Rat, Rat, Rat), b: &Pt, dir: &Pt) -> Option<(Rat, Rat)> {
    let (x0, x1, y0, y1) = bbox;
    let mut lo = Rat::zero();
    let mut hi: Option<Rat> = None;
    for (pos, d, lo_b, hi_b) in [(&b.x, &dir.x, x0, x1), (&b.y, &dir.y, y0, y1)] {
        if d.is_zero() {
            if pos < lo_b || pos > hi_b {
                return None;
            }
            continue;
        }
        let t_a = (lo_b - pos) / d;
        let t_b = (hi_b - pos) / d;
        let (t_min, t_max) = if t_a <= t_b { (t_a, t_b) } else { (t_b, t_a) };
        if t_min > lo {
            lo = t_min;
        }
        hi = Some(match hi {
            None => t_max,
            Some(h) => h.min(t_max),
        });
    }
    let hi = hi?;
    if hi <= lo {
        None
    } else {
        Some((lo, hi))
    }
}

/// Exact width over the family's direction set.
pub fn exact_family_width(family: &CaseFamily, poly: &LatticePolygon) -> Rat {
    crate::metrics::width_over_set(poly, &family.direction_set).value
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn regions_transcribed() {
        let hex = build_case(CaseName::Hex);
        let s1 = hex.region_labeled("S1").unwrap();
        for v in [(-1, -1), (-1, -2), (0, -1)] {
            assert!(s1.contains(&Pt::ints(v.0, v.1)));
        }
        assert!(!s1.contains(&Pt::ints(0, 0)));

        let term = build_case(CaseName::Term);
        let s3 = term.region_labeled("S3").unwrap();
        for v in [(1, 2), (1, 3), (0, 1)] {
            assert!(s3.contains(&Pt::ints(v.0, v.1)));
        }

        let trap = build_case(CaseName::Trap);
        let s3 = trap.region_labeled("S3").unwrap();
        for v in [(-1, 1), (-1, 2), (0, 1)] {
            assert!(s3.contains(&Pt::ints(v.0, v.1)));
        }
        assert!(!s3.contains(&Pt::ints(1, 1)));

        assert!(CaseName::parse("empty-triangle").is_ok());
        assert!(CaseName::parse("nope").is_err());
    }

    #[test]
    fn param_counts() {
        let expect = [
            (CaseName::Hex, 6),
            (CaseName::Pent, 5),
            (CaseName::Cross, 4),
            (CaseName::Kite, 4),
            (CaseName::Trap, 4),
            (CaseName::Pyr, 3),
            (CaseName::St, 3),
            (CaseName::Term, 3),
        ];
        for (name, d) in expect {
            assert_eq!(build_case(name).param_count(), d, "{name:?}");
        }
    }

    #[test]
    fn hexagon_corner_instantiates_width3_triangle() {
        let hex = build_case(CaseName::Hex);
        // free vertices at the degenerate corners
        let params = vec![
            rat(-1),
            rat(-2), // slot 0
            rat(2),
            rat(1), // slot 2
            rat(-1),
            rat(1), // slot 4
        ];
        let p = instantiate(&hex, &params).expect("degenerate corner is feasible");
        let tri = convex_hull(&[Pt::ints(-1, -2), Pt::ints(2, 1), Pt::ints(-1, 1)]).unwrap();
        assert_eq!(p, tri);
        assert_eq!(exact_family_width(&hex, &p), rat(3));
        assert!(crate::unimodular::are_equivalent(
            &p,
            &crate::catalog::scaled_standard_triangle(3)
        )
        .unwrap()
        .is_some());
    }

    #[test]
    fn hexagon_interior_point_is_respected() {
        let hex = build_case(CaseName::Hex);
        // generic feasible point near the regular configuration
        let params = vec![
            frac(-2, 3),
            frac(-4, 3),
            frac(4, 3),
            frac(2, 3),
            frac(-2, 3),
            frac(2, 3),
        ];
        let p = instantiate(&hex, &params).expect("regular configuration feasible");
        assert_eq!(p.lattice_points(true), vec![(0, 0)]);
        let w = exact_family_width(&hex, &p);
        assert!(w < rat(3));
    }

    #[test]
    fn infeasible_params_rejected() {
        let hex = build_case(CaseName::Hex);
        // slot 0 outside its region
        let params = vec![rat(3), rat(3), rat(2), rat(1), rat(-1), rat(1)];
        assert!(instantiate(&hex, &params).is_none());
    }
}
