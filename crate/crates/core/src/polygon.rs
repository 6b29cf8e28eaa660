//! Convex polygons with exact rational vertices.
//!
//! A `LatticePolygon` stores its vertices counterclockwise, strictly convex
//! (no three consecutive vertices colinear), starting from the
//! lexicographically smallest vertex. Points and segments are allowed as
//! degenerate polygons with one or two vertices.

use crate::error::{Error, Result};
use crate::point::{orient, primitive_from_rational, Pt};
use crate::rational::{rat_ceil_i64, rat_floor_i64, Rat};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Closed half-plane `⟨normal, x⟩ ≤ offset` with a primitive integer normal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HalfPlane {
    pub normal: (BigInt, BigInt),
    pub offset: Rat,
}

impl HalfPlane {
    pub fn new(normal: (BigInt, BigInt), offset: Rat) -> Self {
        HalfPlane { normal, offset }
    }

    pub fn eval(&self, p: &Pt) -> Rat {
        Rat::from_integer(self.normal.0.clone()) * &p.x
            + Rat::from_integer(self.normal.1.clone()) * &p.y
    }

    /// Signed slack `offset − ⟨normal, p⟩`; nonnegative inside.
    pub fn slack(&self, p: &Pt) -> Rat {
        &self.offset - self.eval(p)
    }

    pub fn contains(&self, p: &Pt, strict: bool) -> bool {
        let s = self.slack(p);
        if strict {
            s.is_positive()
        } else {
            !s.is_negative()
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LatticePolygon {
    verts: Vec<Pt>,
}

impl std::fmt::Debug for LatticePolygon {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Polygon{:?}", self.verts)
    }
}

/// Convex hull by monotone chain; drops interior and colinear points.
pub fn convex_hull(points: &[Pt]) -> Result<LatticePolygon> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() == 1 {
        return Ok(LatticePolygon { verts: pts });
    }
    // all colinear → keep the two extreme points
    let colinear = {
        let a = &pts[0];
        let b = pts.last().unwrap();
        pts.iter().all(|p| orient(a, b, p).is_zero())
    };
    if colinear {
        return Ok(LatticePolygon {
            verts: vec![pts[0].clone(), pts.last().unwrap().clone()],
        });
    }
    let mut lower: Vec<Pt> = Vec::new();
    for p in &pts {
        while lower.len() >= 2
            && !orient(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive()
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Pt> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && !orient(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive()
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    Ok(LatticePolygon { verts: lower })
}

impl LatticePolygon {
    /// Builds from a vertex list that must already be a strictly convex CCW
    /// cycle; the list is rotated to start at the lexicographic minimum.
    pub fn from_vertices(verts: Vec<Pt>) -> Result<Self> {
        let hull = convex_hull(&verts)?;
        if hull.verts.len() != verts.len() {
            return Err(Error::InvalidPolygon(
                "vertex list is not a strictly convex cycle".into(),
            ));
        }
        Ok(hull)
    }

    pub fn vertices(&self) -> &[Pt] {
        &self.verts
    }

    pub fn num_vertices(&self) -> usize {
        self.verts.len()
    }

    /// 0 for a point, 1 for a segment, 2 otherwise.
    pub fn dim(&self) -> usize {
        match self.verts.len() {
            1 => 0,
            2 => 1,
            _ => 2,
        }
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim() == 2
    }

    pub fn has_integer_vertices(&self) -> bool {
        self.verts.iter().all(|p| p.is_integer())
    }

    /// Edge `i` runs from vertex `i` to vertex `i+1` (cyclically).
    pub fn edge(&self, i: usize) -> (&Pt, &Pt) {
        (&self.verts[i], &self.verts[(i + 1) % self.verts.len()])
    }

    pub fn num_edges(&self) -> usize {
        if self.verts.len() >= 3 {
            self.verts.len()
        } else if self.verts.len() == 2 {
            1
        } else {
            0
        }
    }

    pub fn translate(&self, v: &Pt) -> LatticePolygon {
        convex_hull(&self.verts.iter().map(|p| p + v).collect::<Vec<_>>()).unwrap()
    }

    pub fn scale(&self, k: &Rat) -> LatticePolygon {
        assert!(k.is_positive(), "scale factor must be positive");
        convex_hull(&self.verts.iter().map(|p| p.scale(k)).collect::<Vec<_>>()).unwrap()
    }

    pub fn negate(&self) -> LatticePolygon {
        convex_hull(&self.verts.iter().map(|p| -p).collect::<Vec<_>>()).unwrap()
    }

    pub fn is_centrally_symmetric(&self) -> bool {
        *self == self.negate()
    }

    /// Closed or strict membership.
    pub fn contains(&self, p: &Pt, strict: bool) -> bool {
        match self.verts.len() {
            1 => !strict && *p == self.verts[0],
            2 => {
                if strict {
                    // interior of a segment in the plane is empty
                    false
                } else {
                    let (a, b) = (&self.verts[0], &self.verts[1]);
                    if !orient(a, b, p).is_zero() {
                        return false;
                    }
                    let d = b - a;
                    let t = (p - a).dot(&d);
                    !t.is_negative() && t <= d.dot(&d)
                }
            }
            _ => {
                let n = self.verts.len();
                for i in 0..n {
                    let o = orient(&self.verts[i], &self.verts[(i + 1) % n], p);
                    if strict {
                        if !o.is_positive() {
                            return false;
                        }
                    } else if o.is_negative() {
                        return false;
                    }
                }
                true
            }
        }
    }

    /// Exact shoelace area; zero for degenerate polygons.
    pub fn area(&self) -> Rat {
        if self.verts.len() < 3 {
            return Rat::zero();
        }
        let n = self.verts.len();
        let mut twice = Rat::zero();
        for i in 0..n {
            twice += self.verts[i].cross(&self.verts[(i + 1) % n]);
        }
        debug_assert!(twice.is_positive());
        twice / crate::rational::rat(2)
    }

    /// Axis-aligned bounding box `(xmin, xmax, ymin, ymax)`.
    pub fn bbox(&self) -> (Rat, Rat, Rat, Rat) {
        let mut xs: Vec<&Rat> = self.verts.iter().map(|p| &p.x).collect();
        xs.sort();
        let mut ys: Vec<&Rat> = self.verts.iter().map(|p| &p.y).collect();
        ys.sort();
        (
            xs[0].clone(),
            xs[xs.len() - 1].clone(),
            ys[0].clone(),
            ys[ys.len() - 1].clone(),
        )
    }

    /// Integer points in the closed polygon or its interior, sorted
    /// lexicographically.
    pub fn lattice_points(&self, interior_only: bool) -> Vec<(i64, i64)> {
        let (xmin, xmax, ymin, ymax) = self.bbox();
        let x0 = rat_ceil_i64(&xmin);
        let x1 = rat_floor_i64(&xmax);
        let y0 = rat_ceil_i64(&ymin);
        let y1 = rat_floor_i64(&ymax);
        let mut out = Vec::new();
        for x in x0..=x1 {
            for y in y0..=y1 {
                if self.contains(&Pt::ints(x, y), interior_only) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Number of interior lattice points.
    pub fn interior_count(&self) -> usize {
        self.lattice_points(true).len()
    }

    /// Number of lattice points in the closed polygon.
    pub fn total_count(&self) -> usize {
        self.lattice_points(false).len()
    }

    /// Irredundant half-plane description, one per edge, with primitive
    /// integer normals. Requires a full-dimensional polygon.
    pub fn halfplane_description(&self) -> Result<Vec<HalfPlane>> {
        if !self.is_full_dimensional() {
            return Err(Error::DegeneratePolygon);
        }
        let n = self.verts.len();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let (a, b) = self.edge(i);
            let d = b - a;
            // outward normal of a CCW edge
            let (nx, ny) = primitive_from_rational(&d.y, &(-&d.x))?;
            let hp = HalfPlane::new((nx, ny), Rat::zero());
            let offset = hp.eval(a);
            out.push(HalfPlane::new(hp.normal, offset));
        }
        Ok(out)
    }

    /// Clips by a closed half-plane. Returns `None` when the intersection is
    /// empty. The result may be degenerate.
    pub fn clip(&self, hp: &HalfPlane) -> Option<LatticePolygon> {
        let n = self.verts.len();
        if n < 3 {
            let kept: Vec<Pt> = self
                .verts
                .iter()
                .filter(|p| hp.contains(p, false))
                .cloned()
                .collect();
            // a clipped segment may cross the line
            if n == 2 {
                let (a, b) = (&self.verts[0], &self.verts[1]);
                let (sa, sb) = (hp.slack(a), hp.slack(b));
                if sa.is_negative() != sb.is_negative() && !sa.is_zero() && !sb.is_zero() {
                    let t = &sa / (&sa - &sb);
                    let p = a + &(b - a).scale(&t);
                    let mut pts = kept;
                    pts.push(p);
                    return convex_hull(&pts).ok();
                }
            }
            return if kept.is_empty() {
                None
            } else {
                convex_hull(&kept).ok()
            };
        }
        let mut out: Vec<Pt> = Vec::with_capacity(n + 1);
        for i in 0..n {
            let cur = &self.verts[i];
            let nxt = &self.verts[(i + 1) % n];
            let sc = hp.slack(cur);
            let sn = hp.slack(nxt);
            if !sc.is_negative() {
                out.push(cur.clone());
            }
            if sc.is_negative() != sn.is_negative() && !sc.is_zero() && !sn.is_zero() {
                let t = &sc / (&sc - &sn);
                out.push(cur + &(nxt - cur).scale(&t));
            }
        }
        if out.is_empty() {
            None
        } else {
            convex_hull(&out).ok()
        }
    }
}

/// Bounded intersection of half-planes, computed from pairwise line
/// crossings. Returns `None` when empty; the caller must know the system is
/// bounded (true whenever it came from a polygon).
pub fn halfplane_intersection(hps: &[HalfPlane]) -> Option<LatticePolygon> {
    let m = hps.len();
    let mut pts: Vec<Pt> = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            if let Some(p) = line_intersection(&hps[i], &hps[j]) {
                if hps.iter().all(|h| h.contains(&p, false)) {
                    pts.push(p);
                }
            }
        }
    }
    if pts.is_empty() {
        return None;
    }
    convex_hull(&pts).ok()
}

/// Intersection point of the boundary lines of two half-planes.
pub fn line_intersection(a: &HalfPlane, b: &HalfPlane) -> Option<Pt> {
    let a0 = Rat::from_integer(a.normal.0.clone());
    let a1 = Rat::from_integer(a.normal.1.clone());
    let b0 = Rat::from_integer(b.normal.0.clone());
    let b1 = Rat::from_integer(b.normal.1.clone());
    let det = &a0 * &b1 - &a1 * &b0;
    if det.is_zero() {
        return None;
    }
    let x = (&a.offset * &b1 - &a1 * &b.offset) / det.clone();
    let y = (&a0 * &b.offset - &a.offset * &b0) / det;
    Some(Pt::new(x, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::rational::{frac, rat};

    #[test]
    fn hull_drops_interior_points() {
        let pts = vec![Pt::ints(0, 0), Pt::ints(3, 0), Pt::ints(0, 3), Pt::ints(1, 1)];
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.vertices(), &[Pt::ints(0, 0), Pt::ints(3, 0), Pt::ints(0, 3)]);
    }

    #[test]
    fn hull_degenerate_inputs() {
        let single = convex_hull(&[Pt::ints(0, 0)]).unwrap();
        assert_eq!(single.vertices(), &[Pt::ints(0, 0)]);
        assert_eq!(single.dim(), 0);
        let seg = convex_hull(&[Pt::ints(2, 1), Pt::ints(0, 0), Pt::ints(1, 0), Pt::ints(2, 0)]);
        assert!(seg.is_err() || seg.as_ref().unwrap().num_vertices() >= 2);
        let colin = convex_hull(&[Pt::ints(0, 0), Pt::ints(1, 0), Pt::ints(2, 0)]).unwrap();
        assert_eq!(colin.vertices(), &[Pt::ints(0, 0), Pt::ints(2, 0)]);
        assert!(convex_hull(&[]).is_err());
    }

    #[test]
    fn hull_terminal_triangle() {
        let t0 = convex_hull(&[Pt::ints(-1, -1), Pt::ints(0, 1), Pt::ints(1, 0)]).unwrap();
        assert_eq!(t0.num_vertices(), 3);
        assert_eq!(t0, catalog::terminal_triangle());
    }

    #[test]
    fn containment() {
        let p = catalog::scaled_standard_triangle(3);
        assert!(p.contains(&Pt::ints(1, 1), true));
        assert!(!p.contains(&Pt::ints(0, 0), true));
        assert!(p.contains(&Pt::ints(0, 0), false));
        // sign checks against the three edge lines of the terminal triangle
        let t0 = catalog::terminal_triangle();
        for hp in t0.halfplane_description().unwrap() {
            assert!(hp.contains(&Pt::origin(), true));
        }
        assert!(t0.contains(&Pt::origin(), true));
    }

    #[test]
    fn areas() {
        assert_eq!(catalog::scaled_standard_triangle(3).area(), frac(9, 2));
        assert_eq!(catalog::terminal_triangle().area(), frac(3, 2));
        let seg = convex_hull(&[Pt::ints(0, 0), Pt::ints(2, 1)]).unwrap();
        assert_eq!(seg.area(), rat(0));
    }

    #[test]
    fn lattice_point_enumeration() {
        let p3 = catalog::scaled_standard_triangle(3);
        assert_eq!(p3.lattice_points(true), vec![(1, 1)]);
        // enumerate integer points of T0 in its bounding box by hand
        let t0 = catalog::terminal_triangle();
        let mut expected = Vec::new();
        for x in -1..=1 {
            for y in -1..=1 {
                if t0.contains(&Pt::ints(x, y), true) {
                    expected.push((x, y));
                }
            }
        }
        assert_eq!(expected, vec![(0, 0)]);
        assert_eq!(t0.lattice_points(true), vec![(0, 0)]);
        let square = catalog::unit_square();
        assert!(square.lattice_points(true).is_empty());
        assert_eq!(square.total_count(), 4);
    }

    #[test]
    fn halfplanes_of_triangles() {
        let d = catalog::standard_triangle();
        let hps = d.halfplane_description().unwrap();
        assert_eq!(hps.len(), 3);
        for hp in &hps {
            // each constraint supports exactly one edge
            let on: usize = d
                .vertices()
                .iter()
                .filter(|v| hp.slack(v).is_zero())
                .count();
            assert_eq!(on, 2);
        }
        let p3 = catalog::scaled_standard_triangle(3);
        let hps3 = p3.halfplane_description().unwrap();
        let sum = hps3
            .iter()
            .find(|h| h.normal == (BigInt::from(1), BigInt::from(1)))
            .unwrap();
        assert_eq!(sum.offset, rat(3));
        let seg = convex_hull(&[Pt::ints(0, 0), Pt::ints(1, 0)]).unwrap();
        assert!(matches!(
            seg.halfplane_description(),
            Err(Error::DegeneratePolygon)
        ));
    }

    #[test]
    fn clipping() {
        let sq = catalog::unit_square();
        let hp = HalfPlane::new((BigInt::from(1), BigInt::from(1)), rat(1));
        let tri = sq.clip(&hp).unwrap();
        assert_eq!(tri.area(), frac(1, 2));
        let empty = sq.clip(&HalfPlane::new((BigInt::from(1), BigInt::from(0)), rat(-1)));
        assert!(empty.is_none());
    }
}
