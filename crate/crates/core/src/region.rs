//! Regions: intersections of (possibly open) half-planes and finite unions
//! of such cells. These carry the shard/cone machinery that pins down where
//! the vertices of a circumscriber of a blocking polygon can lie.

use crate::error::{Error, Result};
use crate::point::{primitive_from_rational, Pt};
use crate::polygon::{convex_hull, HalfPlane, LatticePolygon};
use crate::rational::{rat, Rat};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Half-plane with a strictness flag: `⟨n,x⟩ ≤ b` or `⟨n,x⟩ < b`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Constraint {
    pub hp: HalfPlane,
    pub strict: bool,
}

impl Constraint {
    pub fn closed(normal: (i64, i64), offset: Rat) -> Self {
        Constraint {
            hp: HalfPlane::new((BigInt::from(normal.0), BigInt::from(normal.1)), offset),
            strict: false,
        }
    }

    pub fn satisfied(&self, p: &Pt) -> bool {
        self.hp.contains(p, self.strict)
    }

    /// The complementary closed half-plane `⟨-n,x⟩ ≤ -b` (complement of the
    /// open side) used when splitting off an open cell.
    fn complement_closed(&self) -> Constraint {
        Constraint {
            hp: HalfPlane::new(
                (-self.hp.normal.0.clone(), -self.hp.normal.1.clone()),
                -self.hp.offset.clone(),
            ),
            strict: false,
        }
    }
}

/// Convex cell: conjunction of constraints.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Cell {
    pub constraints: Vec<Constraint>,
}

impl Cell {
    pub fn contains(&self, p: &Pt) -> bool {
        self.constraints.iter().all(|c| c.satisfied(p))
    }
}

/// Finite union of convex cells.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Region {
    pub cells: Vec<Cell>,
}

impl Region {
    pub fn single(cell: Cell) -> Self {
        Region { cells: vec![cell] }
    }

    pub fn contains(&self, p: &Pt) -> bool {
        self.cells.iter().any(|c| c.contains(p))
    }

    /// Removes the open region `cone` from every cell by sequential convex
    /// splitting; the result is again a union of convex cells.
    pub fn subtract_cone(&self, cone: &Cell) -> Region {
        let mut out = Vec::new();
        for cell in &self.cells {
            // cells untouched by the cone pass through unchanged
            let mut overlap = cell.clone();
            overlap.constraints.extend(cone.constraints.iter().cloned());
            if cell_known_empty(&overlap) {
                out.push(cell.clone());
                continue;
            }
            let mut base = cell.clone();
            for c in &cone.constraints {
                debug_assert!(c.strict, "cone constraints are open");
                let mut piece = base.clone();
                piece.constraints.push(c.complement_closed());
                if !cell_known_empty(&piece) {
                    out.push(piece);
                }
                base.constraints.push(c.clone());
            }
        }
        Region { cells: out }
    }
}

/// Emptiness check within a large clip box. Cells produced by the blocking
/// machinery live near the origin; the box only serves to bound the test.
const CLIP: i64 = 1 << 12;

fn cell_known_empty(cell: &Cell) -> bool {
    let mut poly = convex_hull(&[
        Pt::ints(-CLIP, -CLIP),
        Pt::ints(CLIP, -CLIP),
        Pt::ints(CLIP, CLIP),
        Pt::ints(-CLIP, CLIP),
    ])
    .unwrap();
    for c in &cell.constraints {
        match poly.clip(&c.hp) {
            Some(q) => poly = q,
            None => return true,
        }
    }
    // strict constraints can still empty a flat remainder
    let strict: Vec<&Constraint> = cell.constraints.iter().filter(|c| c.strict).collect();
    if strict.is_empty() {
        return false;
    }
    match poly.dim() {
        2 => {
            let centroid = centroid_of(&poly);
            !strict.iter().all(|c| c.satisfied(&centroid))
        }
        1 => {
            let mid = midpoint(&poly.vertices()[0], &poly.vertices()[1]);
            !strict.iter().all(|c| c.satisfied(&mid))
        }
        _ => !strict.iter().all(|c| c.satisfied(&poly.vertices()[0])),
    }
}

fn centroid_of(p: &LatticePolygon) -> Pt {
    let n = rat(p.num_vertices() as i64);
    let mut x = Rat::zero();
    let mut y = Rat::zero();
    for v in p.vertices() {
        x += &v.x;
        y += &v.y;
    }
    Pt::new(x / &n, y / n)
}

fn midpoint(a: &Pt, b: &Pt) -> Pt {
    Pt::new((&a.x + &b.x) / rat(2), (&a.y + &b.y) / rat(2))
}

/// Region beyond one edge of `b`: the half-plane description with the chosen
/// edge's inequality reversed.
pub fn shard(b: &LatticePolygon, edge_index: usize) -> Result<Region> {
    if !b.is_full_dimensional() {
        return Err(Error::DegeneratePolygon);
    }
    let hps = b.halfplane_description()?;
    if edge_index >= hps.len() {
        return Err(Error::BadEdgeIndex(edge_index));
    }
    let mut constraints = Vec::with_capacity(hps.len());
    for (i, h) in hps.iter().enumerate() {
        let hp = if i == edge_index {
            HalfPlane::new((-h.normal.0.clone(), -h.normal.1.clone()), -h.offset.clone())
        } else {
            h.clone()
        };
        constraints.push(Constraint { hp, strict: false });
    }
    Ok(Region::single(Cell { constraints }))
}

/// Closed wedge `pos(e − x0) + x0` spanned by the rays from `x0` through the
/// endpoints of `e`.
pub fn face_cone(x0: &Pt, e: (&Pt, &Pt)) -> Result<Region> {
    let seg = convex_hull(&[e.0.clone(), e.1.clone()]).map_err(|_| Error::ApexOnEdge)?;
    if seg.contains(x0, false) {
        return Err(Error::ApexOnEdge);
    }
    let u = e.0 - x0;
    let v = e.1 - x0;
    let turn = u.cross(&v);
    if turn.is_zero() {
        // endpoints colinear with the apex: the cone degenerates to the ray
        // from x0 through the edge
        let (dx, dy) = primitive_from_rational(&u.x, &u.y)?;
        let n1 = HalfPlane::new((-dy.clone(), dx.clone()), Rat::zero());
        let c1 = n1.eval(x0);
        let n2 = HalfPlane::new((dy, -dx), Rat::zero());
        let c2 = n2.eval(x0);
        let (fx, fy) = primitive_from_rational(&-&u.x, &-&u.y)?;
        let back = HalfPlane::new((fx, fy), Rat::zero());
        let cb = back.eval(x0);
        return Ok(Region::single(Cell {
            constraints: vec![
                Constraint { hp: HalfPlane::new(n1.normal, c1), strict: false },
                Constraint { hp: HalfPlane::new(n2.normal, c2), strict: false },
                Constraint { hp: HalfPlane::new(back.normal, cb), strict: false },
            ],
        }));
    }
    let (first, second) = if turn.is_positive() { (u, v) } else { (v, u) };
    // wedge(first → second): cross(first, s) ≥ 0 and cross(s, second) ≥ 0
    let mk = |n: (Rat, Rat)| -> Result<HalfPlane> {
        let (nx, ny) = primitive_from_rational(&n.0, &n.1)?;
        Ok(HalfPlane::new((nx, ny), Rat::zero()))
    };
    // cross(first, s) ≥ 0  ⟺  ⟨(first.y, −first.x), s⟩ ≤ 0
    let h1 = mk((first.y.clone(), -&first.x))?;
    let h2 = mk((-&second.y, second.x.clone()))?;
    let c1 = h1.eval(x0);
    let c2 = h2.eval(x0);
    Ok(Region::single(Cell {
        constraints: vec![
            Constraint { hp: HalfPlane::new(h1.normal, c1), strict: false },
            Constraint { hp: HalfPlane::new(h2.normal, c2), strict: false },
        ],
    }))
}

/// Open cone `−int(pos(B − q)) + q`, as a single open cell.
pub fn forbidden_cone(b: &LatticePolygon, q: &Pt) -> Result<Region> {
    Ok(Region::single(forbidden_cone_cell(b, q)?))
}

pub(crate) fn forbidden_cone_cell(b: &LatticePolygon, q: &Pt) -> Result<Cell> {
    if !b.is_full_dimensional() {
        return Err(Error::DegeneratePolygon);
    }
    if b.contains(q, true) {
        return Err(Error::ApexInsideBody);
    }
    let dirs: Vec<Pt> = b
        .vertices()
        .iter()
        .map(|w| w - q)
        .filter(|d| !(d.x.is_zero() && d.y.is_zero()))
        .collect();
    // extreme rays of pos(B − q): u_a with every direction counterclockwise
    // of it, u_b with every direction clockwise of it
    let u_a = dirs
        .iter()
        .find(|u| dirs.iter().all(|v| !u.cross(v).is_negative()))
        .expect("apex outside the body has a clockwise-most direction");
    let u_b = dirs
        .iter()
        .find(|u| dirs.iter().all(|v| !v.cross(u).is_negative()))
        .expect("apex outside the body has a counterclockwise-most direction");
    let span = u_a.cross(u_b);
    let mk = |n: (Rat, Rat), strict: bool| -> Result<Constraint> {
        let (nx, ny) = primitive_from_rational(&n.0, &n.1)?;
        let hp = HalfPlane::new((nx, ny), Rat::zero());
        let off = hp.eval(q);
        Ok(Constraint {
            hp: HalfPlane::new(hp.normal, off),
            strict,
        })
    };
    if span.is_zero() {
        // q in the relative interior of an edge: the cone is an open
        // half-plane on the far side of that edge's line
        let h = mk((-&u_a.y, u_a.x.clone()), true)?;
        // orient away from the body
        let inside = b
            .vertices()
            .iter()
            .find(|w| !h.hp.slack(w).is_zero())
            .expect("full-dimensional body");
        let c = if h.hp.slack(inside).is_positive() {
            Constraint {
                hp: HalfPlane::new(
                    (-h.hp.normal.0.clone(), -h.hp.normal.1.clone()),
                    -h.hp.offset.clone(),
                ),
                strict: true,
            }
        } else {
            h
        };
        return Ok(Cell { constraints: vec![c] });
    }
    debug_assert!(span.is_positive());
    // −int(wedge(u_a → u_b)) = {r : cross(u_a, r) < 0 and cross(r, u_b) < 0};
    // ⟨(−u_a.y, u_a.x), r⟩ = cross(u_a, r) and ⟨(u_b.y, −u_b.x), r⟩ = cross(r, u_b)
    let c1 = mk((-&u_a.y, u_a.x.clone()), true)?;
    let c2 = mk((u_b.y.clone(), -&u_b.x), true)?;
    Ok(Cell {
        constraints: vec![c1, c2],
    })
}

/// Lattice points `q` whose cones are removed: the box `[-r, r]²` around the
/// origin, excluding the designated interior point.
pub const FORBIDDEN_CONE_BOX_RADIUS: i64 = 3;

/// Per-edge admissible vertex regions of circumscribers of `b`: the shard of
/// each edge minus the forbidden cones of all nearby lattice points. With
/// `reflections` set, shards symmetric under the swap `(x,y) ↦ (y,x)` are
/// restricted to the half `y ≥ x`.
pub fn vertex_regions(
    b: &LatticePolygon,
    interior_point: (i64, i64),
    reflections: bool,
) -> Result<Vec<Region>> {
    let mut out = Vec::new();
    let r = FORBIDDEN_CONE_BOX_RADIUS;
    for e in 0..b.num_edges() {
        let mut region = shard(b, e)?;
        if reflections && shard_is_swap_symmetric(b, e) {
            for cell in &mut region.cells {
                cell.constraints.push(Constraint::closed((1, -1), rat(0)));
            }
        }
        for qx in -r..=r {
            for qy in -r..=r {
                if (qx, qy) == interior_point {
                    continue;
                }
                let q = Pt::ints(qx, qy);
                if b.contains(&q, true) {
                    continue;
                }
                let cone = forbidden_cone_cell(b, &q)?;
                region = region.subtract_cone(&cone);
            }
        }
        out.push(region);
    }
    Ok(out)
}

fn shard_is_swap_symmetric(b: &LatticePolygon, e: usize) -> bool {
    let (a, c) = b.edge(e);
    let swap = |p: &Pt| Pt::new(p.y.clone(), p.x.clone());
    let sb = convex_hull(&b.vertices().iter().map(|v| swap(v)).collect::<Vec<_>>());
    match sb {
        Ok(sb) if sb == *b => (swap(a) == *c && swap(c) == *a) || (swap(a) == *a && swap(c) == *c),
        _ => false,
    }
}
