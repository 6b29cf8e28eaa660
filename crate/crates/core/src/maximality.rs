//! Blocking points, blocking polygons and k-maximal extensions.
//!
//! A polygon with exactly `k` interior lattice points is inclusion-maximal
//! among such sets precisely when the relative interior of every edge
//! carries a lattice point. Those edge points are the blocking points; their
//! hull is the blocking polygon.

use crate::error::{Error, Result};
use crate::point::Pt;
use crate::polygon::{convex_hull, halfplane_intersection, HalfPlane, LatticePolygon};
use crate::rational::{rat, rat_ceil_i64, rat_floor_i64, Rat};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug)]
pub struct BlockingData {
    /// Lattice points in the relative interior of each edge, edge-indexed.
    pub per_edge: Vec<Vec<(i64, i64)>>,
    /// Hull of all blocking points; `None` when there are none.
    pub blocking_polygon: Option<LatticePolygon>,
}

/// Lattice points strictly inside the segment `(a, b)`.
pub fn segment_interior_lattice_points(a: &Pt, b: &Pt) -> Vec<(i64, i64)> {
    let d = b - a;
    let len_sq = d.dot(&d);
    let (xmin, xmax) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
    let (ymin, ymax) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
    let mut out = Vec::new();
    for x in rat_ceil_i64(xmin)..=rat_floor_i64(xmax) {
        for y in rat_ceil_i64(ymin)..=rat_floor_i64(ymax) {
            let z = Pt::ints(x, y);
            if !(&z - a).cross(&d).is_zero() {
                continue;
            }
            let t = (&z - a).dot(&d);
            if t.is_positive() && t < len_sq {
                out.push((x, y));
            }
        }
    }
    out
}

/// Per-edge blocking points and their hull.
pub fn blocking_data(p: &LatticePolygon) -> Result<BlockingData> {
    if !p.is_full_dimensional() {
        return Err(Error::DegeneratePolygon);
    }
    let n = p.num_edges();
    let mut per_edge = Vec::with_capacity(n);
    let mut all = Vec::new();
    for i in 0..n {
        let (a, b) = p.edge(i);
        let pts = segment_interior_lattice_points(a, b);
        all.extend(pts.iter().map(|&(x, y)| Pt::ints(x, y)));
        per_edge.push(pts);
    }
    let blocking_polygon = if all.is_empty() {
        None
    } else {
        Some(convex_hull(&all)?)
    };
    Ok(BlockingData {
        per_edge,
        blocking_polygon,
    })
}

/// `true` iff `p` has exactly `k` interior lattice points and every edge is
/// blocked. Requires a full-dimensional polygon.
pub fn is_k_maximal(p: &LatticePolygon, k: usize) -> Result<bool> {
    let data = blocking_data(p)?;
    if data.per_edge.iter().any(|pts| pts.is_empty()) {
        return Ok(false);
    }
    Ok(p.interior_count() == k)
}

/// Extends `p` to a polygon with the same interior lattice points and every
/// edge blocked, by translating unblocked edges outward.
///
/// Edges with primitive integer normals meet the lattice only at integer
/// offsets, so each unblocked edge tries the integer offsets above its
/// current one, up to `cap` beyond the start. A push is accepted when the
/// moved edge picks up a relative-interior lattice point without any lattice
/// point entering the interior. The result need not be the inclusion-largest
/// extension.
pub fn k_maximal_extension(
    p: &LatticePolygon,
    step: &Rat,
    cap: &Rat,
) -> Result<LatticePolygon> {
    if !step.is_positive() || !cap.is_positive() {
        return Err(Error::InvalidTolerance);
    }
    if !p.is_full_dimensional() {
        return Err(Error::DegeneratePolygon);
    }
    let k = p.interior_count();
    let mut current = p.clone();
    // total outward push per edge normal
    let mut pushed: Vec<((BigInt, BigInt), Rat)> = Vec::new();
    loop {
        let data = blocking_data(&current)?;
        let unblocked: Vec<usize> = data
            .per_edge
            .iter()
            .enumerate()
            .filter(|(_, pts)| pts.is_empty())
            .map(|(i, _)| i)
            .collect();
        if unblocked.is_empty() {
            debug_assert_eq!(current.interior_count(), k);
            return Ok(current);
        }
        // one push per round so every attempt sees the current polygon
        let hps = current.halfplane_description()?;
        let mut progressed = false;
        'edges: for &i in &unblocked {
            let h = &hps[i];
            let spent = pushed
                .iter()
                .find(|(n, _)| *n == h.normal)
                .map(|(_, s)| s.clone())
                .unwrap_or_else(Rat::zero);
            let mut candidate = rat(rat_floor_i64(&h.offset) + 1);
            loop {
                let delta = &candidate - &h.offset;
                if &spent + &delta > *cap {
                    continue 'edges;
                }
                let mut relaxed = hps.clone();
                relaxed[i] = HalfPlane::new(h.normal.clone(), candidate.clone());
                let next = match halfplane_intersection(&relaxed) {
                    Some(q) if q.is_full_dimensional() => q,
                    _ => {
                        candidate += rat(1);
                        continue;
                    }
                };
                if next.interior_count() != k {
                    // a lattice point crossed into the interior; pushing
                    // further only swallows more
                    continue 'edges;
                }
                // the moved edge must now carry a blocking point
                if edge_on_line_blocked(&next, &relaxed[i]) {
                    current = next;
                    match pushed.iter_mut().find(|(n, _)| *n == h.normal) {
                        Some((_, s)) => *s += &delta,
                        None => pushed.push((h.normal.clone(), delta)),
                    }
                    progressed = true;
                    break 'edges;
                }
                candidate += rat(1);
            }
        }
        if !progressed {
            return Err(Error::ExtensionFailed);
        }
    }
}

fn edge_on_line_blocked(p: &LatticePolygon, hp: &HalfPlane) -> bool {
    for i in 0..p.num_edges() {
        let (a, b) = p.edge(i);
        if hp.slack(a).is_zero() && hp.slack(b).is_zero() {
            return !segment_interior_lattice_points(a, b).is_empty();
        }
    }
    false
}
