//! Unimodular affine maps and equivalence of lattice polygons.

use crate::error::{Error, Result};
use crate::point::Pt;
use crate::polygon::{convex_hull, LatticePolygon};
use crate::rational::Rat;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Affine map `x ↦ Ux + t` with `U` an integer matrix of determinant ±1 and
/// integer translation `t`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UnimodularMap {
    /// Row-major: `[[a, b], [c, d]]`.
    pub matrix: [[BigInt; 2]; 2],
    pub translation: (BigInt, BigInt),
}

impl UnimodularMap {
    pub fn new(matrix: [[i64; 2]; 2], translation: (i64, i64)) -> Result<Self> {
        let m = [
            [BigInt::from(matrix[0][0]), BigInt::from(matrix[0][1])],
            [BigInt::from(matrix[1][0]), BigInt::from(matrix[1][1])],
        ];
        let map = UnimodularMap {
            matrix: m,
            translation: (BigInt::from(translation.0), BigInt::from(translation.1)),
        };
        if !map.det().abs().is_one() {
            return Err(Error::InvalidPolygon("matrix determinant is not ±1".into()));
        }
        Ok(map)
    }

    pub fn identity() -> Self {
        UnimodularMap::new([[1, 0], [0, 1]], (0, 0)).unwrap()
    }

    pub fn det(&self) -> BigInt {
        &self.matrix[0][0] * &self.matrix[1][1] - &self.matrix[0][1] * &self.matrix[1][0]
    }

    pub fn apply_point(&self, p: &Pt) -> Pt {
        let x = Rat::from_integer(self.matrix[0][0].clone()) * &p.x
            + Rat::from_integer(self.matrix[0][1].clone()) * &p.y
            + Rat::from_integer(self.translation.0.clone());
        let y = Rat::from_integer(self.matrix[1][0].clone()) * &p.x
            + Rat::from_integer(self.matrix[1][1].clone()) * &p.y
            + Rat::from_integer(self.translation.1.clone());
        Pt::new(x, y)
    }

    /// Inverse map; exists since `|det| = 1`.
    pub fn inverse(&self) -> UnimodularMap {
        let d = self.det();
        // adj / det with det = ±1
        let inv = [
            [&self.matrix[1][1] * &d, -(&self.matrix[0][1] * &d)],
            [-(&self.matrix[1][0] * &d), &self.matrix[0][0] * &d],
        ];
        let tx = -(&inv[0][0] * &self.translation.0 + &inv[0][1] * &self.translation.1);
        let ty = -(&inv[1][0] * &self.translation.0 + &inv[1][1] * &self.translation.1);
        UnimodularMap {
            matrix: inv,
            translation: (tx, ty),
        }
    }

    pub fn compose(&self, other: &UnimodularMap) -> UnimodularMap {
        let m = &self.matrix;
        let n = &other.matrix;
        let prod = [
            [
                &m[0][0] * &n[0][0] + &m[0][1] * &n[1][0],
                &m[0][0] * &n[0][1] + &m[0][1] * &n[1][1],
            ],
            [
                &m[1][0] * &n[0][0] + &m[1][1] * &n[1][0],
                &m[1][0] * &n[0][1] + &m[1][1] * &n[1][1],
            ],
        ];
        let tx = &m[0][0] * &other.translation.0 + &m[0][1] * &other.translation.1
            + &self.translation.0;
        let ty = &m[1][0] * &other.translation.0 + &m[1][1] * &other.translation.1
            + &self.translation.1;
        UnimodularMap {
            matrix: prod,
            translation: (tx, ty),
        }
    }
}

/// Image polygon; the hull re-orients to CCW when `det = -1`.
pub fn apply_map(map: &UnimodularMap, p: &LatticePolygon) -> LatticePolygon {
    convex_hull(
        &p.vertices()
            .iter()
            .map(|v| map.apply_point(v))
            .collect::<Vec<_>>(),
    )
    .unwrap()
}

/// Decides unimodular equivalence of two integer-vertex polygons and returns
/// a witnessing map. Candidate matrices send one edge-adjacent vertex pair of
/// `p` to every vertex pair of `q`, filtered by determinant ±1 and vertex-set
/// equality.
pub fn are_equivalent(p: &LatticePolygon, q: &LatticePolygon) -> Result<Option<UnimodularMap>> {
    if !p.has_integer_vertices() || !q.has_integer_vertices() {
        return Err(Error::NotLatticePolygon);
    }
    if p.num_vertices() != q.num_vertices() {
        return Ok(None);
    }
    let n = p.num_vertices();
    if n == 1 {
        let (px, py) = p.vertices()[0].as_int().unwrap();
        let (qx, qy) = q.vertices()[0].as_int().unwrap();
        let mut map = UnimodularMap::identity();
        map.translation = (qx - px, qy - py);
        return Ok(Some(map));
    }
    if n == 2 {
        return Ok(segment_equivalence(p, q));
    }

    let pv = p.vertices();
    let p0 = &pv[0];
    let u1 = &pv[1] - p0;
    let u2 = &pv[n - 1] - p0;
    let (u1x, u1y) = u1.as_int().unwrap();
    let (u2x, u2y) = u2.as_int().unwrap();
    let det_u = &u1x * &u2y - &u1y * &u2x;
    debug_assert!(!det_u.is_zero());

    let qv = q.vertices();
    for i in 0..n {
        let q0 = &qv[i];
        for (j, k) in [((i + 1) % n, (i + n - 1) % n), ((i + n - 1) % n, (i + 1) % n)] {
            let w1 = &qv[j] - q0;
            let w2 = &qv[k] - q0;
            let (w1x, w1y) = w1.as_int().unwrap();
            let (w2x, w2y) = w2.as_int().unwrap();
            // solve M [u1 u2] = [w1 w2]
            let a_num = &w1x * &u2y - &w2x * &u1y;
            let b_num = &w2x * &u1x - &w1x * &u2x;
            let c_num = &w1y * &u2y - &w2y * &u1y;
            let d_num = &w2y * &u1x - &w1y * &u2x;
            if [&a_num, &b_num, &c_num, &d_num]
                .iter()
                .any(|v| !(*v % &det_u).is_zero())
            {
                continue;
            }
            let m = [
                [&a_num / &det_u, &b_num / &det_u],
                [&c_num / &det_u, &d_num / &det_u],
            ];
            let det_m = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
            if !det_m.abs().is_one() {
                continue;
            }
            let (p0x, p0y) = p0.as_int().unwrap();
            let (q0x, q0y) = q0.as_int().unwrap();
            let tx = q0x - (&m[0][0] * &p0x + &m[0][1] * &p0y);
            let ty = q0y - (&m[1][0] * &p0x + &m[1][1] * &p0y);
            let map = UnimodularMap {
                matrix: m,
                translation: (tx, ty),
            };
            if apply_map(&map, p) == *q {
                return Ok(Some(map));
            }
        }
    }
    Ok(None)
}

/// Segments are equivalent iff their lattice lengths agree; any primitive
/// vector extends to a unimodular basis via the extended gcd.
fn segment_equivalence(p: &LatticePolygon, q: &LatticePolygon) -> Option<UnimodularMap> {
    let lattice_len = |s: &LatticePolygon| -> (BigInt, (BigInt, BigInt)) {
        let d = &s.vertices()[1] - &s.vertices()[0];
        let (dx, dy) = d.as_int().unwrap();
        let g = num_integer::Integer::gcd(&dx, &dy);
        (g.clone(), (dx / &g, dy / &g))
    };
    let (gp, prim_p) = lattice_len(p);
    let (gq, prim_q) = lattice_len(q);
    if gp != gq {
        return None;
    }
    // basis completion: B(v) maps e1 to the primitive vector v
    let complete = |v: &(BigInt, BigInt)| -> [[BigInt; 2]; 2] {
        let e = num_integer::Integer::extended_gcd(&v.0, &v.1);
        debug_assert!(e.gcd.is_one());
        // v.0 * x + v.1 * y = 1  →  second basis vector (-y, x)
        [[v.0.clone(), -e.y.clone()], [v.1.clone(), e.x.clone()]]
    };
    let bp = UnimodularMap {
        matrix: complete(&prim_p),
        translation: (BigInt::zero(), BigInt::zero()),
    };
    let bq = UnimodularMap {
        matrix: complete(&prim_q),
        translation: (BigInt::zero(), BigInt::zero()),
    };
    let anchor = |mut map: UnimodularMap| -> UnimodularMap {
        let start = map.apply_point(&p.vertices()[0]);
        let (sx, sy) = start.as_int().unwrap();
        let (qx, qy) = q.vertices()[0].as_int().unwrap();
        map.translation.0 += qx - sx;
        map.translation.1 += qy - sy;
        map
    };
    // Bq ∘ Bp⁻¹ carries the direction of p onto the direction of q; anchor
    // the first vertex with a translation and try both orientations.
    let base = bq.compose(&bp.inverse());
    let map = anchor(base.clone());
    if apply_map(&map, p) == *q {
        return Some(map);
    }
    let neg = UnimodularMap::new([[-1, 0], [0, -1]], (0, 0)).unwrap();
    let map = anchor(base.compose(&neg));
    (apply_map(&map, p) == *q).then_some(map)
}
