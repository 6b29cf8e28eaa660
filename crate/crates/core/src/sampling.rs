//! Seeded random generators for polygons and maps, used by the randomized
//! sweeps. All sampling is driven by a caller-provided ChaCha generator so a
//! fixed seed reproduces every report byte for byte.

use crate::point::Pt;
use crate::polygon::{convex_hull, LatticePolygon};
use crate::rational::{rat, Rat};
use crate::unimodular::UnimodularMap;
use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Sampler = ChaCha8Rng;

pub fn sampler(seed: u64) -> Sampler {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random full-dimensional lattice polygon: hull of 3..=max_points integer
/// points in `[-radius, radius]²`.
pub fn random_lattice_polygon(rng: &mut Sampler, radius: i64, max_points: usize) -> LatticePolygon {
    loop {
        let n = rng.gen_range(3..=max_points.max(3));
        let pts: Vec<Pt> = (0..n)
            .map(|_| {
                Pt::ints(
                    rng.gen_range(-radius..=radius),
                    rng.gen_range(-radius..=radius),
                )
            })
            .collect();
        if let Ok(hull) = convex_hull(&pts) {
            if hull.is_full_dimensional() {
                return hull;
            }
        }
    }
}

/// Random full-dimensional polygon with rational vertices of bounded height.
pub fn random_rational_polygon(
    rng: &mut Sampler,
    radius: i64,
    max_den: i64,
    max_points: usize,
) -> LatticePolygon {
    loop {
        let n = rng.gen_range(3..=max_points.max(3));
        let pts: Vec<Pt> = (0..n)
            .map(|_| {
                let den_x = rng.gen_range(1..=max_den);
                let den_y = rng.gen_range(1..=max_den);
                Pt::new(
                    Rat::new(
                        BigInt::from(rng.gen_range(-radius * den_x..=radius * den_x)),
                        BigInt::from(den_x),
                    ),
                    Rat::new(
                        BigInt::from(rng.gen_range(-radius * den_y..=radius * den_y)),
                        BigInt::from(den_y),
                    ),
                )
            })
            .collect();
        if let Ok(hull) = convex_hull(&pts) {
            if hull.is_full_dimensional() {
                return hull;
            }
        }
    }
}

/// Random lattice polygon with exactly one interior lattice point, placed at
/// the origin.
pub fn random_one_point_polygon(rng: &mut Sampler, radius: i64) -> LatticePolygon {
    loop {
        let p = random_lattice_polygon(rng, radius, 6);
        let interior = p.lattice_points(true);
        if interior.len() == 1 {
            let (x, y) = interior[0];
            return p.translate(&Pt::ints(-x, -y));
        }
    }
}

/// Random origin-symmetric lattice polygon with the origin interior.
pub fn random_symmetric_polygon(rng: &mut Sampler, radius: i64) -> LatticePolygon {
    loop {
        let n = rng.gen_range(2..=4);
        let mut pts = Vec::with_capacity(2 * n);
        for _ in 0..n {
            let p = Pt::ints(
                rng.gen_range(-radius..=radius),
                rng.gen_range(-radius..=radius),
            );
            pts.push(p.clone());
            pts.push(-&p);
        }
        if let Ok(hull) = convex_hull(&pts) {
            if hull.is_full_dimensional() && hull.contains(&Pt::origin(), true) {
                return hull;
            }
        }
    }
}

/// Random unimodular map: a short product of shears and rotations plus a
/// translation.
pub fn random_unimodular_map(rng: &mut Sampler, shear_bound: i64, translation_bound: i64) -> UnimodularMap {
    let mut m = UnimodularMap::identity();
    for _ in 0..rng.gen_range(1..=4) {
        let k = rng.gen_range(-shear_bound..=shear_bound);
        let g = match rng.gen_range(0..3) {
            0 => UnimodularMap::new([[1, k], [0, 1]], (0, 0)).unwrap(),
            1 => UnimodularMap::new([[1, 0], [k, 1]], (0, 0)).unwrap(),
            _ => UnimodularMap::new([[0, -1], [1, 0]], (0, 0)).unwrap(),
        };
        m = m.compose(&g);
    }
    m.translation = (
        BigInt::from(rng.gen_range(-translation_bound..=translation_bound)),
        BigInt::from(rng.gen_range(-translation_bound..=translation_bound)),
    );
    m
}

/// Uniform rational in `[lo, hi]` with denominator `2^20`.
pub fn random_rat_in(rng: &mut Sampler, lo: &Rat, hi: &Rat) -> Rat {
    let t = Rat::new(BigInt::from(rng.gen_range(0u32..=(1 << 20))), BigInt::from(1u32 << 20));
    lo + (hi - lo) * t
}

/// Uniform rational point in a triangle, by rational barycentric weights.
pub fn random_point_in_triangle(rng: &mut Sampler, a: &Pt, b: &Pt, c: &Pt) -> Pt {
    let w0 = rat(rng.gen_range(1..=1 << 16));
    let w1 = rat(rng.gen_range(1..=1 << 16));
    let w2 = rat(rng.gen_range(1..=1 << 16));
    let total = &w0 + &w1 + &w2;
    let x = (&a.x * &w0 + &b.x * &w1 + &c.x * &w2) / &total;
    let y = (&a.y * &w0 + &b.y * &w1 + &c.y * &w2) / &total;
    Pt::new(x, y)
}
