//! One-shot checkable instantiations of the named constants, extremizers and
//! inequalities: the extremizer catalog, the isominwidth and width-to-area
//! bounds, the flatness chain, and the transference equality analysis.

use crate::catalog;
use crate::enclosure::{flatness_volume, flatness_zero, sqrt2, sqrt_enclosure};
use crate::error::{Error, Result};
use crate::metrics::{
    first_minimum, lattice_width, transference_product, width_in_direction,
};
use crate::point::{Direction, Pt};
use crate::polygon::{line_intersection, LatticePolygon};
use crate::rational::{frac, rat, rat_to_string, Rat};
use crate::sampling::Sampler;
use crate::unimodular::are_equivalent;
use num_traits::{Signed, Zero};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Exact reproduction of the catalog values: widths, interior counts, areas
/// and transference products of the six reference bodies.
pub fn check_extremizers() -> Result<Vec<CheckLine>> {
    let mut out = Vec::new();
    let mut push = |name: &str, pass: bool, detail: String| {
        out.push(CheckLine {
            name: name.into(),
            pass,
            detail,
        });
    };

    let p3 = catalog::scaled_standard_triangle(3);
    let w = lattice_width(&p3)?.value;
    let g = p3.interior_count();
    push("width3-triangle", w == rat(3) && g == 1, format!("w = {w}, interior = {g}"));

    let m = catalog::two_point_maximizer();
    let w = lattice_width(&m)?.value;
    let g = m.interior_count();
    push(
        "two-point-maximizer",
        w == frac(10, 3) && g == 2,
        format!("w = {}, interior = {g}", rat_to_string(&w)),
    );

    let t0 = catalog::terminal_triangle();
    let w = lattice_width(&t0)?.value;
    let area = t0.area();
    let ratio = &w * &w / &area;
    push(
        "terminal-triangle",
        w == rat(2) && area == frac(3, 2) && ratio == frac(8, 3),
        format!("w = {w}, area = {}, w²/area = {}", rat_to_string(&area), rat_to_string(&ratio)),
    );

    let c = catalog::centered_width3_triangle();
    let prod = transference_product(&c, false)?;
    push(
        "nonsymmetric-transference",
        prod == rat(3),
        format!("λ₁·w = {}", rat_to_string(&prod)),
    );

    let h = catalog::extremal_hexagon();
    let prod = transference_product(&h, true)?;
    push(
        "symmetric-transference",
        prod == frac(4, 3),
        format!("λ₁·λ₁* = {}", rat_to_string(&prod)),
    );

    let q = catalog::hollow_width2_quadrilateral();
    let w = lattice_width(&q)?.value;
    let g = q.interior_count();
    push(
        "hollow-quadrilateral",
        w == rat(2) && g == 0,
        format!("w = {w}, interior = {g}"),
    );

    if let Some(bad) = out.iter().find(|l| !l.pass) {
        return Err(Error::CatalogMismatch(format!("{}: {}", bad.name, bad.detail)));
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct IsominwidthCheck {
    pub pass: bool,
    pub equality: bool,
    pub equivalent_to_width3_triangle: bool,
}

/// Exact `w(P)² ≤ 9·G°(P)` with the equality case matched against the
/// width-3 triangle.
pub fn check_isominwidth(p: &LatticePolygon) -> Result<IsominwidthCheck> {
    let g = p.interior_count();
    assert!(g > 0, "requires an interior lattice point");
    let w = lattice_width(p)?.value;
    let lhs = &w * &w;
    let rhs = rat(9 * g as i64);
    let pass = lhs <= rhs;
    let equality = lhs == rhs;
    let equivalent = equality
        && p.has_integer_vertices()
        && are_equivalent(p, &catalog::scaled_standard_triangle(3))?.is_some();
    Ok(IsominwidthCheck {
        pass,
        equality,
        equivalent_to_width3_triangle: equivalent,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct MakaiCheck {
    pub pass: bool,
    pub equality: bool,
    pub matches_terminal_triangle: bool,
}

/// Exact `w(P)² ≤ (8/3)·area(P)`, flagging equality and matching equality
/// cases against dilated translates of the terminal triangle.
pub fn check_makai(p: &LatticePolygon) -> Result<MakaiCheck> {
    let area = p.area();
    assert!(area.is_positive(), "requires positive area");
    let w = lattice_width(p)?.value;
    let lhs = rat(3) * &w * &w;
    let rhs = rat(8) * &area;
    let pass = lhs <= rhs;
    let equality = lhs == rhs;
    let mut matches = false;
    if equality {
        // normalize scale: the terminal triangle has width 2
        let lambda = &w / rat(2);
        let scaled = p.scale(&(rat(1) / &lambda));
        let t0 = catalog::terminal_triangle();
        'outer: for v in scaled.vertices() {
            for z in t0.vertices() {
                let shift = z - v;
                let moved = scaled.translate(&shift);
                if moved.has_integer_vertices()
                    && are_equivalent(&moved, &t0).map(|w| w.is_some()).unwrap_or(false)
                {
                    matches = true;
                    break 'outer;
                }
            }
        }
    }
    Ok(MakaiCheck {
        pass,
        equality,
        matches_terminal_triangle: matches,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FlatnessChainCheck {
    pub k: usize,
    pub max_width: String,
    pub bound: f64,
    pub pass: bool,
    /// For `k ≥ 3`: the chain step `(1 + 2/√3)/√k + √(8/3) < 3`.
    pub ratio_step: Option<bool>,
}

/// `M_k ≤ (1 + 2/√3) + √(8/3)·√k` through safe enclosure endpoints, plus the
/// ratio step showing the bound drops below `3√k` from `k = 3` on.
pub fn check_flatness_chain(k: usize, max_width: &Rat) -> FlatnessChainCheck {
    let f0 = flatness_zero();
    let fv = flatness_volume();
    let sk = sqrt_enclosure(&rat(k as i64));
    // lower enclosure of the right side: still a valid upper bound for M_k
    let bound_lo = &f0.lo + &fv.lo * &sk.lo;
    let pass = *max_width <= bound_lo;
    let ratio_step = (k >= 3).then(|| &f0.hi / &sk.lo + &fv.hi < rat(3));
    FlatnessChainCheck {
        k,
        max_width: rat_to_string(max_width),
        bound: crate::rational::to_f64(&bound_lo),
        pass,
        ratio_step,
    }
}

/// `λ₁(P−P) ≥ min{1/w, (1/(k+1))(1 − 1/w)}`, exactly, with the
/// one-dimensional flatness constant equal to one.
pub fn lambda1_lower_bound_check(p: &LatticePolygon, k: usize) -> Result<bool> {
    assert!(p.interior_count() <= k);
    let diff = crate::metrics::difference_body(p);
    let lambda1 = first_minimum(&diff)?;
    let w = lattice_width(p)?.value;
    let inv_w = rat(1) / &w;
    let second = (rat(1) - &inv_w) / rat(k as i64 + 1);
    let bound = if inv_w <= second { inv_w } else { second };
    Ok(lambda1 >= bound)
}

#[derive(Clone, Debug, Serialize)]
pub struct BarycentricReport {
    pub samples: usize,
    pub min_beta_attains_third: usize,
    pub pass: bool,
}

/// Frame of the slot-`i` region of the blocking hexagon:
/// `(bᵢ, bᵢ + bᵢ₊₁, bᵢ₊₁)`.
fn hexagon_frame(i: usize) -> (Pt, Pt, Pt) {
    let b = catalog::blocking_hexagon();
    let v = b.vertices();
    let n = v.len();
    let q0 = v[i % n].clone();
    let q1 = v[(i + 1) % n].clone();
    let r = &q0 + &q1;
    (q0, r, q1)
}

/// Barycentric coordinates of `p` in the frame `(q0, q0+q1, q1)`.
fn frame_coordinates(p: &Pt, q0: &Pt, q1: &Pt) -> Option<(Rat, Rat, Rat)> {
    // p = A·q0 + B·q1 with A = α+β, B = β+α̃ and α+β+α̃ = 1
    let det = q0.cross(q1);
    if det.is_zero() {
        return None;
    }
    let a = (&p.x * &q1.y - &p.y * &q1.x) / &det;
    let b = (&q0.x * &p.y - &q0.y * &p.x) / &det;
    let beta = &a + &b - rat(1);
    let alpha = &a - &beta;
    let alpha_tilde = &b - &beta;
    Some((alpha, beta, alpha_tilde))
}

/// Samples origin-symmetric circumscribers of the blocking hexagon with one
/// vertex per region and verifies the barycentric relations of the width
/// functionals exactly:
/// `β_{i-1} = α̃_{i-1}·αᵢ/βᵢ`, the triple product identity, and
/// `w(K, dᵢ) = 2 + 2βᵢ`.
pub fn hexagon_barycentric_check(rng: &mut Sampler, samples: usize) -> Result<BarycentricReport> {
    use crate::sampling::{random_point_in_triangle, random_rat_in};
    let hexagon = catalog::blocking_hexagon();
    let bv: Vec<Pt> = hexagon.vertices().to_vec();
    let slot_dirs = [
        Direction { x: 0, y: 1 },
        Direction { x: 1, y: -1 },
        Direction { x: 1, y: 0 },
    ];
    let frames: Vec<(Pt, Pt, Pt)> = (0..6).map(hexagon_frame).collect();
    let mut done = 0;
    let mut attempts = 0;
    let mut sharp = 0;
    while done < samples {
        attempts += 1;
        if attempts > samples * 400 {
            return Err(Error::NoSolutionsFound);
        }
        // p0 free in its region, p1 on the line through b1, p2 forced by the
        // symmetric colinearities
        let (q0, r0, q1) = &frames[0];
        let p0 = random_point_in_triangle(rng, q0, r0, q1);
        let s = random_rat_in(rng, &frac(1, 100), &rat(4));
        let d = &bv[1] - &p0;
        let p1 = &bv[1] + &d.scale(&s);
        let l1 = match (line(&p1, &bv[2]), line(&bv[3], &-&p0)) {
            (Some(a), Some(b)) => (a, b),
            _ => continue,
        };
        let Some(p2) = intersect(&l1.0, &l1.1) else {
            continue;
        };
        let pts = [p0.clone(), p1.clone(), p2.clone()];
        // all six vertices strictly inside their regions
        let mut coords = Vec::new();
        let mut feasible = true;
        for (i, p) in pts.iter().enumerate() {
            let (q0, _, q1) = &frames[i];
            match frame_coordinates(p, q0, q1) {
                Some((a, b, c))
                    if a.is_positive() && b.is_positive() && c.is_positive() =>
                {
                    coords.push((a, b, c));
                }
                _ => {
                    feasible = false;
                    break;
                }
            }
        }
        if !feasible {
            continue;
        }
        let k = crate::polygon::convex_hull(&[
            pts[0].clone(),
            pts[1].clone(),
            pts[2].clone(),
            -&pts[0],
            -&pts[1],
            -&pts[2],
        ])
        .map_err(|_| Error::NoSolutionsFound)?;
        if k.num_vertices() != 6 {
            continue;
        }
        // chain identity from the colinearity through the shared vertex:
        // βᵢ·βᵢ₊₁ = αᵢ·α̃ᵢ₊₁, cyclically (symmetric copies repeat with
        // period three)
        for i in 0..3 {
            let (prev, cur) = (&coords[i], &coords[(i + 1) % 3]);
            if &prev.1 * &cur.1 != &prev.0 * &cur.2 {
                return Err(Error::CounterexampleFound(
                    "barycentric chain identity failed".into(),
                ));
            }
        }
        // product identity
        let beta_prod = coords.iter().fold(rat(1), |acc, c| {
            let b2 = &c.1 * &c.1;
            acc * b2
        });
        let alpha_prod = coords
            .iter()
            .fold(rat(1), |acc, c| acc * (&c.0 * &c.2));
        if beta_prod != alpha_prod {
            return Err(Error::CounterexampleFound(
                "barycentric product identity failed".into(),
            ));
        }
        // widths
        let mut min_beta: Option<Rat> = None;
        for (i, c) in coords.iter().enumerate() {
            let w = width_in_direction(&k, slot_dirs[i]);
            if w != rat(2) + rat(2) * &c.1 {
                return Err(Error::CounterexampleFound(format!(
                    "width identity failed in direction {:?}",
                    slot_dirs[i]
                )));
            }
            if min_beta.as_ref().map_or(true, |m| c.1 < *m) {
                min_beta = Some(c.1.clone());
            }
        }
        let min_beta = min_beta.unwrap();
        if min_beta > frac(1, 3) {
            return Err(Error::CounterexampleFound(
                "minimum beta exceeds 1/3".into(),
            ));
        }
        if min_beta == frac(1, 3) {
            sharp += 1;
            // sharp only in the regular configuration
            if coords
                .iter()
                .any(|c| c.0 != frac(1, 3) || c.1 != frac(1, 3) || c.2 != frac(1, 3))
            {
                return Err(Error::CounterexampleFound(
                    "sharp beta outside the regular configuration".into(),
                ));
            }
        }
        done += 1;
    }
    Ok(BarycentricReport {
        samples: done,
        min_beta_attains_third: sharp,
        pass: true,
    })
}

fn line(a: &Pt, b: &Pt) -> Option<crate::polygon::HalfPlane> {
    let d = b - a;
    if d.x.is_zero() && d.y.is_zero() {
        return None;
    }
    let (nx, ny) = crate::point::primitive_from_rational(&d.y, &(-&d.x)).ok()?;
    let hp = crate::polygon::HalfPlane::new((nx, ny), Rat::zero());
    let off = hp.eval(a);
    Some(crate::polygon::HalfPlane::new(hp.normal, off))
}

fn intersect(a: &crate::polygon::HalfPlane, b: &crate::polygon::HalfPlane) -> Option<Pt> {
    line_intersection(a, b)
}

#[derive(Clone, Debug, Serialize)]
pub struct SymmetricCrossReport {
    pub solution: [f64; 4],
    pub width_over_axes: f64,
    pub product: f64,
    pub boundary_width_is_two: bool,
    pub pass: bool,
}

/// Solves the symmetric equal-width extremal system for circumscribers of
/// the cross: two colinearity determinants, the equal-width condition
/// `b = c` and the multiplier condition `d − a + 1 = 0`. The solution is
/// `(a, b) = (1/2, (1+√2)/2)` with product `(1+√2)/2 < 4/3`.
pub fn symmetric_cross_case_check(rng: &mut Sampler) -> Result<SymmetricCrossReport> {
    use rand::Rng;
    let f = |z: &[f64; 4]| -> [f64; 4] {
        let (a, b, c, d) = (z[0], z[1], z[2], z[3]);
        [
            -c * b - d + d * a + b,
            a + a * d - b * c + c,
            b - c,
            d - a + 1.0,
        ]
    };
    let jac = |z: &[f64; 4]| -> [[f64; 4]; 4] {
        let (a, b, c, d) = (z[0], z[1], z[2], z[3]);
        [
            [d, 1.0 - c, -b, a - 1.0],
            [1.0 + d, -c, 1.0 - b, a],
            [0.0, 1.0, -1.0, 0.0],
            [-1.0, 0.0, 0.0, 1.0],
        ]
    };
    let mut best: Option<[f64; 4]> = None;
    for _ in 0..200 {
        let mut z = [
            rng.gen_range(0.1..1.5),
            rng.gen_range(0.5..2.0),
            rng.gen_range(0.5..2.0),
            rng.gen_range(-1.5..0.5),
        ];
        let mut ok = false;
        for _ in 0..60 {
            let fv = f(&z);
            if fv.iter().map(|v| v * v).sum::<f64>().sqrt() < 1e-13 {
                ok = true;
                break;
            }
            let j = jac(&z);
            let Some(step) = solve4(&j, &fv) else { break };
            for i in 0..4 {
                z[i] -= step[i];
            }
            if z.iter().any(|v| !v.is_finite() || v.abs() > 100.0) {
                break;
            }
        }
        // keep the root inside the admissible window
        if ok && z[0] > 0.0 && z[0] < 1.0 && z[1] > 1.0 {
            best = Some(z);
            break;
        }
    }
    let z = best.ok_or(Error::NoSolutionsFound)?;
    let expected_b = (1.0 + std::f64::consts::SQRT_2) / 2.0;
    if (z[0] - 0.5).abs() > 1e-9
        || (z[1] - expected_b).abs() > 1e-9
        || (z[2] - expected_b).abs() > 1e-9
        || (z[3] + 0.5).abs() > 1e-9
    {
        return Err(Error::CounterexampleFound(format!(
            "unexpected extremal solution {z:?}"
        )));
    }
    let width = 2.0 * z[1].max(z[2]).max(z[0].abs()).max(z[3].abs());
    let product = width / 2.0;
    // (1+√2)/2 < 4/3 with certified arithmetic: 3(1+√2) < 8 ⟺ 3√2 < 5
    let s2 = sqrt2();
    let strict = rat(3) * &s2.hi < rat(5);
    if !strict {
        return Err(Error::CounterexampleFound("enclosure comparison failed".into()));
    }
    // boundary subcase: a vertex on the square boundary gives width exactly 2
    let boundary = crate::polygon::convex_hull(&[
        Pt::new(frac(4, 5), rat(1)),
        Pt::new(frac(-4, 5), rat(-1)),
        Pt::new(frac(6, 5), rat(-1)),
        Pt::new(frac(-6, 5), rat(1)),
    ])
    .map_err(|_| Error::NoSolutionsFound)?;
    let bw = lattice_width(&boundary)?.value;
    Ok(SymmetricCrossReport {
        solution: z,
        width_over_axes: width,
        product,
        boundary_width_is_two: bw == rat(2),
        pass: (width - (1.0 + std::f64::consts::SQRT_2)).abs() < 1e-9 && bw == rat(2),
    })
}

fn solve4(a: &[[f64; 4]; 4], b: &[f64; 4]) -> Option<[f64; 4]> {
    let mut m = *a;
    let mut rhs = *b;
    for col in 0..4 {
        let mut piv = col;
        for r in col + 1..4 {
            if m[r][col].abs() > m[piv][col].abs() {
                piv = r;
            }
        }
        if m[piv][col].abs() < 1e-14 {
            return None;
        }
        m.swap(col, piv);
        rhs.swap(col, piv);
        for r in 0..4 {
            if r != col {
                let factor = m[r][col] / m[col][col];
                for c in col..4 {
                    m[r][c] -= factor * m[col][c];
                }
                rhs[r] -= factor * rhs[col];
            }
        }
    }
    let mut out = [0.0; 4];
    for i in 0..4 {
        out[i] = rhs[i] / m[i][i];
    }
    Some(out)
}
