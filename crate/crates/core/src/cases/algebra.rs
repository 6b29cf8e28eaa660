//! Exact algebraic identities behind the case analysis: the hexagon width
//! sum, the equal-width elimination polynomial of the terminal-triangle
//! family, and the regularity minor of its colinearity system.

use super::{build_case, instantiate, CaseName};
use crate::error::{Error, Result};
use crate::metrics::width_in_direction;
use crate::point::{Direction, Pt};
use crate::rational::{frac, rat, Rat};
use crate::sampling::{random_point_in_triangle, random_rat_in, Sampler};
use num_traits::{Signed, Zero};
use serde::Serialize;

/// Samples feasible hexagon circumscribers and verifies the exact width sum
/// `w(P,e₁) + w(P,e₂) ≤ 6` on each.
pub fn hexagon_width_sum_check(rng: &mut Sampler, samples: usize) -> Result<bool> {
    let family = build_case(CaseName::Hex);
    let tri = |label: &str| -> Vec<Pt> {
        let region = family.region_labeled(label).unwrap();
        let cell = &region.cells[0];
        // cell came from a triangle; recover its corners
        let mut pts = Vec::new();
        for i in 0..cell.constraints.len() {
            for j in (i + 1)..cell.constraints.len() {
                if let Some(p) = crate::polygon::line_intersection(
                    &cell.constraints[i].hp,
                    &cell.constraints[j].hp,
                ) {
                    if cell.contains(&p) {
                        pts.push(p);
                    }
                }
            }
        }
        pts
    };
    let (s1, s3, s5) = (tri("S1"), tri("S3"), tri("S5"));
    assert!(s1.len() == 3 && s3.len() == 3 && s5.len() == 3);
    let e1 = Direction { x: 1, y: 0 };
    let e2 = Direction { x: 0, y: 1 };
    let mut done = 0;
    let mut attempts = 0;
    while done < samples {
        attempts += 1;
        if attempts > samples * 200 {
            return Err(Error::NoSolutionsFound);
        }
        let p0 = random_point_in_triangle(rng, &s1[0], &s1[1], &s1[2]);
        let p2 = random_point_in_triangle(rng, &s3[0], &s3[1], &s3[2]);
        let p4 = random_point_in_triangle(rng, &s5[0], &s5[1], &s5[2]);
        let params = vec![
            p0.x.clone(),
            p0.y.clone(),
            p2.x.clone(),
            p2.y.clone(),
            p4.x.clone(),
            p4.y.clone(),
        ];
        let Some(poly) = instantiate(&family, &params) else {
            continue;
        };
        let sum = width_in_direction(&poly, e1) + width_in_direction(&poly, e2);
        if sum > rat(6) {
            return Err(Error::CounterexampleFound(format!(
                "width sum {} > 6 at {poly:?}",
                sum
            )));
        }
        done += 1;
    }
    Ok(true)
}

/// The forced-diagonal identity of the hexagon analysis: when the slot-0
/// vertex sits on the line `y = x − 1`, the colinearity through `(−1,−1)`
/// sends its partner to `y = x + 1`, and the coordinate sum is exactly −3.
pub fn hexagon_forced_diagonal_identity(rng: &mut Sampler, samples: usize) -> bool {
    for _ in 0..samples {
        let t = random_rat_in(rng, &rat(-1), &rat(0));
        let p0 = Pt::new(t.clone(), &t - rat(1));
        // line through (−1,−1) and p0, intersected with y = x + 1
        let b = Pt::ints(-1, -1);
        let d = &p0 - &b;
        // (b + s·d) with  y − x = 1:  (−1 + s·d.y) − (−1 + s·d.x) = 1
        let denom = &d.y - &d.x;
        if denom.is_zero() {
            return false;
        }
        let s = rat(1) / denom;
        let p5 = Pt::new(&b.x + &(&s * &d.x), &b.y + &(&s * &d.y));
        if &p5.y - &p5.x != rat(1) {
            return false;
        }
        if &p0.y + &p5.x != rat(-3) {
            return false;
        }
    }
    true
}

/// Report of the equal-width analysis of the terminal-triangle family.
#[derive(Clone, Debug, Serialize)]
pub struct TerminalReport {
    pub solutions: usize,
    pub max_residual_g: f64,
    pub max_sum: f64,
    pub pass: bool,
}

/// Colinearity constraints of the translated equal-width circumscriber with
/// vertices `(0,0), (t,y), (x,t)` around the triangle shifted by `(u,v)`.
fn constraint_values(x: f64, y: f64, u: f64, v: f64, t: f64) -> [f64; 4] {
    let f1 = x * v - x * y - t * u - t + t * t + u * y + y - v * t;
    let f2 = t * (v - 1.0) - y * (u - 1.0);
    let f3 = u * t - (v + 1.0) * x;
    [f1, f2, f3, t - x - y]
}

fn constraint_jacobian(x: f64, y: f64, u: f64, v: f64, t: f64) -> [[f64; 5]; 4] {
    [
        // f1 over (x, y, u, v, t)
        [
            v - y,
            -x + u + 1.0,
            y - t,
            x - t,
            -u - 1.0 + 2.0 * t - v,
        ],
        [0.0, 1.0 - u, -y, t, v - 1.0],
        [-(v + 1.0), 0.0, t, -x, u],
        [-1.0, -1.0, 0.0, 0.0, 1.0],
    ]
}

/// Gauss–Newton step for the underdetermined square-free system.
fn gauss_newton(start: [f64; 5]) -> Option<[f64; 5]> {
    let mut z = start;
    for _ in 0..80 {
        let f = constraint_values(z[0], z[1], z[2], z[3], z[4]);
        let norm: f64 = f.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm < 1e-13 {
            return Some(z);
        }
        let j = constraint_jacobian(z[0], z[1], z[2], z[3], z[4]);
        // solve (J Jᵀ) λ = F, then z ← z − Jᵀ λ
        let mut jjt = [[0.0f64; 4]; 4];
        for r in 0..4 {
            for c in 0..4 {
                jjt[r][c] = (0..5).map(|k| j[r][k] * j[c][k]).sum();
            }
        }
        let lambda = solve4(&jjt, &f)?;
        for k in 0..5 {
            let mut delta = 0.0;
            for r in 0..4 {
                delta += j[r][k] * lambda[r];
            }
            z[k] -= delta;
        }
        if z.iter().any(|v| !v.is_finite() || v.abs() > 1e6) {
            return None;
        }
    }
    None
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

fn elimination_polynomial(x: f64, y: f64) -> f64 {
    x * x + x * y + y * y - 3.0 * x
}

/// Solves the equal-width colinearity system from random starts and checks
/// every solution lands on the elimination curve with `x + y ≤ 3`.
pub fn terminal_elimination_check(
    rng: &mut Sampler,
    samples: usize,
    tol: f64,
) -> Result<TerminalReport> {
    use rand::Rng;
    let mut solutions = 0;
    let mut max_g = 0.0f64;
    let mut max_sum = f64::NEG_INFINITY;
    let mut attempts = 0;
    while solutions < samples {
        attempts += 1;
        if attempts > samples * 100 {
            break;
        }
        let start = [
            rng.gen_range(-1.0..4.0),
            rng.gen_range(-1.0..4.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(0.2..4.0),
        ];
        let Some(z) = gauss_newton(start) else {
            continue;
        };
        let g = elimination_polynomial(z[0], z[1]).abs();
        let sum = z[0] + z[1];
        if g > tol {
            return Err(Error::CounterexampleFound(format!(
                "solution off the elimination curve: g = {g}"
            )));
        }
        if sum > 3.0 + tol {
            return Err(Error::CounterexampleFound(format!(
                "equal-width solution with x + y = {sum} > 3"
            )));
        }
        max_g = max_g.max(g);
        max_sum = max_sum.max(sum);
        solutions += 1;
    }
    if solutions == 0 {
        return Err(Error::NoSolutionsFound);
    }
    Ok(TerminalReport {
        solutions,
        max_residual_g: max_g,
        max_sum,
        pass: true,
    })
}

/// Exact maximization of `x + y` over the elimination curve.
#[derive(Clone, Debug, Serialize)]
pub struct EllipseMaxReport {
    pub max_sum: String,
    pub argmax: (String, String),
    pub pass: bool,
}

/// In the rotated coordinates `z = x + y`, `s = x − y` the curve becomes
/// `3(z−1)² + (s−3)² = 12`, and along the rational parametrization
/// `z(r) = 1 + 2(1−r²)/(1+r²)` one has `3 − z(r) = 4r²/(1+r²) ≥ 0` with
/// equality only at `r = 0`, i.e. at `(x, y) = (3, 0)`.
pub fn ellipse_max_check(rng: &mut Sampler, samples: usize) -> Result<EllipseMaxReport> {
    // the change of variables is an exact polynomial identity
    for _ in 0..samples {
        let x = random_rat_in(rng, &rat(-4), &rat(4));
        let y = random_rat_in(rng, &rat(-4), &rat(4));
        let g = &x * &x + &x * &y + &y * &y - rat(3) * &x;
        let z = &x + &y;
        let s = &x - &y;
        let lhs = rat(4) * g;
        let zm = &z - rat(1);
        let sm = &s - rat(3);
        let rhs = rat(3) * &zm * &zm + &sm * &sm - rat(12);
        if lhs != rhs {
            return Err(Error::CounterexampleFound(
                "change of variables identity failed".into(),
            ));
        }
    }
    // parametrized maximization: 3 − z(r) = 4r²/(1+r²), zero only at r = 0
    for _ in 0..samples {
        let r = random_rat_in(rng, &rat(-30), &rat(30));
        let r2 = &r * &r;
        let z = rat(1) + rat(2) * (rat(1) - &r2) / (rat(1) + &r2);
        let gap = rat(3) - &z;
        let expected = rat(4) * &r2 / (rat(1) + &r2);
        if gap != expected || gap.is_negative() {
            return Err(Error::CounterexampleFound(
                "parametrized maximization identity failed".into(),
            ));
        }
        if r.is_zero() && !gap.is_zero() {
            return Err(Error::CounterexampleFound("maximum not attained at r = 0".into()));
        }
    }
    // the maximizer: z = 3, s = 3 gives (x, y) = (3, 0), which satisfies g = 0
    let g_at = rat(9) + rat(0) + rat(0) - rat(9);
    assert!(g_at.is_zero());
    Ok(EllipseMaxReport {
        max_sum: "3".into(),
        argmax: ("3".into(), "0".into()),
        pass: true,
    })
}

/// The 3×3 minor of the colinearity gradients in the variables `(u, x, v)`
/// factors exactly as `(y+1)(t²−xy)`, and is positive on the interior of the
/// feasible region (`y > 0`, `x, y < t`).
pub fn lagrange_regularity_check(rng: &mut Sampler, samples: usize) -> Result<bool> {
    let minor = |x: &Rat, y: &Rat, t: &Rat, v: &Rat| -> Rat {
        // rows: ∂(c1,c2,c3)/∂u, /∂x, /∂v
        let row_u = [-y.clone(), -t.clone(), y - t];
        let row_x = [Rat::zero(), v + rat(1), v - y];
        let row_v = [t.clone(), x.clone(), x - t];
        det3(&row_u, &row_x, &row_v)
    };
    for _ in 0..samples {
        let x = random_rat_in(rng, &rat(-3), &rat(3));
        let y = random_rat_in(rng, &rat(-3), &rat(3));
        let t = random_rat_in(rng, &rat(-3), &rat(3));
        let v = random_rat_in(rng, &rat(-3), &rat(3));
        let m = minor(&x, &y, &t, &v);
        let factored = (&y + rat(1)) * (&t * &t - &x * &y);
        if m != factored {
            return Err(Error::CounterexampleFound(format!(
                "minor identity failed at x={x} y={y} t={t} v={v}: {m} vs {factored}"
            )));
        }
    }
    // positivity on the interior, and the excluded degenerate line x = y = t
    for _ in 0..samples {
        let t = random_rat_in(rng, &frac(1, 2), &rat(3));
        let x = random_rat_in(rng, &rat(-1), &t) .min(&t - frac(1, 1000));
        let y = random_rat_in(rng, &frac(1, 1000), &t).min(&t - frac(1, 1000));
        let v = random_rat_in(rng, &rat(-2), &rat(2));
        let m = minor(&x, &y, &t, &v);
        if !m.is_positive() {
            return Err(Error::CounterexampleFound(format!(
                "minor not positive at x={x} y={y} t={t}"
            )));
        }
        let degenerate = minor(&t, &t, &t, &v);
        if !degenerate.is_zero() {
            return Err(Error::CounterexampleFound(
                "minor should vanish on x = y = t".into(),
            ));
        }
    }
    Ok(true)
}

fn det3(r0: &[Rat; 3], r1: &[Rat; 3], r2: &[Rat; 3]) -> Rat {
    &r0[0] * (&r1[1] * &r2[2] - &r1[2] * &r2[1]) - &r0[1] * (&r1[0] * &r2[2] - &r1[2] * &r2[0])
        + &r0[2] * (&r1[0] * &r2[1] - &r1[1] * &r2[0])
}

/// The trapezoid width estimate rearranges to a single rational function:
/// with `p = a²b − 3a² + ab² − 4ab + 3a − b² + b`, `D₁ = ab − 3a − b − 1` and
/// `D₂ = ab − 3a + (b−1)²`, the bound minus 3 equals `−2(b−1)p/(D₁D₂)`.
/// Verified exactly at random rational points of the top region.
pub fn trapezoid_identity_check(rng: &mut Sampler, samples: usize) -> Result<bool> {
    for _ in 0..samples {
        // interior of the triangle (−1,1),(−1,2),(0,1): b between 1 and 1−a
        let a = random_rat_in(rng, &rat(-1), &rat(0));
        let b = random_rat_in(rng, &rat(1), &(rat(1) - &a));
        if b == rat(1) || b == rat(1) - &a || a.is_zero() || a == rat(-1) {
            continue;
        }
        let d1 = &a * &b - rat(3) * &a - &b - rat(1);
        let bm1 = &b - rat(1);
        let d2 = &a * &b - rat(3) * &a + &bm1 * &bm1;
        if d1.is_zero() || d2.is_zero() {
            continue;
        }
        let rhs = -rat(2) * &a / &d2 - (-(&a * &b) + rat(5) * &a + &b + rat(3)) / &d1;
        let p = &a * &a * &b - rat(3) * &a * &a + &a * &b * &b - rat(4) * &a * &b + rat(3) * &a
            - &b * &b
            + &b;
        let f = -rat(2) * &bm1 * &p / (&d1 * &d2);
        if &f + rat(3) != rhs {
            return Err(Error::CounterexampleFound(format!(
                "trapezoid identity failed at a={a} b={b}"
            )));
        }
        // the bound itself stays below 3 strictly in the open region
        if !f.is_negative() {
            return Err(Error::CounterexampleFound(format!(
                "trapezoid margin not negative at a={a} b={b}"
            )));
        }
    }
    Ok(true)
}

/// Positivity of the hyperbola term of the standard-triangle analysis, with
/// its boundary evaluations as exact polynomial identities:
/// `p_b(b−1) = b²` and `p_b(2b−1) = −b(b+1)`.
pub fn standard_triangle_hyperbola_check(rng: &mut Sampler, samples: usize) -> Result<bool> {
    let p = |a: &Rat, b: &Rat| -> Rat {
        -(a * a) + a * b - rat(3) * a + b * b + rat(2) * b - rat(2)
    };
    for _ in 0..samples {
        let b = random_rat_in(rng, &rat(-1), &rat(0));
        let lo = rat(2) * &b - rat(1);
        let hi = &b - rat(1);
        let a = random_rat_in(rng, &lo, &hi);
        // boundary identities
        if p(&hi, &b) != &b * &b {
            return Err(Error::CounterexampleFound("p(b−1) ≠ b²".into()));
        }
        if p(&lo, &b) != -(&b * (&b + rat(1))) {
            return Err(Error::CounterexampleFound("p(2b−1) ≠ −b(b+1)".into()));
        }
        // positivity strictly inside (the quadratic in a is concave, so the
        // interval minimum sits at an endpoint)
        if a > lo && a < hi && &b > &rat(-1) && b.is_negative() && !p(&a, &b).is_positive() {
            return Err(Error::CounterexampleFound(format!(
                "hyperbola term not positive at a={a} b={b}"
            )));
        }
    }
    Ok(true)
}

/// Kite-case algebra: the denominator `D = a(a−1) − (a−2)(b+1)` stays
/// positive on the constrained domain, and the numerator boundary value
/// factors exactly as `E(x=5) = 12(y−5/2)(y−1)²`.
pub fn kite_algebra_check(rng: &mut Sampler, samples: usize) -> Result<bool> {
    // symbolic boundary factorization in y alone
    for _ in 0..samples {
        let y = random_rat_in(rng, &rat(-4), &rat(4));
        let e5 = rat(25) * (&y - rat(2)) + rat(5) * (-rat(7) * &y * &y + rat(13) * &y + rat(5))
            + rat(12) * &y * &y * &y
            - rat(19) * &y * &y
            - rat(18) * &y
            - rat(5);
        let factored =
            rat(12) * (&y - Rat::new(5.into(), 2.into())) * (&y - rat(1)) * (&y - rat(1));
        if e5 != factored {
            return Err(Error::CounterexampleFound(format!(
                "kite boundary factorization failed at y={y}"
            )));
        }
    }
    // D > 0 on the feasible triangle b ≥ 1, b ≥ a−1, b ≤ (a+1)/2, a+3b < 5
    for _ in 0..samples {
        let b = random_rat_in(rng, &rat(1), &Rat::new(3.into(), 2.into()));
        let a_lo = rat(2) * &b - rat(1);
        let a_hi = (&b + rat(1)).min(rat(5) - rat(3) * &b);
        if a_hi <= a_lo {
            continue;
        }
        let a = random_rat_in(rng, &a_lo, &a_hi);
        if &a + rat(3) * &b >= rat(5) {
            continue;
        }
        let d = &a * (&a - rat(1)) - (&a - rat(2)) * (&b + rat(1));
        if !d.is_positive() {
            return Err(Error::CounterexampleFound(format!(
                "kite denominator not positive at a={a} b={b}"
            )));
        }
        // the numerator (b−2)D + (b+1)(a−1) stays negative strictly inside
        // the domain, keeping the vertical width below 3
        let e = (&b - rat(2)) * &d + (&b + rat(1)) * (&a - rat(1));
        if !e.is_negative() {
            return Err(Error::CounterexampleFound(format!(
                "kite numerator not negative at a={a} b={b}"
            )));
        }
        // and it matches its expansion in x = a + 3b, y = b exactly
        let x = &a + rat(3) * &b;
        let y = b.clone();
        let expanded = &x * &x * &y - rat(7) * &x * &y * &y + rat(12) * &y * &y * &y
            - rat(2) * &x * &x
            + rat(13) * &x * &y
            - rat(19) * &y * &y
            + rat(5) * &x
            - rat(18) * &y
            - rat(5);
        if e != expanded {
            return Err(Error::CounterexampleFound(format!(
                "kite numerator expansion failed at a={a} b={b}"
            )));
        }
    }
    Ok(true)
}
