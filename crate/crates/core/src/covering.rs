//! Certified covering-radius brackets.
//!
//! The covering radius is bisected using one exact predicate: `λ ≤ μ(P)` iff
//! some translate of `λP` has no interior lattice point, iff the open copies
//! `int(λP) − z`, `z ∈ ℤ²`, fail to cover the unit torus. The uncovered set
//! is closed and, when non-empty, contains a vertex of the line arrangement
//! spanned by the copies' edges together with the cell boundary, so checking
//! those finitely many vertices decides the predicate exactly.

use crate::error::{Error, Result};
use crate::point::Pt;
use crate::polygon::{line_intersection, HalfPlane, LatticePolygon};
use crate::rational::{rat, rat_ceil_i64, rat_floor_i64, to_f64, Rat};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Certified two-sided bracket around the covering radius.
#[derive(Clone, Debug)]
pub struct CoveringRadiusBracket {
    pub lower: Rat,
    pub upper: Rat,
    /// Translate making `lower·P + witness_translate` hollow.
    pub witness_translate: Pt,
}

struct TranslateF64 {
    // per edge: (nx, ny, offset)
    edges: Vec<(f64, f64, f64)>,
}

/// Decides whether `λP` admits a hollow translate and returns a witness.
pub fn hollow_dilate(p: &LatticePolygon, lambda: &Rat) -> Result<Option<Pt>> {
    if !p.is_full_dimensional() {
        return Err(Error::DegeneratePolygon);
    }
    if !lambda.is_positive() {
        // a point is hollow
        return Ok(Some(Pt::origin()));
    }
    let dilate = p.scale(lambda);
    let hps = dilate.halfplane_description()?;
    let (xmin, xmax, ymin, ymax) = dilate.bbox();

    // translates λP − z meeting [0,1]²
    let zx0 = rat_ceil_i64(&(xmin - rat(1)));
    let zx1 = rat_floor_i64(&xmax);
    let zy0 = rat_ceil_i64(&(ymin - rat(1)));
    let zy1 = rat_floor_i64(&ymax);
    let mut translates: Vec<Vec<HalfPlane>> = Vec::new();
    for zx in zx0..=zx1 {
        for zy in zy0..=zy1 {
            let shifted: Vec<HalfPlane> = hps
                .iter()
                .map(|h| {
                    let dz = Rat::from_integer(&h.normal.0 * BigInt::from(zx))
                        + Rat::from_integer(&h.normal.1 * BigInt::from(zy));
                    HalfPlane::new(h.normal.clone(), &h.offset - dz)
                })
                .collect();
            translates.push(shifted);
        }
    }

    // line set: edge lines of every translate plus the cell boundary
    let mut lines: Vec<HalfPlane> = Vec::new();
    for t in &translates {
        lines.extend(t.iter().cloned());
    }
    for (nx, ny, c) in [(1, 0, 0), (1, 0, 1), (0, 1, 0), (0, 1, 1)] {
        lines.push(HalfPlane::new((BigInt::from(nx), BigInt::from(ny)), rat(c)));
    }
    dedup_lines(&mut lines);

    let approx: Vec<TranslateF64> = translates
        .iter()
        .map(|t| TranslateF64 {
            edges: t
                .iter()
                .map(|h| {
                    (
                        to_f64(&Rat::from_integer(h.normal.0.clone())),
                        to_f64(&Rat::from_integer(h.normal.1.clone())),
                        to_f64(&h.offset),
                    )
                })
                .collect(),
        })
        .collect();
    let lines_f: Vec<(f64, f64, f64)> = lines
        .iter()
        .map(|h| {
            (
                to_f64(&Rat::from_integer(h.normal.0.clone())),
                to_f64(&Rat::from_integer(h.normal.1.clone())),
                to_f64(&h.offset),
            )
        })
        .collect();

    const EPS: f64 = 1e-7;
    for i in 0..lines.len() {
        for j in (i + 1)..lines.len() {
            // f64 intersection first; exact only near decision boundaries
            let (a0, a1, ac) = lines_f[i];
            let (b0, b1, bc) = lines_f[j];
            let det = a0 * b1 - a1 * b0;
            if det.abs() < 1e-12 {
                continue;
            }
            let x = (ac * b1 - a1 * bc) / det;
            let y = (a0 * bc - ac * b0) / det;
            if !(-EPS..=1.0 + EPS).contains(&x) || !(-EPS..=1.0 + EPS).contains(&y) {
                continue;
            }
            // covered iff strictly inside some open translate
            let mut covered = false;
            for t in &approx {
                let mut min_slack = f64::INFINITY;
                for &(nx, ny, c) in &t.edges {
                    min_slack = min_slack.min(c - (nx * x + ny * y));
                }
                if min_slack > EPS {
                    covered = true;
                    break;
                }
            }
            if covered {
                continue;
            }
            // exact confirmation of the candidate vertex
            let pt = match line_intersection(&lines[i], &lines[j]) {
                Some(p) => p,
                None => continue,
            };
            if pt.x.is_negative()
                || pt.x > rat(1)
                || pt.y.is_negative()
                || pt.y > rat(1)
            {
                continue;
            }
            let strictly_covered = translates
                .iter()
                .any(|t| t.iter().all(|h| h.slack(&pt).is_positive()));
            if !strictly_covered {
                // G°(λP − pt) = 0, so λP + (−pt) is hollow
                return Ok(Some(-&pt));
            }
        }
    }
    Ok(None)
}

fn dedup_lines(lines: &mut Vec<HalfPlane>) {
    // lines only matter up to sign of (normal, offset)
    for h in lines.iter_mut() {
        let flip = h.normal.0.is_negative()
            || (h.normal.0.is_zero() && h.normal.1.is_negative());
        if flip {
            h.normal.0 = -h.normal.0.clone();
            h.normal.1 = -h.normal.1.clone();
            h.offset = -h.offset.clone();
        }
    }
    lines.sort_by(|a, b| {
        (&a.normal.0, &a.normal.1, &a.offset).cmp(&(&b.normal.0, &b.normal.1, &b.offset))
    });
    lines.dedup();
}

/// Bracket of width at most `tol` around the covering radius, certified on
/// both sides by the hollow-translate predicate.
pub fn covering_radius_bracket(p: &LatticePolygon, tol: &Rat) -> Result<CoveringRadiusBracket> {
    if !tol.is_positive() {
        return Err(Error::InvalidTolerance);
    }
    if !p.is_full_dimensional() {
        return Err(Error::DegeneratePolygon);
    }
    let mut lo = Rat::zero();
    let mut witness = Pt::origin();
    let mut hi = rat(1);
    let mut guard = 0;
    while let Some(w) = hollow_dilate(p, &hi)? {
        lo = hi.clone();
        witness = w;
        hi = &hi * rat(2);
        guard += 1;
        assert!(guard < 32, "covering radius out of range");
    }
    while &hi - &lo > *tol {
        let mid = (&hi + &lo) / rat(2);
        match hollow_dilate(p, &mid)? {
            Some(w) => {
                lo = mid;
                witness = w;
            }
            None => hi = mid,
        }
    }
    Ok(CoveringRadiusBracket {
        lower: lo,
        upper: hi,
        witness_translate: witness,
    })
}

/// `true` when the covering radius is certified ≤ 1, i.e. `P + ℤ²` covers
/// the plane. One hollowness test, no bisection.
pub fn covers_plane(p: &LatticePolygon) -> Result<bool> {
    Ok(hollow_dilate(p, &rat(1))?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::rational::frac;

    fn assert_contains(b: &CoveringRadiusBracket, v: &Rat) {
        assert!(
            b.lower <= *v && *v <= b.upper,
            "bracket [{}, {}] misses {}",
            b.lower,
            b.upper,
            v
        );
    }

    #[test]
    fn unit_square_tiles() {
        let b = covering_radius_bracket(&catalog::unit_square(), &frac(1, 100)).unwrap();
        assert_contains(&b, &rat(1));
    }

    #[test]
    fn standard_triangle_covering_radius_is_two() {
        let b = covering_radius_bracket(&catalog::standard_triangle(), &frac(1, 64)).unwrap();
        assert_contains(&b, &rat(2));
        // coarse torus sweep agrees: 2Δ₂ is hollow, (2+ε)Δ₂ has no hollow translate
        assert!(hollow_dilate(&catalog::standard_triangle(), &rat(2))
            .unwrap()
            .is_some());
        assert!(hollow_dilate(&catalog::standard_triangle(), &frac(21, 10))
            .unwrap()
            .is_none());
    }

    #[test]
    fn scaling_law() {
        let b = covering_radius_bracket(&catalog::scaled_standard_triangle(3), &frac(1, 64)).unwrap();
        assert_contains(&b, &frac(2, 3));
    }

    #[test]
    fn witness_is_hollow() {
        let p = catalog::standard_triangle();
        let b = covering_radius_bracket(&p, &frac(1, 16)).unwrap();
        if b.lower.is_positive() {
            let hollow = p.scale(&b.lower).translate(&b.witness_translate);
            assert_eq!(hollow.interior_count(), 0);
        }
    }

    #[test]
    fn brackets_nest() {
        let p = catalog::terminal_triangle();
        let coarse = covering_radius_bracket(&p, &frac(1, 8)).unwrap();
        let fine = covering_radius_bracket(&p, &frac(1, 128)).unwrap();
        assert!(coarse.lower <= fine.lower);
        assert!(fine.upper <= coarse.upper);
        assert!(&fine.upper - &fine.lower <= frac(1, 128));
    }

    #[test]
    fn tolerance_validation() {
        assert!(matches!(
            covering_radius_bracket(&catalog::unit_square(), &rat(0)),
            Err(Error::InvalidTolerance)
        ));
    }
}
