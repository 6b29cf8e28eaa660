//! Exact rational scalars.
//!
//! Every coordinate in this crate is a `BigRational`, kept in lowest terms
//! with a positive denominator by the `num` crates. Floating point appears
//! only in the grid optimizer and in report rendering, never in a predicate.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// `n/d` as a rational.
pub fn frac(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_zero() -> Rat {
    BigRational::zero()
}

pub fn rat_one() -> Rat {
    BigRational::one()
}

pub fn to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Renders `p/q`, or just `p` when the value is an integer.
pub fn rat_to_string(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `"p/q"` or `"p"`, accepting signs on the numerator.
pub fn rat_from_str(s: &str) -> Result<Rat> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("invalid integer {t:?}")))
    };
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(parse_int(n)?, den))
        }
    }
}

/// Nearest rational with denominator at most `max_den`, by continued fractions.
pub fn snap_f64(x: f64, max_den: u64) -> Rat {
    assert!(x.is_finite());
    let negative = x < 0.0;
    let mut x = x.abs();
    // convergents p/q of the continued fraction expansion
    let (mut p0, mut q0, mut p1, mut q1) = (BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero());
    let cap = BigInt::from(max_den);
    for _ in 0..64 {
        let a = x.floor();
        if !a.is_finite() || a.abs() > 1e18 {
            break;
        }
        let ab = BigInt::from(a as i128);
        let p2 = &ab * &p1 + &p0;
        let q2 = &ab * &q1 + &q0;
        if q2 > cap {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let fract = x - a;
        if fract < 1e-15 {
            break;
        }
        x = 1.0 / fract;
    }
    if q1.is_zero() {
        return rat_zero();
    }
    let r = BigRational::new(p1, q1);
    if negative {
        -r
    } else {
        r
    }
}

/// Floor of a rational as `BigInt`.
pub fn rat_floor(x: &Rat) -> BigInt {
    x.floor().to_integer()
}

/// Ceiling of a rational as `BigInt`.
pub fn rat_ceil(x: &Rat) -> BigInt {
    x.ceil().to_integer()
}

/// Floor/ceil clamped into `i64`; panics if out of range (all callers stay tiny).
pub fn rat_floor_i64(x: &Rat) -> i64 {
    rat_floor(x).to_i64().expect("coordinate out of i64 range")
}

pub fn rat_ceil_i64(x: &Rat) -> i64 {
    rat_ceil(x).to_i64().expect("coordinate out of i64 range")
}

pub fn rat_abs(x: &Rat) -> Rat {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        assert_eq!(rat_to_string(&rat_from_str("3").unwrap()), "3");
        assert_eq!(rat_to_string(&rat_from_str("-4/6").unwrap()), "-2/3");
        assert_eq!(rat_to_string(&rat_from_str(" 10/3 ").unwrap()), "10/3");
        assert!(rat_from_str("1/0").is_err());
        assert!(rat_from_str("x").is_err());
    }

    #[test]
    fn snapping() {
        assert_eq!(snap_f64(0.5, 1000), frac(1, 2));
        assert_eq!(snap_f64(-2.0, 1000), rat(-2));
        let pi = snap_f64(std::f64::consts::PI, 1000);
        assert!((to_f64(&pi) - std::f64::consts::PI).abs() < 1e-6);
    }
}
