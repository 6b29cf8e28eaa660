//! Certified rational enclosures of the irrational constants.
//!
//! Inequality checks never evaluate an irrational number: each constant is a
//! pair `lo ≤ value ≤ hi` of rationals with `hi − lo ≤ 2⁻⁴⁰ < 10⁻¹²`, and
//! every assertion uses the side that makes it stronger.

use crate::rational::{frac, rat, Rat};
use num_bigint::BigInt;

use num_traits::Signed;

#[derive(Clone, Debug)]
pub struct Enclosure {
    pub lo: Rat,
    pub hi: Rat,
}

impl Enclosure {
    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }
}

const SHIFT: u32 = 40;

/// Enclosure of `√x` for a nonnegative rational `x`, of width `≤ 2⁻⁴⁰`.
pub fn sqrt_enclosure(x: &Rat) -> Enclosure {
    assert!(!x.is_negative());
    // isqrt(x · 4^s) brackets √x · 2^s within one
    let scaled = x * Rat::from_integer(BigInt::from(1) << (2 * SHIFT as usize));
    let floor_scaled = scaled.floor().to_integer();
    let root = floor_scaled.sqrt();
    let denom = BigInt::from(1) << SHIFT as usize;
    let lo = Rat::new(root.clone(), denom.clone());
    let hi = Rat::new(root + 1, denom);
    debug_assert!(&lo * &lo <= *x && *x <= &hi * &hi);
    Enclosure { lo, hi }
}

/// `√2`.
pub fn sqrt2() -> Enclosure {
    sqrt_enclosure(&rat(2))
}

/// `√3`.
pub fn sqrt3() -> Enclosure {
    sqrt_enclosure(&rat(3))
}

/// The hollow-body width bound `1 + 2/√3`.
pub fn flatness_zero() -> Enclosure {
    let s = sqrt3();
    // 2/√3 ∈ [2/hi, 2/lo]
    Enclosure {
        lo: rat(1) + rat(2) / &s.hi,
        hi: rat(1) + rat(2) / &s.lo,
    }
}

/// The unit-volume width bound `√(8/3)`.
pub fn flatness_volume() -> Enclosure {
    sqrt_enclosure(&frac(8, 3))
}

/// π, from its decimal expansion 3.14159265358979323846(26...).
pub fn pi() -> Enclosure {
    let den = BigInt::from(10u8).pow(20);
    let lo_num: BigInt = "314159265358979323846".parse().unwrap();
    Enclosure {
        lo: Rat::new(lo_num.clone(), den.clone()),
        hi: Rat::new(lo_num + 1, den),
    }
}

/// Named constants with verified enclosures, for reports.
pub fn named_constants() -> Vec<(&'static str, Enclosure)> {
    vec![
        ("hollow-width-bound = 1 + 2/sqrt(3)", flatness_zero()),
        ("one-point-width-bound = 3", Enclosure { lo: rat(3), hi: rat(3) }),
        ("two-point-width-bound = 10/3", Enclosure { lo: frac(10, 3), hi: frac(10, 3) }),
        ("unit-volume-width-bound = sqrt(8/3)", flatness_volume()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::to_f64;

    #[test]
    fn enclosures_bracket_their_values() {
        let tight = frac(1, 1_000_000_000_000i64);
        let s2 = sqrt2();
        assert!(&s2.lo * &s2.lo <= rat(2) && rat(2) <= &s2.hi * &s2.hi);
        assert!(s2.width() <= tight);
        let s3 = sqrt3();
        assert!(&s3.lo * &s3.lo <= rat(3) && rat(3) <= &s3.hi * &s3.hi);
        // 3(x−1)² vs 4 at both ends of 1 + 2/√3
        let f0 = flatness_zero();
        let lo1 = &f0.lo - rat(1);
        let hi1 = &f0.hi - rat(1);
        assert!(rat(3) * &lo1 * &lo1 <= rat(4));
        assert!(rat(3) * &hi1 * &hi1 >= rat(4));
        assert!(f0.width() <= tight);
        let fv = flatness_volume();
        assert!(&fv.lo * &fv.lo <= frac(8, 3) && frac(8, 3) <= &fv.hi * &fv.hi);
        let p = pi();
        assert!(to_f64(&p.lo) <= std::f64::consts::PI && std::f64::consts::PI <= to_f64(&p.hi));
        assert!(p.width() <= tight);
    }
}
