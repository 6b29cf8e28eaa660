//! Points and primitive integer directions.

use crate::error::{Error, Result};
use crate::rational::{rat, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// Exact rational point in the plane.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pt {
    pub x: Rat,
    pub y: Rat,
}

impl fmt::Debug for Pt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Pt {
    pub fn new(x: Rat, y: Rat) -> Self {
        Pt { x, y }
    }

    pub fn ints(x: i64, y: i64) -> Self {
        Pt { x: rat(x), y: rat(y) }
    }

    pub fn origin() -> Self {
        Pt::ints(0, 0)
    }

    pub fn scale(&self, k: &Rat) -> Pt {
        Pt::new(k * &self.x, k * &self.y)
    }

    pub fn cross(&self, other: &Pt) -> Rat {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn dot(&self, other: &Pt) -> Rat {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn is_integer(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    /// Integer coordinates, if both are integral.
    pub fn as_int(&self) -> Option<(BigInt, BigInt)> {
        if self.is_integer() {
            Some((self.x.to_integer(), self.y.to_integer()))
        } else {
            None
        }
    }
}

impl Add for &Pt {
    type Output = Pt;
    fn add(self, rhs: &Pt) -> Pt {
        Pt::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl Sub for &Pt {
    type Output = Pt;
    fn sub(self, rhs: &Pt) -> Pt {
        Pt::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl Neg for &Pt {
    type Output = Pt;
    fn neg(self) -> Pt {
        Pt::new(-&self.x, -&self.y)
    }
}

/// Orientation of the triple `(a, b, c)`: positive means counterclockwise.
pub fn orient(a: &Pt, b: &Pt, c: &Pt) -> Rat {
    (b - a).cross(&(c - a))
}

/// Primitive nonzero integer direction.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Direction {
    pub x: i64,
    pub y: i64,
}

impl fmt::Debug for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.x, self.y)
    }
}

impl Direction {
    /// Reduces `(x, y)` to a primitive vector; errors on the zero vector.
    pub fn new(x: i64, y: i64) -> Result<Self> {
        if x == 0 && y == 0 {
            return Err(Error::InvalidPolygon("zero direction".into()));
        }
        let g = x.unsigned_abs().gcd(&y.unsigned_abs()) as i64;
        Ok(Direction { x: x / g, y: y / g })
    }

    pub fn norm_sq(&self) -> i64 {
        self.x * self.x + self.y * self.y
    }

    pub fn neg(&self) -> Direction {
        Direction { x: -self.x, y: -self.y }
    }

    /// Canonical representative of `{u, -u}`: x > 0, or x == 0 and y > 0.
    pub fn canonical(&self) -> Direction {
        if self.x > 0 || (self.x == 0 && self.y > 0) {
            *self
        } else {
            self.neg()
        }
    }

    pub fn as_pt(&self) -> Pt {
        Pt::ints(self.x, self.y)
    }
}

/// The six width directions `±e1, ±e2, ±(e2−e1)`, one per sign class.
pub fn base_direction_set() -> Vec<Direction> {
    vec![
        Direction { x: 1, y: 0 },
        Direction { x: 0, y: 1 },
        Direction { x: 1, y: -1 },
    ]
}

/// Primitive integer vector parallel to a rational vector.
pub fn primitive_from_rational(dx: &Rat, dy: &Rat) -> Result<(BigInt, BigInt)> {
    if dx.is_zero() && dy.is_zero() {
        return Err(Error::InvalidPolygon("zero vector".into()));
    }
    let scale = dx.denom().lcm(dy.denom());
    let nx = dx.numer() * (&scale / dx.denom());
    let ny = dy.numer() * (&scale / dy.denom());
    let g = nx.gcd(&ny);
    debug_assert!(g.is_positive());
    Ok((nx / &g, ny / &g))
}
