//! Exact planar lattice geometry.
//!
//! Everything is built on arbitrary-precision rationals: convex polygons and
//! hulls, lattice widths with certified direction enumeration, blocking
//! points and k-maximal extensions, covering-radius brackets, transference
//! products, the parametrized circumscriber families of the classified
//! blocking polygons, and brute-force search oracles over small lattice
//! polygons. Floating point appears only inside the grid optimizer and in
//! report rendering; every asserted inequality is decided in exact
//! arithmetic or through certified rational enclosures.

pub mod cases;
pub mod catalog;
pub mod covering;
pub mod enclosure;
pub mod error;
pub mod inequalities;
pub mod json;
pub mod maximality;
pub mod metrics;
pub mod point;
pub mod polygon;
pub mod rational;
pub mod region;
pub mod sampling;
pub mod search;
pub mod unimodular;

pub use error::{Error, Result};
pub use metrics::{lattice_width, width_in_direction, width_over_set, WidthResult};
pub use point::{Direction, Pt};
pub use polygon::{convex_hull, HalfPlane, LatticePolygon};
pub use rational::Rat;
pub use unimodular::{apply_map, are_equivalent, UnimodularMap};
