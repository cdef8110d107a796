//! Construction, classification and verification of zero mean curvature
//! (and more generally φ-admissible) surface germs in Lorentz–Minkowski
//! 3-space at light-like points.
//!
//! Surfaces are graphs `F(x, y) = (f(x, y), x, y)` in coordinates `(t, x, y)`
//! with metric signature `(-++)`. Germs are represented by truncated power
//! series about the light-like base point.

pub mod approx;
pub mod ck;
pub mod curves;
pub mod error;
pub mod export;
pub mod gallery;
pub mod geometry;
pub mod series;
pub mod trace;

pub use error::{Error, Result};
