//! Truncated formal power series: the ring every jet in the crate lives in.

mod bivariate;
mod complex;
mod univariate;

pub use bivariate::{Axis, PowerSeries2, DIVISIBILITY_TOL};
pub use complex::ComplexSeries1;
pub use univariate::PowerSeries1;

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 12;
