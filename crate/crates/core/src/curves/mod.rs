//! Null curves and the Björling-type reconstruction of ZMC surfaces, and
//! light-like ruled surfaces over space-like curves.

pub mod null;
pub mod ruled;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::series::PowerSeries1;

pub use null::{bjorling_grid, bjorling_reconstruct, BjorlingPatch, BjorlingSample, NullCurve};
pub use ruled::{graph_of_ruled, make_director, ruled_surface_eval, BaseCurve, Branch, RuledGraph, RuledLightlike, SpacelikeCurve};

/// `⟨a, b⟩ = -a⁰b⁰ + a¹b¹ + a²b²`.
pub fn lorentz_dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    -a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Euclidean `|a × b|`.
pub fn cross_norm(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    let c = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
    (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt()
}

/// Elementary function of one variable, written over series.
pub type CurveExpr = fn(&PowerSeries1) -> Result<PowerSeries1>;

/// A real-analytic scalar function given either as a closed form or as a
/// polynomial (a truncated series about 0).
#[derive(Clone)]
pub enum CurveFn {
    Series(PowerSeries1),
    Expr { name: String, expr: CurveExpr },
}

impl fmt::Debug for CurveFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveFn::Series(s) => f.debug_tuple("Series").field(s).finish(),
            CurveFn::Expr { name, .. } => f.debug_tuple("Expr").field(name).finish(),
        }
    }
}

impl CurveFn {
    pub fn expr(name: impl Into<String>, expr: CurveExpr) -> Self {
        CurveFn::Expr { name: name.into(), expr }
    }

    /// Expansion about `t0`.
    pub fn taylor(&self, t0: f64, order: usize) -> Result<PowerSeries1> {
        match self {
            CurveFn::Expr { expr, .. } => expr(&PowerSeries1::variable_at(t0, order)),
            CurveFn::Series(p) => {
                if t0 == 0.0 {
                    return Ok(p.truncate(order));
                }
                // re-expand the polynomial about t0
                let t = PowerSeries1::variable_at(t0, order);
                let mut acc = PowerSeries1::zeros(order);
                for &c in p.coeffs().iter().rev() {
                    acc = &(&acc * &t) + c;
                }
                Ok(acc)
            }
        }
    }

    /// Value, first and second derivative.
    pub fn jet(&self, t: f64) -> Result<[f64; 3]> {
        match self {
            CurveFn::Series(p) => Ok(p.eval_jet(t)),
            CurveFn::Expr { .. } => {
                let s = self.taylor(t, 2)?;
                Ok([s.coeff(0), s.coeff(1), 2.0 * s.coeff(2)])
            }
        }
    }
}

/// Descriptor of a curve for reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveInfo {
    pub name: String,
    pub interval: (f64, f64),
}
