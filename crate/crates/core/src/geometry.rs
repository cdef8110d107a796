//! Scalar fields of a graph immersion `F = (f(x, y), x, y)`, causal types and
//! φ-admissibility.
//!
//! With `B = 1 - f_x² - f_y²` a point is space-like when `B > 0` and
//! time-like when `B < 0`. The mean curvature is `A / (2|B|^{3/2})` and the
//! Gaussian curvature `-C / B²`, where
//! `A = (1 - f_x²) f_yy + 2 f_x f_y f_xy + (1 - f_y²) f_xx` and
//! `C = f_xx f_yy - f_xy²`.

use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{Axis, PowerSeries2};

/// Relative band around `B = 0` treated as light-like: `|B| <= tol (1 + |∇f|²)`.
pub const LIGHTLIKE_TOL: f64 = 1e-9;
/// `|∇B(o)|` below this is a degenerate light-like point.
pub const DEGENERACY_TOL: f64 = 1e-12;

/// Value, gradient and Hessian of `f` at a point.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Jet2 {
    pub f: f64,
    pub fx: f64,
    pub fy: f64,
    pub fxx: f64,
    pub fxy: f64,
    pub fyy: f64,
}

impl Jet2 {
    /// Read the jet off a series expanded about the point itself.
    pub fn from_local_series(s: &PowerSeries2) -> Self {
        Jet2 {
            f: s.get(0, 0),
            fx: s.get(1, 0),
            fy: s.get(0, 1),
            fxx: 2.0 * s.get(2, 0),
            fxy: s.get(1, 1),
            fyy: 2.0 * s.get(0, 2),
        }
    }

    pub fn from_series_at(s: &PowerSeries2, x: f64, y: f64) -> Self {
        Jet2 {
            f: s.eval(x, y),
            fx: s.eval_partial(1, 0, x, y),
            fy: s.eval_partial(0, 1, x, y),
            fxx: s.eval_partial(2, 0, x, y),
            fxy: s.eval_partial(1, 1, x, y),
            fyy: s.eval_partial(0, 2, x, y),
        }
    }

    pub fn b(&self) -> f64 {
        1.0 - self.fx * self.fx - self.fy * self.fy
    }

    pub fn a(&self) -> f64 {
        (1.0 - self.fx * self.fx) * self.fyy
            + 2.0 * self.fx * self.fy * self.fxy
            + (1.0 - self.fy * self.fy) * self.fxx
    }

    pub fn c(&self) -> f64 {
        self.fxx * self.fyy - self.fxy * self.fxy
    }

    pub fn grad_sq(&self) -> f64 {
        self.fx * self.fx + self.fy * self.fy
    }

    pub fn is_lightlike(&self) -> bool {
        self.b().abs() <= LIGHTLIKE_TOL * (1.0 + self.grad_sq())
    }
}

/// A surface given by an evaluator rather than a stored series.
pub trait SurfaceFn: Send + Sync + fmt::Debug {
    fn jet(&self, x: f64, y: f64) -> Result<Jet2>;

    /// Taylor expansion about `(x0, y0)` in shifted coordinates.
    fn taylor(&self, _x0: f64, _y0: f64, _order: usize) -> Result<PowerSeries2> {
        Err(Error::Unsupported("Taylor expansion of this evaluator".into()))
    }
}

/// Elementary closed form, written once over series so that both point jets
/// and Taylor expansions come from the same expression.
pub type SurfaceExpr = fn(&PowerSeries2, &PowerSeries2) -> Result<PowerSeries2>;

/// `f(x, y) = expr(R_θ(x, y)) + offset` with `R_θ(x, y) = (x cos θ + y sin θ, -x sin θ + y cos θ)`.
#[derive(Clone)]
pub struct ClosedForm {
    pub name: String,
    pub expr: SurfaceExpr,
    pub offset: f64,
    pub rotation: f64,
}

impl fmt::Debug for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ClosedForm")
            .field("name", &self.name)
            .field("offset", &self.offset)
            .field("rotation", &self.rotation)
            .finish()
    }
}

impl ClosedForm {
    pub fn new(name: impl Into<String>, expr: SurfaceExpr) -> Self {
        ClosedForm { name: name.into(), expr, offset: 0.0, rotation: 0.0 }
    }

    pub fn with_offset(mut self, offset: f64) -> Self {
        self.offset = offset;
        self
    }

    pub fn value(&self, x: f64, y: f64) -> Result<f64> {
        Ok(self.taylor(x, y, 0)?.constant_term())
    }
}

impl SurfaceFn for ClosedForm {
    fn jet(&self, x: f64, y: f64) -> Result<Jet2> {
        Ok(Jet2::from_local_series(&self.taylor(x, y, 2)?))
    }

    fn taylor(&self, x0: f64, y0: f64, order: usize) -> Result<PowerSeries2> {
        let xs = PowerSeries2::x_at(x0, order);
        let ys = PowerSeries2::y_at(y0, order);
        let (c, s) = (self.rotation.cos(), self.rotation.sin());
        let (xr, yr) = if self.rotation == 0.0 {
            (xs, ys)
        } else {
            (&xs.scale(c) + &ys.scale(s), &xs.scale(-s) + &ys.scale(c))
        };
        Ok(&(self.expr)(&xr, &yr)? + self.offset)
    }
}

/// Graph germ `t = f(x, y)`: a truncated series about the origin, an
/// evaluator, or both. Point queries prefer the evaluator.
#[derive(Clone, Debug)]
pub struct GraphSurface {
    series: Option<PowerSeries2>,
    evaluator: Option<Arc<dyn SurfaceFn>>,
}

impl GraphSurface {
    pub fn from_series(series: PowerSeries2) -> Self {
        GraphSurface { series: Some(series), evaluator: None }
    }

    pub fn from_fn(f: impl SurfaceFn + 'static) -> Self {
        GraphSurface { series: None, evaluator: Some(Arc::new(f)) }
    }

    pub fn from_arc(f: Arc<dyn SurfaceFn>) -> Self {
        GraphSurface { series: None, evaluator: Some(f) }
    }

    pub fn with_series(mut self, series: PowerSeries2) -> Self {
        self.series = Some(series);
        self
    }

    pub fn series(&self) -> Option<&PowerSeries2> {
        self.series.as_ref()
    }

    pub fn evaluator(&self) -> Option<&Arc<dyn SurfaceFn>> {
        self.evaluator.as_ref()
    }

    /// The stored series (truncated to `order`), or the evaluator's expansion at `o`.
    pub fn taylor(&self, order: usize) -> Result<PowerSeries2> {
        match (&self.series, &self.evaluator) {
            (Some(s), _) if s.order() >= order => Ok(s.truncate(order)),
            (_, Some(e)) => e.taylor(0.0, 0.0, order),
            (Some(s), None) => Ok(s.clone()),
            (None, None) => unreachable!("surface without representation"),
        }
    }

    pub fn jet(&self, x: f64, y: f64) -> Result<Jet2> {
        match (&self.evaluator, &self.series) {
            (Some(e), _) => e.jet(x, y),
            (None, Some(s)) => Ok(Jet2::from_series_at(s, x, y)),
            (None, None) => unreachable!("surface without representation"),
        }
    }

    pub fn value(&self, x: f64, y: f64) -> Result<f64> {
        Ok(self.jet(x, y)?.f)
    }

    /// Whether `f(0,0) = 0`, `f_x(0,0) = 0`, `f_y(0,0) = 1` to `tol`.
    pub fn is_normalized(&self, tol: f64) -> Result<bool> {
        let j = self.jet(0.0, 0.0)?;
        Ok(j.f.abs() <= tol && j.fx.abs() <= tol && (j.fy - 1.0).abs() <= tol)
    }
}

/// `B = 1 - f_x² - f_y²`, order `N - 1`.
pub fn field_b(f: &PowerSeries2) -> PowerSeries2 {
    let fx = f.diff(Axis::X);
    let fy = f.diff(Axis::Y);
    &(&PowerSeries2::constant(1.0, fx.order()) - &(&fx * &fx)) - &(&fy * &fy)
}

/// `A = (1 - f_x²) f_yy + 2 f_x f_y f_xy + (1 - f_y²) f_xx`, order `N - 2`.
pub fn field_a(f: &PowerSeries2) -> PowerSeries2 {
    let fx = f.diff(Axis::X);
    let fy = f.diff(Axis::Y);
    let fxx = fx.diff(Axis::X);
    let fxy = fx.diff(Axis::Y);
    let fyy = fy.diff(Axis::Y);
    let one = PowerSeries2::constant(1.0, fxx.order());
    let t1 = &(&one - &(&fx * &fx)) * &fyy;
    let t2 = &(&(&fx * &fy) * &fxy) * 2.0;
    let t3 = &(&one - &(&fy * &fy)) * &fxx;
    &(&t1 + &t2) + &t3
}

/// `C = f_xx f_yy - f_xy²`, order `N - 2`.
pub fn field_c(f: &PowerSeries2) -> PowerSeries2 {
    let fxx = f.diff(Axis::X).diff(Axis::X);
    let fxy = f.diff(Axis::X).diff(Axis::Y);
    let fyy = f.diff(Axis::Y).diff(Axis::Y);
    &(&fxx * &fyy) - &(&fxy * &fxy)
}

pub fn mean_curvature(f: &GraphSurface, x: f64, y: f64) -> Result<f64> {
    let j = f.jet(x, y)?;
    if j.is_lightlike() {
        return Err(Error::LightlikePoint { x, y, b: j.b() });
    }
    Ok(j.a() / (2.0 * j.b().abs().powf(1.5)))
}

pub fn gauss_curvature(f: &GraphSurface, x: f64, y: f64) -> Result<f64> {
    let j = f.jet(x, y)?;
    if j.is_lightlike() {
        return Err(Error::LightlikePoint { x, y, b: j.b() });
    }
    Ok(-j.c() / (j.b() * j.b()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CausalType {
    Spacelike,
    Timelike,
    Lightlike,
}

impl CausalType {
    pub fn as_str(self) -> &'static str {
        match self {
            CausalType::Spacelike => "spacelike",
            CausalType::Timelike => "timelike",
            CausalType::Lightlike => "lightlike",
        }
    }
}

impl fmt::Display for CausalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CausalSample {
    pub x: f64,
    pub y: f64,
    pub f: f64,
    pub b: f64,
    pub a: f64,
    pub c: f64,
    pub tag: CausalType,
    /// Mean curvature, `None` at light-like points.
    pub h: Option<f64>,
    /// Gaussian curvature, `None` at light-like points.
    pub k: Option<f64>,
}

impl CausalSample {
    pub fn from_jet(x: f64, y: f64, j: &Jet2) -> Self {
        let b = j.b();
        let tag = if j.is_lightlike() {
            CausalType::Lightlike
        } else if b > 0.0 {
            CausalType::Spacelike
        } else {
            CausalType::Timelike
        };
        let (h, k) = if tag == CausalType::Lightlike {
            (None, None)
        } else {
            (Some(j.a() / (2.0 * b.abs().powf(1.5))), Some(-j.c() / (b * b)))
        };
        CausalSample { x, y, f: j.f, b, a: j.a(), c: j.c(), tag, h, k }
    }
}

pub fn classify_point(f: &GraphSurface, x: f64, y: f64) -> Result<CausalSample> {
    Ok(CausalSample::from_jet(x, y, &f.jet(x, y)?))
}

/// Rectangular sample box `[x0, x1] × [y0, y1]` with `nx × ny` nodes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleBox {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
    pub nx: usize,
    pub ny: usize,
}

impl Default for SampleBox {
    fn default() -> Self {
        SampleBox { x0: -0.3, x1: 0.3, y0: -0.3, y1: 0.3, nx: 101, ny: 101 }
    }
}

impl SampleBox {
    pub fn symmetric(half: f64, n: usize) -> Self {
        SampleBox { x0: -half, x1: half, y0: -half, y1: half, nx: n, ny: n }
    }

    fn lin(a: f64, b: f64, n: usize, i: usize) -> f64 {
        if n <= 1 {
            a
        } else {
            a + (b - a) * i as f64 / (n - 1) as f64
        }
    }

    /// Nodes in row-major order (`y` outer, `x` inner).
    pub fn points(&self) -> Vec<(f64, f64)> {
        (0..self.ny)
            .flat_map(|j| {
                let y = Self::lin(self.y0, self.y1, self.ny, j);
                (0..self.nx).map(move |i| (Self::lin(self.x0, self.x1, self.nx, i), y))
            })
            .collect()
    }
}

/// Classify every node of a box; parallel, output in row-major order.
pub fn classify_grid(f: &GraphSurface, grid: &SampleBox) -> Result<Vec<CausalSample>> {
    grid.points()
        .into_par_iter()
        .map(|(x, y)| classify_point(f, x, y))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Degeneracy {
    Nondegenerate,
    Degenerate,
}

/// Whether the light-like base point is degenerate, i.e. `∇B(o) = 0`.
pub fn lightlike_degeneracy(f: &GraphSurface) -> Result<Degeneracy> {
    let b = field_b(&f.taylor(3)?);
    let b0 = b.constant_term();
    if b0.abs() > LIGHTLIKE_TOL {
        return Err(Error::NotLightlike(b0));
    }
    let grad = b.get(1, 0).hypot(b.get(0, 1));
    Ok(if grad < DEGENERACY_TOL { Degeneracy::Degenerate } else { Degeneracy::Nondegenerate })
}

/// Coefficient-wise residual of `A - φ B²`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub order: usize,
    pub max_residual: f64,
    /// Total degree where the largest residual sits.
    pub worst_degree: usize,
    pub tol: f64,
    pub passed: bool,
}

pub fn admissibility_residual(f: &PowerSeries2, phi: &PowerSeries2) -> PowerSeries2 {
    let a = field_a(f);
    let b = field_b(f);
    let b2 = &b * &b;
    &a - &(phi * &b2)
}

pub fn verify_admissible(f: &PowerSeries2, phi: &PowerSeries2, tol: f64) -> AdmissibilityReport {
    let r = admissibility_residual(f, phi);
    let (mut max_residual, mut worst_degree) = (0.0, 0);
    for (j, k, c) in r.terms() {
        if c.abs() > max_residual {
            max_residual = c.abs();
            worst_degree = j + k;
        }
    }
    AdmissibilityReport {
        order: r.order(),
        max_residual,
        worst_degree,
        tol,
        passed: max_residual <= tol,
    }
}

fn homogeneous_max(s: &PowerSeries2, d: usize) -> f64 {
    (0..=d).map(|k| s.get(d - k, k).abs()).fold(0.0, f64::max)
}

/// Recover `φ` with `A = φ B²` from the jet of `f`.
///
/// `B²` starts at some total degree `L`; `φ` is found degree by degree by
/// least squares against the degree-`(d + L)` part of `A`, and rejected if
/// the fitted residual exceeds `tol` relative to the size of `A` and `B²`.
/// The witness has order `N - 2 - L`.
pub fn extract_admissibility_witness(f: &PowerSeries2, tol: f64) -> Result<PowerSeries2> {
    let a = field_a(f);
    let b = field_b(f);
    let n = a.order();
    let b2 = (&b * &b).truncate(n);
    let scale = a.max_abs().max(b2.max_abs()).max(1.0);
    if b.is_zero(LIGHTLIKE_TOL * b.max_abs().max(1.0)) {
        return Err(Error::IdenticallyLightlike);
    }
    let lead = (0..=n)
        .find(|&d| homogeneous_max(&b2, d) > 1e-12 * scale)
        // B ≠ 0 but B² vanishes to the working order: φ is not yet determined
        .ok_or(Error::OrderTooLow(f.order()))?;
    for d in 0..lead {
        let r = homogeneous_max(&a, d);
        if r > tol * scale {
            return Err(Error::NotAdmissible(r, d));
        }
    }
    let m = n - lead;
    let mut phi = PowerSeries2::zeros(m);
    for d in 0..=m {
        let target_deg = d + lead;
        // Known contribution of lower-degree φ parts.
        let known = (&phi * &b2).truncate(target_deg);
        let rows = target_deg + 1;
        let cols = d + 1;
        let mut mat = DMatrix::<f64>::zeros(rows, cols);
        let mut rhs = DVector::<f64>::zeros(rows);
        for r in 0..rows {
            // row r <-> monomial x^{target_deg - r} y^r
            rhs[r] = a.get(target_deg - r, r) - known.get(target_deg - r, r);
            for i in 0..cols {
                // column i <-> monomial x^{d - i} y^i of φ
                if r >= i && r - i <= lead {
                    let q = r - i;
                    mat[(r, i)] = b2.get(lead - q, q);
                }
            }
        }
        let svd = mat.clone().svd(true, true);
        let sol = svd
            .solve(&rhs, 1e-14 * scale)
            .map_err(|e| Error::SeriesBlowup(e.to_string()))?;
        let resid = (&mat * &sol - &rhs).amax();
        if resid > tol * scale {
            return Err(Error::NotAdmissible(resid, target_deg));
        }
        for i in 0..cols {
            phi.set(d - i, i, sol[i]);
        }
    }
    Ok(phi)
}

/// `f(R_θ(x, y))` for a series, with `R_θ` as in [`ClosedForm`].
pub fn rotate_series(f: &PowerSeries2, theta: f64) -> PowerSeries2 {
    let n = f.order();
    let (c, s) = (theta.cos(), theta.sin());
    let x = PowerSeries2::x_at(0.0, n);
    let y = PowerSeries2::y_at(0.0, n);
    let xr = &x.scale(c) + &y.scale(s);
    let yr = &x.scale(-s) + &y.scale(c);
    // Horner in yr over x-polynomials in xr.
    let mut acc = PowerSeries2::zeros(n);
    for k in (0..=n).rev() {
        let mut px = PowerSeries2::zeros(n);
        for j in (0..=n - k).rev() {
            px = &(&px * &xr) + f.get(j, k);
        }
        acc = &(&acc * &yr) + &px;
    }
    acc
}

/// Translate and rotate about the `t`-axis so that `f(0,0) = 0`,
/// `f_x(0,0) = 0`, `f_y(0,0) = 1`. Returns the series and the rotation angle.
pub fn normalize_series(f: &PowerSeries2) -> Result<(PowerSeries2, f64)> {
    let (fx, fy) = (f.get(1, 0), f.get(0, 1));
    let g = fx.hypot(fy);
    if (g - 1.0).abs() > 1e-9 {
        return Err(Error::NotNormalized(format!(
            "|grad f(0,0)| = {g}, the origin is not light-like"
        )));
    }
    // f_x = sin θ, f_y = cos θ
    let theta = fx.atan2(fy);
    let mut r = rotate_series(f, theta);
    r.set(0, 0, 0.0);
    r.set(1, 0, 0.0);
    r.set(0, 1, 1.0);
    Ok((r, theta))
}
