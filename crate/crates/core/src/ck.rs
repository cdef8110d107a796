//! Cauchy–Kovalevski construction of φ-admissible germs from their initial
//! curve, and of light-like germs from `f(x, 0)`.
//!
//! Writing `g = f_y`, the condition `A - φB² = 0` solved for `g_y` reads
//!
//! ```text
//! g_y = -(2 f_x g g_x + (1 - g²) f_xx - (1 - f_x² - g²)² φ) / (1 - f_x²)
//! ```
//!
//! and the right side at y-degree `m` only involves `f` and `g` up to
//! y-degree `m`, so the y-jet can be filled in one degree at a time.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{field_b, GraphSurface, Jet2, SurfaceFn, DEGENERACY_TOL};
use crate::series::{Axis, PowerSeries1, PowerSeries2};
use crate::trace::{trace_zero_level, TraceOptions};

/// Below this `|γ̇(0)|` a seed counts as degenerate.
pub const DEGENERATE_SEED_TOL: f64 = 1e-12;
const CURVE_TOL: f64 = 1e-12;

/// `γ(x) = (u(x), v(x)) = (f(x, 0), f_y(x, 0))` with `u(0) = u'(0) = 0`, `v(0) = 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InitialCurve {
    pub u: PowerSeries1,
    pub v: PowerSeries1,
}

impl InitialCurve {
    pub fn new(u: PowerSeries1, v: PowerSeries1) -> Result<Self> {
        if u.coeff(0).abs() > CURVE_TOL || u.coeff(1).abs() > CURVE_TOL {
            return Err(Error::InvalidCurve(format!(
                "need u(0) = u'(0) = 0, got {} and {}",
                u.coeff(0),
                u.coeff(1)
            )));
        }
        if (v.coeff(0) - 1.0).abs() > CURVE_TOL {
            return Err(Error::InvalidCurve(format!("need v(0) = 1, got {}", v.coeff(0))));
        }
        Ok(InitialCurve { u, v })
    }

    /// From plain coefficient lists of `u` and `v`.
    pub fn from_coeffs(u: &[f64], v: &[f64]) -> Result<Self> {
        let n = u.len().max(v.len()).max(1) - 1;
        Self::new(PowerSeries1::from_coeffs(u, n), PowerSeries1::from_coeffs(v, n))
    }

    /// `u_n = n [x^n] u`.
    pub fn u_n(&self, n: usize) -> f64 {
        n as f64 * self.u.coeff(n)
    }

    /// `v_n = n [x^n] v`.
    pub fn v_n(&self, n: usize) -> f64 {
        n as f64 * self.v.coeff(n)
    }

    /// `|γ̇(0)| = |v'(0)|` since `u'(0) = 0`.
    pub fn is_degenerate(&self) -> bool {
        self.v.coeff(1).abs() < DEGENERATE_SEED_TOL
    }
}

/// `ψ = f(x, 0)` of a light-like germ, `ψ(0) = ψ'(0) = 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LightlikeSeed {
    pub psi: PowerSeries1,
}

impl LightlikeSeed {
    pub fn new(psi: PowerSeries1) -> Result<Self> {
        if psi.coeff(0).abs() > CURVE_TOL || psi.coeff(1).abs() > CURVE_TOL {
            return Err(Error::InvalidCurve(format!(
                "need psi(0) = psi'(0) = 0, got {} and {}",
                psi.coeff(0),
                psi.coeff(1)
            )));
        }
        Ok(LightlikeSeed { psi })
    }

    /// The initial curve `(ψ, √(1 - ψ'²))` of the germ it generates.
    pub fn initial_curve(&self) -> Result<InitialCurve> {
        let d = self.psi.derivative();
        let v = (&(&d * &d) * -1.0 + 1.0).sqrt()?;
        let n = self.psi.order();
        InitialCurve::new(self.psi.clone(), v.truncate(n))
    }
}

fn check_finite(s: &PowerSeries2, what: &str) -> Result<()> {
    if s.terms().all(|(_, _, c)| c.is_finite()) {
        Ok(())
    } else {
        Err(Error::SeriesBlowup(format!("non-finite coefficient in {what}")))
    }
}

/// Series solution of `A - φB² = 0` with `f(x,0) = u`, `f_y(x,0) = v`, to total degree `order`.
pub fn ck_series(gamma: &InitialCurve, phi: &PowerSeries2, order: usize) -> Result<PowerSeries2> {
    if order < 2 {
        return Err(Error::OrderTooLow(order));
    }
    let n = order;
    let mut f = PowerSeries2::zeros(n);
    let mut g = PowerSeries2::zeros(n - 1);
    for j in 0..=n {
        f.set(j, 0, gamma.u.coeff(j));
    }
    for j in 0..n {
        g.set(j, 0, gamma.v.coeff(j));
    }
    let phi = phi.truncate(n - 2);

    for m in 0..n {
        for j in 0..n - m {
            f.set(j, m + 1, g.get(j, m) / (m + 1) as f64);
        }
        if m + 1 > n - 1 {
            break;
        }
        let fx = f.diff(Axis::X).truncate(n - 2);
        let fxx = f.diff(Axis::X).diff(Axis::X);
        let gs = g.truncate(n - 2);
        let gx = g.diff(Axis::X);
        let fx2 = &fx * &fx;
        let g2 = &gs * &gs;
        let b = &(&fx2 + &g2) * -1.0 + 1.0;
        let denom = (&fx2 * -1.0 + 1.0)
            .recip()
            .map_err(|e| Error::SeriesBlowup(format!("1 - f_x^2: {e}")))?;
        let num = &(&(&(&fx * &gs) * &gx) * 2.0) + &(&(&g2 * -1.0 + 1.0) * &fxx);
        let num = &num - &(&(&b * &b) * &phi);
        let rhs = &(&num * &denom) * -1.0;
        check_finite(&rhs, "g_y")?;
        for j in 0..n - 1 - m {
            g.set(j, m + 1, rhs.get(j, m) / (m + 1) as f64);
        }
    }
    check_finite(&f, "f")?;
    Ok(f)
}

/// The germ of [`ck_series`] wrapped as a surface.
pub fn ck_solve(gamma: &InitialCurve, phi: &PowerSeries2, order: usize) -> Result<GraphSurface> {
    Ok(GraphSurface::from_series(ck_series(gamma, phi, order)?))
}

/// Light-like germ with `f(x,0) = ψ`, from `f_y = √(1 - f_x²)`.
pub fn ck_series_lightlike(seed: &LightlikeSeed, order: usize) -> Result<PowerSeries2> {
    if order < 2 {
        return Err(Error::OrderTooLow(order));
    }
    let n = order;
    let mut f = PowerSeries2::zeros(n);
    for j in 0..=n {
        f.set(j, 0, seed.psi.coeff(j));
    }
    for m in 0..n {
        let fx = f.diff(Axis::X);
        let s = (&(&fx * &fx) * -1.0 + 1.0)
            .sqrt()
            .map_err(|e| Error::SeriesBlowup(format!("1 - f_x^2: {e}")))?;
        check_finite(&s, "f_y")?;
        for j in 0..n - m {
            f.set(j, m + 1, s.get(j, m) / (m + 1) as f64);
        }
    }
    Ok(f)
}

pub fn ck_solve_lightlike(seed: &LightlikeSeed, order: usize) -> Result<GraphSurface> {
    Ok(GraphSurface::from_series(ck_series_lightlike(seed, order)?))
}

/// `(f(x,0), f_y(x,0))` of a series germ; orders `N` and `N - 1`.
pub fn initial_curve_of_series(f: &PowerSeries2) -> InitialCurve {
    InitialCurve { u: f.restrict_y0(), v: f.diff(Axis::Y).restrict_y0() }
}

/// Initial curve of a normalized surface, expanded to `order`.
pub fn initial_curve_of(f: &GraphSurface, order: usize) -> Result<InitialCurve> {
    Ok(initial_curve_of_series(&f.taylor(order)?))
}

/// One sample of the image of `{B = 0}` under `F`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NullTracePoint {
    pub x: f64,
    pub y: f64,
    pub t: f64,
    /// `σ' = (∇f·τ, τ)` for the unit tangent `τ` of the level curve.
    pub velocity: [f64; 3],
    /// `⟨σ', σ'⟩`, which vanishes on a null curve.
    pub null_residual: f64,
}

/// `σ(s) = F(x(s), y(s))` along the traced light-like locus.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NullTrace {
    pub points: Vec<NullTracePoint>,
    /// Index of the point at (or next to) the origin.
    pub origin: usize,
    pub max_null_residual: f64,
    /// `|σ' × σ''|` (Euclidean) at the origin, `σ''` by central differences.
    pub cross_at_origin: f64,
    /// `B` at `o ± ε n` for the unit normal `n` of the locus.
    pub b_sides: [f64; 2],
}

impl NullTrace {
    pub fn changes_sign(&self) -> bool {
        self.b_sides[0] * self.b_sides[1] < 0.0
    }
}

fn b_and_grad(f: &dyn SurfaceFn, x: f64, y: f64) -> Result<(f64, [f64; 2])> {
    let j = f.jet(x, y)?;
    let b = j.b();
    let bx = -2.0 * (j.fx * j.fxx + j.fy * j.fxy);
    let by = -2.0 * (j.fx * j.fxy + j.fy * j.fyy);
    Ok((b, [bx, by]))
}

#[derive(Debug)]
struct SeriesFn(PowerSeries2);

impl SurfaceFn for SeriesFn {
    fn jet(&self, x: f64, y: f64) -> Result<Jet2> {
        Ok(Jet2::from_series_at(&self.0, x, y))
    }
}

/// Trace `{B = 0}` through `o` and lift it to `ℝ³₁`. Needs a non-degenerate
/// light-like point so that the locus is a regular curve.
pub fn trace_null_curve(surface: &GraphSurface, opts: &TraceOptions) -> Result<NullTrace> {
    let fallback;
    let ev: &dyn SurfaceFn = match surface.evaluator() {
        Some(e) => e.as_ref(),
        None => {
            fallback = SeriesFn(surface.series().cloned().expect("surface has a series"));
            &fallback
        }
    };
    let g = |x: f64, y: f64| b_and_grad(ev, x, y);
    let (_, grad0) = g(0.0, 0.0)?;
    let norm0 = grad0[0].hypot(grad0[1]);
    if norm0 < DEGENERACY_TOL {
        return Err(Error::TraceFailed("light-like point is degenerate".into()));
    }
    let (pts, origin) = trace_zero_level(&g, [0.0, 0.0], opts)?;

    let mut points = Vec::with_capacity(pts.len());
    for p in &pts {
        let j = ev.jet(p[0], p[1])?;
        let (_, gr) = g(p[0], p[1])?;
        let n = gr[0].hypot(gr[1]);
        let tau = [-gr[1] / n, gr[0] / n];
        let velocity = [j.fx * tau[0] + j.fy * tau[1], tau[0], tau[1]];
        let null_residual = -velocity[0].powi(2) + velocity[1].powi(2) + velocity[2].powi(2);
        points.push(NullTracePoint { x: p[0], y: p[1], t: j.f, velocity, null_residual });
    }
    let max_null_residual = points.iter().map(|p| p.null_residual.abs()).fold(0.0, f64::max);

    let cross_at_origin = if origin > 0 && origin + 1 < points.len() {
        let (a, o, b) = (&points[origin - 1], &points[origin], &points[origin + 1]);
        let h = (b.x - a.x).hypot(b.y - a.y);
        let acc: Vec<f64> = (0..3).map(|i| (b.velocity[i] - a.velocity[i]) / h).collect();
        let v = o.velocity;
        let c = [
            v[1] * acc[2] - v[2] * acc[1],
            v[2] * acc[0] - v[0] * acc[2],
            v[0] * acc[1] - v[1] * acc[0],
        ];
        (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt()
    } else {
        0.0
    };

    let eps = 10.0 * opts.step;
    let o = &pts[origin];
    let (_, gr) = g(o[0], o[1])?;
    let n = gr[0].hypot(gr[1]);
    let nrm = [gr[0] / n, gr[1] / n];
    let b_sides = [
        g(o[0] + eps * nrm[0], o[1] + eps * nrm[1])?.0,
        g(o[0] - eps * nrm[0], o[1] - eps * nrm[1])?.0,
    ];
    Ok(NullTrace { points, origin, max_null_residual, cross_at_origin, b_sides })
}

/// `B` of a light-like germ built by [`ck_series_lightlike`]; exposed for checks.
pub fn lightlike_defect(f: &PowerSeries2) -> f64 {
    field_b(f).max_abs()
}
