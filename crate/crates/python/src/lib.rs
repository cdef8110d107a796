//! Python bindings. Build the cdylib and import it as `zmclab`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use zmclab_core::approx::{predict_causal_type, profile_of, solve_ak_recursion, YGrid};
use zmclab_core::ck::{ck_series, ck_series_lightlike, InitialCurve, LightlikeSeed};
use zmclab_core::curves::{bjorling_reconstruct, NullCurve};
use zmclab_core::gallery::{gallery_entry, gallery_names as names, regression_check as check, RegressionOptions};
use zmclab_core::geometry::{classify_point, verify_admissible, GraphSurface};
use zmclab_core::series::{PowerSeries1, PowerSeries2};

fn err(e: zmclab_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Serialize through JSON and hand back Python objects.
fn to_py<'py, T: serde::Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let s = serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (s,))
}

fn phi_of(terms: Option<Vec<(usize, usize, f64)>>) -> PowerSeries2 {
    match terms {
        None => PowerSeries2::zeros(0),
        Some(t) => {
            let order = t.iter().map(|&(j, k, _)| j + k).max().unwrap_or(0);
            PowerSeries2::from_terms(order, t)
        }
    }
}

/// A graph germ `t = f(x, y)`.
#[pyclass(name = "Surface", module = "zmclab", frozen)]
struct Surface {
    inner: GraphSurface,
}

#[pymethods]
impl Surface {
    /// Truncation order of the stored series, if any.
    #[getter]
    fn order(&self) -> Option<usize> {
        self.inner.series().map(|s| s.order())
    }

    /// Non-zero coefficients `(j, k, c)` of `x^j y^k`.
    fn terms(&self) -> Vec<(usize, usize, f64)> {
        self.inner.series().map_or_else(Vec::new, |s| s.terms().filter(|t| t.2 != 0.0).collect())
    }

    fn value(&self, x: f64, y: f64) -> PyResult<f64> {
        self.inner.value(x, y).map_err(err)
    }

    /// `f, B, A, C, H, K` and the causal tag at `(x, y)`.
    fn fields<'py>(&self, py: Python<'py>, x: f64, y: f64) -> PyResult<Bound<'py, PyDict>> {
        let s = classify_point(&self.inner, x, y).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("f", s.f)?;
        d.set_item("B", s.b)?;
        d.set_item("A", s.a)?;
        d.set_item("C", s.c)?;
        d.set_item("H", s.h)?;
        d.set_item("K", s.k)?;
        d.set_item("tag", s.tag.as_str())?;
        Ok(d)
    }

    /// Largest coefficient of `A - φB²`.
    #[pyo3(signature = (phi=None))]
    fn residual(&self, phi: Option<Vec<(usize, usize, f64)>>) -> PyResult<f64> {
        let s = self.inner.series().ok_or_else(|| PyValueError::new_err("surface has no series"))?;
        Ok(verify_admissible(s, &phi_of(phi), 0.0).max_residual)
    }

    fn to_json(&self) -> PyResult<String> {
        let s = self.inner.series().ok_or_else(|| PyValueError::new_err("surface has no series"))?;
        serde_json::to_string(s).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __repr__(&self) -> String {
        match self.order() {
            Some(n) => format!("Surface(order={n})"),
            None => "Surface(closed form)".into(),
        }
    }
}

fn curve(u: Vec<f64>, v: Vec<f64>) -> PyResult<InitialCurve> {
    InitialCurve::from_coeffs(&u, &v).map_err(err)
}

/// Germ with initial curve `(u, v)` and `A = φ B²`.
#[pyfunction]
#[pyo3(signature = (u, v, phi=None, order=12))]
fn ck_solve(u: Vec<f64>, v: Vec<f64>, phi: Option<Vec<(usize, usize, f64)>>, order: usize) -> PyResult<Surface> {
    let s = ck_series(&curve(u, v)?, &phi_of(phi), order).map_err(err)?;
    Ok(Surface { inner: GraphSurface::from_series(s) })
}

/// Light-like germ with `f(x, 0) = ψ`.
#[pyfunction]
#[pyo3(signature = (psi, order=12))]
fn ck_solve_lightlike(psi: Vec<f64>, order: usize) -> PyResult<Surface> {
    let n = psi.len().max(1) - 1;
    let seed = LightlikeSeed::new(PowerSeries1::from_coeffs(&psi, n)).map_err(err)?;
    let s = ck_series_lightlike(&seed, order).map_err(err)?;
    Ok(Surface { inner: GraphSurface::from_series(s) })
}

/// `μ, δ, Δ`, catalog family and causal-type prediction of a degenerate curve.
#[pyfunction]
fn profile<'py>(py: Python<'py>, u: Vec<f64>, v: Vec<f64>) -> PyResult<Bound<'py, PyAny>> {
    let p = profile_of(&curve(u, v)?).map_err(err)?;
    let d = to_py(py, &p)?;
    d.set_item("prediction", predict_causal_type(&p).as_str())?;
    Ok(d)
}

/// Tables `{k: (y, a_k(y))}` for `k = 2..=kmax` from the a_k recursion.
#[pyfunction]
#[pyo3(signature = (u, v, kmax=6, y0=-0.3, y1=0.3, step=1e-3))]
fn approx_tables<'py>(
    py: Python<'py>,
    u: Vec<f64>,
    v: Vec<f64>,
    kmax: usize,
    y0: f64,
    y1: f64,
    step: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let g = curve(u, v)?;
    let p = profile_of(&g).map_err(err)?;
    let f = ck_series(&g, &PowerSeries2::zeros(0), kmax + 2).map_err(err)?;
    let initial: Vec<(f64, f64)> = (4..=kmax).map(|k| (k as f64 * f.get(k, 0), k as f64 * f.get(k, 1))).collect();
    let (alpha, beta) = (p.alpha(), p.beta());
    let aj = |y: f64| alpha.jet(y);
    let bj = |y: f64| beta.jet(y);
    let tables = solve_ak_recursion(&aj, &bj, &initial, kmax, &YGrid { y0, y1, step }).map_err(err)?;
    let d = PyDict::new(py);
    for t in tables {
        d.set_item(t.k, (t.y, t.value))?;
    }
    Ok(d)
}

#[pyfunction]
fn gallery_names() -> Vec<&'static str> {
    names()
}

/// Normalized surface of a built-in example.
#[pyfunction]
#[pyo3(signature = (name, order=12))]
fn gallery_surface(name: &str, order: usize) -> PyResult<Surface> {
    let e = gallery_entry(name).ok_or_else(|| PyValueError::new_err(format!("unknown entry {name:?}")))?;
    Ok(Surface { inner: e.surface(order).map_err(err)? })
}

/// Regression report of a built-in example.
#[pyfunction]
fn regression_check<'py>(py: Python<'py>, name: &str) -> PyResult<Bound<'py, PyAny>> {
    let e = gallery_entry(name).ok_or_else(|| PyValueError::new_err(format!("unknown entry {name:?}")))?;
    to_py(py, &check(&e, &RegressionOptions::default()))
}

/// Point and causal tag of the helicoid's Björling surface at `(u, v)`.
#[pyfunction]
fn bjorling_helicoid<'py>(py: Python<'py>, u: f64, v: f64) -> PyResult<Bound<'py, PyAny>> {
    let s = bjorling_reconstruct(&NullCurve::helicoid(40), u, v).map_err(err)?;
    to_py(py, &s)
}

#[pymodule]
#[pyo3(name = "zmclab")]
fn zmclab_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Surface>()?;
    m.add_function(wrap_pyfunction!(ck_solve, m)?)?;
    m.add_function(wrap_pyfunction!(ck_solve_lightlike, m)?)?;
    m.add_function(wrap_pyfunction!(profile, m)?)?;
    m.add_function(wrap_pyfunction!(approx_tables, m)?)?;
    m.add_function(wrap_pyfunction!(gallery_names, m)?)?;
    m.add_function(wrap_pyfunction!(gallery_surface, m)?)?;
    m.add_function(wrap_pyfunction!(regression_check, m)?)?;
    m.add_function(wrap_pyfunction!(bjorling_helicoid, m)?)?;
    Ok(())
}
