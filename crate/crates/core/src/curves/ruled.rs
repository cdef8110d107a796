//! Light-like ruled surfaces `F(t, s) = σ(t) + s ξ(t)` with `ξ` null and
//! orthogonal to the space-like base curve `σ`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{cross_norm, lorentz_dot, CurveFn};
use crate::error::{Error, Result};
use crate::geometry::{GraphSurface, Jet2, SurfaceFn};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

#[derive(Clone, Debug)]
pub enum BaseCurve {
    /// `σ(x) = (ψ(x), x, 0)`.
    Graph(CurveFn),
    /// `σ(t) = (0, a cos t, sin t)`.
    Ellipse { a: f64 },
    /// Arbitrary components `(σ⁰, σ¹, σ²)`.
    Components(Box<[CurveFn; 3]>),
}

#[derive(Clone, Debug)]
pub struct SpacelikeCurve {
    pub base: BaseCurve,
    pub interval: (f64, f64),
}

impl SpacelikeCurve {
    pub fn graph(psi: CurveFn, interval: (f64, f64)) -> Self {
        SpacelikeCurve { base: BaseCurve::Graph(psi), interval }
    }

    pub fn ellipse(a: f64) -> Self {
        SpacelikeCurve { base: BaseCurve::Ellipse { a }, interval: (-std::f64::consts::PI, std::f64::consts::PI) }
    }

    /// `σ`, `σ'`, `σ''` at `t`.
    pub fn jet(&self, t: f64) -> Result<[[f64; 3]; 3]> {
        Ok(match &self.base {
            BaseCurve::Graph(psi) => {
                let p = psi.jet(t)?;
                [[p[0], t, 0.0], [p[1], 1.0, 0.0], [p[2], 0.0, 0.0]]
            }
            BaseCurve::Ellipse { a } => {
                let (s, c) = t.sin_cos();
                [[0.0, a * c, s], [0.0, -a * s, c], [0.0, -a * c, -s]]
            }
            BaseCurve::Components(cs) => {
                let j = [cs[0].jet(t)?, cs[1].jet(t)?, cs[2].jet(t)?];
                [[j[0][0], j[1][0], j[2][0]], [j[0][1], j[1][1], j[2][1]], [j[0][2], j[1][2], j[2][2]]]
            }
        })
    }

    /// `⟨σ', σ'⟩`.
    pub fn speed_sq(&self, t: f64) -> Result<f64> {
        let v = self.jet(t)?[1];
        Ok(lorentz_dot(&v, &v))
    }

    /// Smallest `⟨σ', σ'⟩` over `n` samples of the interval.
    pub fn min_speed_sq(&self, n: usize) -> Result<f64> {
        let (a, b) = self.interval;
        let mut m = f64::INFINITY;
        for i in 0..n.max(2) {
            m = m.min(self.speed_sq(a + (b - a) * i as f64 / (n.max(2) - 1) as f64)?);
        }
        Ok(m)
    }
}

#[derive(Clone, Debug)]
pub struct RuledLightlike {
    pub base: SpacelikeCurve,
    pub branch: Branch,
    /// Rulings are used for `|s| < eps`.
    pub eps: f64,
}

pub const DEFAULT_EPS: f64 = 0.5;
const SPEED_SAMPLES: usize = 201;

/// Attach the null director; fails unless the base is space-like on its interval.
pub fn make_director(base: SpacelikeCurve, branch: Branch) -> Result<RuledLightlike> {
    let m = base.min_speed_sq(SPEED_SAMPLES)?;
    if !(m > 0.0) {
        return Err(Error::NotSpacelike(m));
    }
    let mut r = RuledLightlike { base, branch, eps: DEFAULT_EPS };
    r.shrink_to_immersion(41)?;
    Ok(r)
}

impl RuledLightlike {
    /// `ξ(t)`.
    ///
    /// Graph bases use `(1, ψ', ±√(1 - ψ'²))`, the ellipse uses
    /// `(√(a² sin²t + cos²t), ±cos t, ±a sin t)`; otherwise `ξ = (1, w)` with
    /// `w` the Euclidean unit vector in the xy-plane with `w·σ'_xy = σ'⁰`.
    pub fn director(&self, t: f64) -> Result<[f64; 3]> {
        let sg = self.branch.sign();
        Ok(match &self.base.base {
            BaseCurve::Graph(psi) => {
                let d = psi.jet(t)?[1];
                [1.0, d, sg * (1.0 - d * d).sqrt()]
            }
            BaseCurve::Ellipse { a } => {
                let (s, c) = t.sin_cos();
                [(a * a * s * s + c * c).sqrt(), sg * c, sg * a * s]
            }
            BaseCurve::Components(_) => {
                let v = self.base.jet(t)?[1];
                let r = v[1].hypot(v[2]);
                let phi = v[2].atan2(v[1]);
                let th = phi + sg * (v[0] / r).acos();
                [1.0, th.cos(), th.sin()]
            }
        })
    }

    fn director_derivative(&self, t: f64) -> Result<[f64; 3]> {
        let h = 1e-5;
        let (p, m) = (self.director(t + h)?, self.director(t - h)?);
        Ok(std::array::from_fn(|i| (p[i] - m[i]) / (2.0 * h)))
    }

    /// `(F_t, F_s)` at `(t, s)`.
    pub fn tangents(&self, t: f64, s: f64) -> Result<([f64; 3], [f64; 3])> {
        let v = self.base.jet(t)?[1];
        let dxi = self.director_derivative(t)?;
        let xi = self.director(t)?;
        Ok((std::array::from_fn(|i| v[i] + s * dxi[i]), xi))
    }

    /// Determinant of the induced metric; zero for a light-like surface.
    pub fn metric_det(&self, t: f64, s: f64) -> Result<f64> {
        let (ft, fs) = self.tangents(t, s)?;
        let (e, f, g) = (lorentz_dot(&ft, &ft), lorentz_dot(&ft, &fs), lorentz_dot(&fs, &fs));
        Ok(e * g - f * f)
    }

    /// Halve `eps` until `F` has rank 2 on an `n × n` grid of the patch.
    fn shrink_to_immersion(&mut self, n: usize) -> Result<()> {
        let (a, b) = self.base.interval;
        for _ in 0..20 {
            let mut ok = true;
            'grid: for i in 0..n {
                let t = a + (b - a) * i as f64 / (n - 1) as f64;
                for j in 0..n {
                    let s = self.eps * (2.0 * j as f64 / (n - 1) as f64 - 1.0) * 0.999;
                    let (ft, fs) = self.tangents(t, s)?;
                    if cross_norm(&ft, &fs) < 1e-8 {
                        ok = false;
                        break 'grid;
                    }
                }
            }
            if ok {
                return Ok(());
            }
            self.eps /= 2.0;
        }
        Err(Error::NotSpacelike(0.0))
    }
}

/// `σ(t) + s ξ(t)`.
pub fn ruled_surface_eval(r: &RuledLightlike, t: f64, s: f64) -> Result<[f64; 3]> {
    let (a, b) = r.base.interval;
    if s.abs() >= r.eps || t < a || t > b {
        return Err(Error::ParamOutOfRange(format!("(t, s) = ({t}, {s}) outside [{a}, {b}] × (-{e}, {e})", e = r.eps)));
    }
    let sig = r.base.jet(t)?[0];
    let xi = r.director(t)?;
    Ok(std::array::from_fn(|i| sig[i] + s * xi[i]))
}

/// The ruled patch as a graph `t = f(x, y)` near its base point at parameter 0.
#[derive(Clone, Debug)]
pub struct RuledGraph {
    pub ruled: Arc<RuledLightlike>,
    /// `(x, y)` of `σ(0)`, subtracted so the germ sits at the origin.
    pub origin: [f64; 3],
}

const NEWTON_TOL: f64 = 1e-12;
const NEWTON_MAX: usize = 50;

impl RuledGraph {
    fn raw(&self, t: f64, s: f64) -> Result<[f64; 3]> {
        let sig = self.ruled.base.jet(t)?[0];
        let xi = self.ruled.director(t)?;
        Ok(std::array::from_fn(|i| sig[i] + s * xi[i] - self.origin[i]))
    }

    /// Parameters `(t, s)` over the point `(x, y)`, by damped Newton.
    pub fn invert(&self, x: f64, y: f64) -> Result<(f64, f64)> {
        let (mut t, mut s) = (0.0, 0.0);
        for _ in 0..NEWTON_MAX {
            let p = self.raw(t, s)?;
            let (rx, ry) = (p[1] - x, p[2] - y);
            let res = rx.hypot(ry);
            if res <= NEWTON_TOL {
                return Ok((t, s));
            }
            let (ft, fs) = self.ruled.tangents(t, s)?;
            let det = ft[1] * fs[2] - ft[2] * fs[1];
            if det.abs() < 1e-14 {
                return Err(Error::NotAGraph(format!("singular projection at (t, s) = ({t}, {s})")));
            }
            let dt = (rx * fs[2] - ry * fs[1]) / det;
            let ds = (ft[1] * ry - ft[2] * rx) / det;
            let mut lam = 1.0;
            loop {
                let q = self.raw(t - lam * dt, s - lam * ds)?;
                if (q[1] - x).hypot(q[2] - y) < res || lam < 1e-4 {
                    break;
                }
                lam /= 2.0;
            }
            t -= lam * dt;
            s -= lam * ds;
        }
        let p = self.raw(t, s)?;
        if (p[1] - x).hypot(p[2] - y) <= NEWTON_TOL {
            Ok((t, s))
        } else {
            Err(Error::NotAGraph(format!("Newton did not converge over ({x}, {y})")))
        }
    }

    /// `f`, `f_x`, `f_y` at `(x, y)`; the gradient comes from the tangent plane.
    fn first_jet(&self, x: f64, y: f64) -> Result<[f64; 3]> {
        let (t, s) = self.invert(x, y)?;
        let p = self.raw(t, s)?;
        let (ft, fs) = self.ruled.tangents(t, s)?;
        // f_x ft¹ + f_y ft² = ft⁰, f_x fs¹ + f_y fs² = fs⁰
        let det = ft[1] * fs[2] - ft[2] * fs[1];
        let fx = (ft[0] * fs[2] - fs[0] * ft[2]) / det;
        let fy = (ft[1] * fs[0] - fs[1] * ft[0]) / det;
        Ok([p[0], fx, fy])
    }
}

impl SurfaceFn for RuledGraph {
    fn jet(&self, x: f64, y: f64) -> Result<Jet2> {
        let h = 1e-5;
        let c = self.first_jet(x, y)?;
        let (xp, xm) = (self.first_jet(x + h, y)?, self.first_jet(x - h, y)?);
        let (yp, ym) = (self.first_jet(x, y + h)?, self.first_jet(x, y - h)?);
        Ok(Jet2 {
            f: c[0],
            fx: c[1],
            fy: c[2],
            fxx: (xp[1] - xm[1]) / (2.0 * h),
            fxy: ((xp[2] - xm[2]) + (yp[1] - ym[1])) / (4.0 * h),
            fyy: (yp[2] - ym[2]) / (2.0 * h),
        })
    }
}

/// Re-express the ruled patch as a graph over the xy-plane.
pub fn graph_of_ruled(r: &RuledLightlike) -> Result<GraphSurface> {
    let (ft, fs) = r.tangents(0.0, 0.0)?;
    let det = ft[1] * fs[2] - ft[2] * fs[1];
    if det.abs() < 1e-10 {
        return Err(Error::NotAGraph(format!("projection Jacobian {det:e} at the base point")));
    }
    let origin = r.base.jet(0.0)?[0];
    Ok(GraphSurface::from_fn(RuledGraph { ruled: Arc::new(r.clone()), origin }))
}
