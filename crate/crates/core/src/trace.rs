//! Predictor–corrector continuation of a planar zero level set `{g = 0}`.

use crate::error::{Error, Result};

/// Step length and Newton tolerance for the tracer.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceOptions {
    pub step: f64,
    pub newton_tol: f64,
    pub max_newton: usize,
    /// Steps taken in each direction from the start point.
    pub steps_each_way: usize,
}

impl Default for TraceOptions {
    fn default() -> Self {
        TraceOptions { step: 1e-3, newton_tol: 1e-12, max_newton: 30, steps_each_way: 50 }
    }
}

/// Project `p` onto `{g = 0}` along the gradient.
pub fn correct<G>(g: &G, mut p: [f64; 2], opts: &TraceOptions) -> Result<[f64; 2]>
where
    G: Fn(f64, f64) -> Result<(f64, [f64; 2])>,
{
    for _ in 0..opts.max_newton {
        let (v, grad) = g(p[0], p[1])?;
        if v.abs() <= opts.newton_tol {
            return Ok(p);
        }
        let n2 = grad[0] * grad[0] + grad[1] * grad[1];
        if n2 == 0.0 || !n2.is_finite() {
            return Err(Error::TraceFailed(format!("vanishing gradient at {p:?}")));
        }
        p[0] -= v * grad[0] / n2;
        p[1] -= v * grad[1] / n2;
    }
    let (v, _) = g(p[0], p[1])?;
    if v.abs() <= opts.newton_tol {
        Ok(p)
    } else {
        Err(Error::TraceFailed(format!("Newton did not converge at {p:?}, residual {v:e}")))
    }
}

fn tangent(grad: [f64; 2]) -> [f64; 2] {
    let n = grad[0].hypot(grad[1]);
    [-grad[1] / n, grad[0] / n]
}

/// Trace the component of `{g = 0}` through (a point near) `start`.
///
/// Returns the points in order along the curve together with the index of
/// the corrected start point. The orientation is that of the tangent
/// `(-g_y, g_x)` at the start.
pub fn trace_zero_level<G>(g: &G, start: [f64; 2], opts: &TraceOptions) -> Result<(Vec<[f64; 2]>, usize)>
where
    G: Fn(f64, f64) -> Result<(f64, [f64; 2])>,
{
    let p0 = correct(g, start, opts)?;
    let mut forward = Vec::with_capacity(opts.steps_each_way);
    let mut backward = Vec::with_capacity(opts.steps_each_way);
    for (dir, out) in [(1.0, &mut forward), (-1.0, &mut backward)] {
        let mut p = p0;
        let mut prev_t = {
            let t = tangent(g(p[0], p[1])?.1);
            [dir * t[0], dir * t[1]]
        };
        for _ in 0..opts.steps_each_way {
            let pred = [p[0] + opts.step * prev_t[0], p[1] + opts.step * prev_t[1]];
            p = correct(g, pred, opts)?;
            let mut t = tangent(g(p[0], p[1])?.1);
            // keep orientation continuous
            if t[0] * prev_t[0] + t[1] * prev_t[1] < 0.0 {
                t = [-t[0], -t[1]];
            }
            prev_t = t;
            out.push(p);
        }
    }
    backward.reverse();
    let idx = backward.len();
    backward.push(p0);
    backward.extend(forward);
    Ok((backward, idx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn traces_a_circle() {
        let g = |x: f64, y: f64| Ok(((1.0 + x).powi(2) + y * y - 1.0, [2.0 * (1.0 + x), 2.0 * y]));
        let (pts, idx) = trace_zero_level(&g, [0.01, 0.0], &TraceOptions::default()).unwrap();
        assert_eq!(pts.len(), 101);
        assert_abs_diff_eq!(pts[idx][0], 0.0, epsilon = 1e-10);
        for p in &pts {
            assert_abs_diff_eq!((1.0 + p[0]).hypot(p[1]), 1.0, epsilon = 1e-12);
        }
        // consecutive points roughly one step apart, moving monotonically in y
        for w in pts.windows(2) {
            let d = (w[1][0] - w[0][0]).hypot(w[1][1] - w[0][1]);
            assert!((d - 1e-3).abs() < 1e-5);
            assert!(w[1][1] > w[0][1]);
        }
    }

    #[test]
    fn fails_without_gradient() {
        let g = |_x: f64, _y: f64| Ok((1.0, [0.0, 0.0]));
        assert!(matches!(
            trace_zero_level(&g, [0.0, 0.0], &TraceOptions::default()),
            Err(Error::TraceFailed(_))
        ));
    }
}
