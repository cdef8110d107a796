//! Approximation functions of germs with a degenerate light-like point.
//!
//! Such a germ expands as `f = y + Σ_{k>=2} a_k(y) x^k / k`; `α = a_2` and
//! `β = a_3` solve `α' + α² + μ = 0` and `β'' + 4αβ' = 0` for a constant
//! `μ`, the characteristic.

pub mod catalog;
pub mod recursion;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use catalog::{alpha_closed_form, alpha_scaled, beta_closed_form, beta_scaled, CatalogFn, Family, Role};
pub use recursion::{
    ak_of_series, a4_printed, ak_residual, solve_ak_recursion, solve_ak_series, AkJets, AkTable, YGrid,
};

use crate::ck::InitialCurve;
use crate::error::{Error, Result};
use crate::geometry::{GraphSurface, Jet2, SurfaceFn};
use crate::series::{PowerSeries1, PowerSeries2};

/// `|μ|` (and `|δ|`, `|Δ|`) at or below this counts as zero.
pub const MU_ZERO_TOL: f64 = 1e-10;
/// Relative band for `|α(0)| = √(-μ)` in the sign family.
const SIGN_FAMILY_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Prediction {
    ChangesType,
    NoTimelikePart,
    NoSpacelikePart,
    Indeterminate,
}

impl Prediction {
    pub fn as_str(self) -> &'static str {
        match self {
            Prediction::ChangesType => "changes_type",
            Prediction::NoTimelikePart => "no_timelike_part",
            Prediction::NoSpacelikePart => "no_spacelike_part",
            Prediction::Indeterminate => "indeterminate",
        }
    }
}

/// Invariants of a degenerate initial curve and the catalog α, β it determines.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApproxProfile {
    pub mu: f64,
    pub delta: f64,
    #[serde(rename = "Delta")]
    pub big_delta: f64,
    pub family: Family,
    pub c: f64,
    pub c1: f64,
    pub c2: f64,
    /// `√|μ|`, or 1 when `μ = 0`.
    pub scale: f64,
    /// `α(0), α'(0), β(0), β'(0)`.
    pub alpha0: [f64; 2],
    pub beta0: [f64; 2],
}

impl ApproxProfile {
    pub fn alpha(&self) -> CatalogFn {
        CatalogFn { role: Role::Alpha, family: self.family, c: self.c, c1: 0.0, c2: 0.0, scale: self.scale }
    }

    pub fn beta(&self) -> CatalogFn {
        CatalogFn { role: Role::Beta, family: self.family, c: self.c, c1: self.c1, c2: self.c2, scale: self.scale }
    }
}

/// Family and parameter of the catalog α with `α(0) = a0` for characteristic `μ`.
pub fn match_family(mu: f64, a0: f64) -> (Family, f64, f64) {
    if mu.abs() <= MU_ZERO_TOL {
        if a0 == 0.0 {
            (Family::ZeroI, 0.0, 1.0)
        } else {
            (Family::ZeroII, 1.0 / a0, 1.0)
        }
    } else if mu > 0.0 {
        let k = mu.sqrt();
        (Family::Plus, (-a0 / k).atan(), k)
    } else {
        let k = (-mu).sqrt();
        let r = a0 / k;
        if (r.abs() - 1.0).abs() <= SIGN_FAMILY_TOL {
            (Family::MinusIII, r.signum(), k)
        } else if r.abs() < 1.0 {
            (Family::MinusI, r.atanh(), k)
        } else {
            (Family::MinusII, (1.0 / r).atanh(), k)
        }
    }
}

/// `μ = -(u₂² + v₂)`, `δ = 3u₂u₃ + v₃`, `Δ = 4u₃² + 8u₂u₄ + v₂² + 2v₄` and the matching catalog entry.
pub fn profile_of(gamma: &InitialCurve) -> Result<ApproxProfile> {
    if !gamma.is_degenerate() {
        return Err(Error::NotDegenerate(gamma.v_n(1)));
    }
    let (u2, u3, u4) = (gamma.u_n(2), gamma.u_n(3), gamma.u_n(4));
    let (v2, v3, v4) = (gamma.v_n(2), gamma.v_n(3), gamma.v_n(4));
    // + 0.0 turns -0 into 0
    let mu = -(u2 * u2 + v2) + 0.0;
    let delta = 3.0 * u2 * u3 + v3;
    let big_delta = 4.0 * u3 * u3 + 8.0 * u2 * u4 + v2 * v2 + 2.0 * v4;

    let (family, c, scale) = match_family(mu, u2);
    let base = CatalogFn { role: Role::Beta, family, c, c1: 1.0, c2: 0.0, scale };
    let gp = base.g_prime_at_base()?;
    let c1 = if v3 == 0.0 { 0.0 } else { v3 / (scale * gp) };
    let c2 = u3 - c1 * base.g_at_base()?;
    Ok(ApproxProfile {
        mu,
        delta,
        big_delta,
        family,
        c,
        c1,
        c2,
        scale,
        alpha0: [u2, v2],
        beta0: [u3, v3],
    })
}

/// Causal-type prediction from the signs of `μ`, `δ`, `Δ`.
pub fn predict_causal_type(p: &ApproxProfile) -> Prediction {
    let zero = |v: f64| v.abs() <= MU_ZERO_TOL;
    if !zero(p.mu) {
        return if p.mu > 0.0 { Prediction::NoTimelikePart } else { Prediction::NoSpacelikePart };
    }
    if !zero(p.delta) {
        Prediction::ChangesType
    } else if zero(p.big_delta) {
        Prediction::Indeterminate
    } else if p.big_delta < 0.0 {
        Prediction::NoTimelikePart
    } else {
        Prediction::NoSpacelikePart
    }
}

/// Coefficients of `B(x, 0) = μx² - (2δ/3)x³ - (Δ/4)x⁴ + O(x⁵)` for `x⁰..x⁴`.
pub fn predicted_b_axis(p: &ApproxProfile) -> [f64; 5] {
    [0.0, 0.0, p.mu, -2.0 * p.delta / 3.0, -p.big_delta / 4.0]
}

/// `f̃(x, y) = f(mx, my) / m`.
pub fn homothety_normalize(f: &PowerSeries2, m: f64) -> Result<PowerSeries2> {
    if !(m > 0.0 && m.is_finite()) {
        return Err(Error::ParamOutOfRange(format!("homothety factor {m}")));
    }
    Ok(f.scale_args(m).scale(1.0 / m))
}

/// The `m` that brings `μ` to `±1`; `None` when `μ = 0`.
pub fn normalizing_factor(mu: f64) -> Option<f64> {
    (mu.abs() > MU_ZERO_TOL).then(|| 1.0 / mu.abs().sqrt())
}

/// `f = y + α(y) x²/2 + β(y) x³/3` for catalog α, β.
#[derive(Clone, Debug)]
pub struct CubicApprox {
    pub alpha: CatalogFn,
    pub beta: CatalogFn,
}

impl SurfaceFn for CubicApprox {
    fn jet(&self, x: f64, y: f64) -> Result<Jet2> {
        let [a, da, dda] = self.alpha.jet(y)?;
        let [b, db, ddb] = self.beta.jet(y)?;
        let (x2, x3) = (x * x / 2.0, x * x * x / 3.0);
        Ok(Jet2 {
            f: y + a * x2 + b * x3,
            fx: a * x + b * x * x,
            fy: 1.0 + da * x2 + db * x3,
            fxx: a + 2.0 * b * x,
            fxy: da * x + db * x * x,
            fyy: dda * x2 + ddb * x3,
        })
    }

    fn taylor(&self, x0: f64, y0: f64, order: usize) -> Result<PowerSeries2> {
        let a = PowerSeries2::from_y(&self.alpha.series(y0, order)?, order);
        let b = PowerSeries2::from_y(&self.beta.series(y0, order)?, order);
        let x = PowerSeries2::x_at(x0, order);
        let y = PowerSeries2::y_at(y0, order);
        let x2 = &x * &x;
        let x3 = &x2 * &x;
        Ok(&(&y + &(&(&a * &x2) * 0.5)) + &(&(&b * &x3) * (1.0 / 3.0)))
    }
}

/// Residuals of `α'' + 2αα' = 0` and `β'' + 4αβ' = 0` as series, truncated
/// to the degree where both are fully determined.
pub fn pair_residual(alpha: &PowerSeries1, beta: &PowerSeries1) -> f64 {
    let n = alpha.order().min(beta.order());
    if n < 2 {
        return 0.0;
    }
    let (a, b) = (alpha.truncate(n), beta.truncate(n));
    let (da, db) = (a.derivative(), b.derivative());
    let ra = &da.derivative() + &(&(&a * &da) * 2.0).truncate(n - 2);
    let rb = &db.derivative() + &(&(&a * &db) * 4.0).truncate(n - 2);
    ra.max_abs().max(rb.max_abs())
}

/// Cubic germ from y-series α, β about 0 after checking they solve the pair.
pub fn approximate_surface(alpha: &PowerSeries1, beta: &PowerSeries1, order: usize, tol: f64) -> Result<GraphSurface> {
    let r = pair_residual(alpha, beta);
    if r > tol {
        return Err(Error::NotSolutionPair(r));
    }
    let a = PowerSeries2::from_y(alpha, order);
    let b = PowerSeries2::from_y(beta, order);
    let x2 = PowerSeries2::from_terms(order, [(2, 0, 0.5)]);
    let x3 = PowerSeries2::from_terms(order, [(3, 0, 1.0 / 3.0)]);
    let y = PowerSeries2::from_terms(order, [(0, 1, 1.0)]);
    Ok(GraphSurface::from_series(&(&y + &(&a * &x2)) + &(&b * &x3)))
}

/// Same, from catalog functions; the surface also evaluates in closed form.
pub fn approximate_surface_catalog(alpha: &CatalogFn, beta: &CatalogFn, order: usize) -> Result<GraphSurface> {
    let cubic = CubicApprox { alpha: *alpha, beta: *beta };
    let series = cubic.taylor(0.0, 0.0, order)?;
    Ok(GraphSurface::from_arc(Arc::new(cubic)).with_series(series))
}

/// `α(y) = 2 [x²] f` and `β(y) = 3 [x³] f` read from the expansion at `(0, y)`.
pub fn alpha_beta_at(f: &GraphSurface, y: f64) -> Result<(f64, f64)> {
    let ev = f
        .evaluator()
        .ok_or_else(|| Error::Unsupported("α, β sampling needs an evaluator".into()))?;
    let s = ev.taylor(0.0, y, 3)?;
    Ok((2.0 * s.get(2, 0), 3.0 * s.get(3, 0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ck::ck_series;
    use crate::geometry::{extract_admissibility_witness, field_b};
    use approx::assert_abs_diff_eq;

    fn curve(u: &[f64], v: &[f64]) -> InitialCurve {
        InitialCurve::from_coeffs(u, v).unwrap()
    }

    #[test]
    fn light_cone_profile() {
        // γ = (√(1+x²) - 1, (1+x²)^{-1/2}) to degree 4
        let p = profile_of(&curve(&[0.0, 0.0, 0.5, 0.0, -0.125], &[1.0, 0.0, -0.5, 0.0, 0.375])).unwrap();
        assert_eq!(p.mu, 0.0);
        assert_eq!(p.family, Family::ZeroII);
        assert_eq!(p.c, 1.0);
        assert_abs_diff_eq!(p.alpha().eval(0.3).unwrap(), 1.0 / 1.3, epsilon = 1e-15);
    }

    #[test]
    fn ojm_profile() {
        let p = profile_of(&curve(&[0.0], &[1.0, 0.0, 0.0, 3.0])).unwrap();
        assert_eq!((p.mu, p.delta, p.family), (0.0, 9.0, Family::ZeroI));
        assert_eq!(predict_causal_type(&p), Prediction::ChangesType);
        // β(y) = 9y
        assert_abs_diff_eq!(p.beta().eval(0.2).unwrap(), 1.8, epsilon = 1e-15);
    }

    #[test]
    fn parabola_profile() {
        let p = profile_of(&curve(&[0.0, 0.0, 0.5], &[1.0])).unwrap();
        assert_eq!((p.mu, p.family, p.c), (-1.0, Family::MinusIII, 1.0));
        assert_eq!(p.beta().eval(0.4).unwrap(), 0.0);
        assert_eq!(predict_causal_type(&p), Prediction::NoSpacelikePart);
    }

    #[test]
    fn nondegenerate_is_rejected() {
        assert_eq!(profile_of(&curve(&[0.0], &[1.0, 0.5])), Err(Error::NotDegenerate(0.5)));
    }

    #[test]
    fn prediction_table() {
        let mk = |mu, delta, big_delta| ApproxProfile {
            mu,
            delta,
            big_delta,
            family: Family::ZeroI,
            c: 0.0,
            c1: 0.0,
            c2: 0.0,
            scale: 1.0,
            alpha0: [0.0; 2],
            beta0: [0.0; 2],
        };
        assert_eq!(predict_causal_type(&mk(1.0, 5.0, 0.0)), Prediction::NoTimelikePart);
        assert_eq!(predict_causal_type(&mk(-1.0, 5.0, 0.0)), Prediction::NoSpacelikePart);
        assert_eq!(predict_causal_type(&mk(0.0, 5.0, 0.0)), Prediction::ChangesType);
        assert_eq!(predict_causal_type(&mk(0.0, 0.0, -1.0)), Prediction::NoTimelikePart);
        assert_eq!(predict_causal_type(&mk(0.0, 0.0, 1.0)), Prediction::NoSpacelikePart);
        assert_eq!(predict_causal_type(&mk(0.0, 0.0, 0.0)), Prediction::Indeterminate);
    }

    #[test]
    fn b_on_the_axis_matches_invariants() {
        let g = curve(&[0.0, 0.0, 0.3, -0.2, 0.1], &[1.0, 0.0, 0.4, 0.7, -0.3]);
        let p = profile_of(&g).unwrap();
        let f = ck_series(&g, &PowerSeries2::zeros(0), 8).unwrap();
        let b = field_b(&f).restrict_y0();
        for (n, want) in predicted_b_axis(&p).iter().enumerate() {
            assert_abs_diff_eq!(b.coeff(n), *want, epsilon = 1e-12);
        }
    }

    #[test]
    fn catalog_fit_reproduces_alpha_beta_of_the_germ() {
        for (u, v) in [
            (vec![0.0, 0.0, 0.3, -0.2], vec![1.0, 0.0, 0.4, 0.7]),
            (vec![0.0, 0.0, 0.3, 0.2], vec![1.0, 0.0, -0.6, 0.1]),
            (vec![0.0, 0.0, 1.0, 0.2], vec![1.0, 0.0, -0.1, 0.1]),
            (vec![0.0, 0.0, 0.5, 0.0], vec![1.0, 0.0, -0.5, 0.2]),
        ] {
            let g = curve(&u, &v);
            let p = profile_of(&g).unwrap();
            let f = ck_series(&g, &PowerSeries2::zeros(0), 12).unwrap();
            let a = ak_of_series(&f, 2);
            let b = ak_of_series(&f, 3);
            let (ca, cb) = (p.alpha().series(0.0, 8).unwrap(), p.beta().series(0.0, 8).unwrap());
            for n in 0..8 {
                assert_abs_diff_eq!(a.coeff(n), ca.coeff(n), epsilon = 1e-9);
                assert_abs_diff_eq!(b.coeff(n), cb.coeff(n), epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn homothety_scales_mu() {
        let g = curve(&[0.0, 0.0, 0.3, -0.2, 0.1], &[1.0, 0.0, -2.0, 0.7, -0.3]);
        let f = ck_series(&g, &PowerSeries2::zeros(0), 8).unwrap();
        let mu = profile_of(&g).unwrap().mu;
        for m in [0.5, 2.0, 3.0] {
            let h = homothety_normalize(&f, m).unwrap();
            let gm = crate::ck::initial_curve_of_series(&h);
            assert_abs_diff_eq!(profile_of(&gm).unwrap().mu, m * m * mu, epsilon = 1e-10);
        }
        let m = normalizing_factor(mu).unwrap();
        let gm = crate::ck::initial_curve_of_series(&homothety_normalize(&f, m).unwrap());
        assert_abs_diff_eq!(profile_of(&gm).unwrap().mu, mu.signum(), epsilon = 1e-12);
        assert_eq!(homothety_normalize(&f, 1.0).unwrap(), f);
    }

    #[test]
    fn cubic_approximation_of_the_cone() {
        let a = alpha_closed_form(Family::ZeroII, 1.0).unwrap();
        let b = beta_closed_form(Family::ZeroII, 1.0, 0.0, 0.0).unwrap();
        let s = approximate_surface_catalog(&a, &b, 14).unwrap();
        let series = s.series().unwrap();
        // cone: y + x²/2 - x²y/2 + O(4)
        assert_abs_diff_eq!(series.get(2, 0), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(series.get(2, 1), -0.5, epsilon = 1e-15);
        assert_eq!(series.get(3, 0), 0.0);
        // A = -x⁴/(4(1+y)⁵) while B = -x⁴/(4(1+y)⁴): no analytic φ when μ = 0
        assert!(matches!(extract_admissibility_witness(series, 1e-9), Err(Error::NotAdmissible(..))));
        assert_eq!(
            extract_admissibility_witness(&series.truncate(6), 1e-9),
            Err(Error::OrderTooLow(6))
        );
        let j = s.jet(0.1, 0.2).unwrap();
        assert_abs_diff_eq!(j.f, 0.2 + 0.005 / 1.2, epsilon = 1e-15);
    }

    #[test]
    fn cubic_approximation_is_admissible_when_mu_is_nonzero() {
        for (fam, c) in [(Family::Plus, 0.0), (Family::MinusI, 0.3), (Family::MinusII, 1.0)] {
            let a = alpha_closed_form(fam, c).unwrap();
            let b = beta_closed_form(fam, c, 0.2, 0.1).unwrap();
            let s = approximate_surface_catalog(&a, &b, 12).unwrap();
            assert!(extract_admissibility_witness(s.series().unwrap(), 1e-9).is_ok(), "{fam}");
        }
    }

    #[test]
    fn approximate_surface_checks_the_pair() {
        let one = PowerSeries1::constant(1.0, 6);
        let zero = PowerSeries1::zeros(6);
        let s = approximate_surface(&one, &zero, 6, 1e-12).unwrap();
        assert_eq!(s.series().unwrap(), &PowerSeries2::from_terms(6, [(0, 1, 1.0), (2, 0, 0.5)]));
        let y = PowerSeries1::variable_at(0.0, 6);
        assert!(matches!(approximate_surface(&y, &zero, 6, 1e-12), Err(Error::NotSolutionPair(_))));
    }
}
