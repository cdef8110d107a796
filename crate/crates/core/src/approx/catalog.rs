//! Closed-form solutions of `α' + α² + μ = 0` and `β'' + 4αβ' = 0`.
//!
//! For `μ = ±k²` the solutions are `α(y) = k F(ky + c)` and
//! `β(y) = c₁ G(ky + c) + c₂`, with `(F, G)` one of the pairs below.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::PowerSeries1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Family {
    /// `μ > 0`, `F = -tan`.
    Plus,
    /// `μ = 0`, `F = 0`.
    ZeroI,
    /// `μ = 0`, `F(t) = 1/t`.
    ZeroII,
    /// `μ < 0`, `F = tanh`.
    MinusI,
    /// `μ < 0`, `F = coth`.
    MinusII,
    /// `μ < 0`, `F = ±1`; the parameter `c` carries the sign.
    MinusIII,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Plus,
        Family::ZeroI,
        Family::ZeroII,
        Family::MinusI,
        Family::MinusII,
        Family::MinusIII,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Plus => "plus",
            Family::ZeroI => "zeroI",
            Family::ZeroII => "zeroII",
            Family::MinusI => "minusI",
            Family::MinusII => "minusII",
            Family::MinusIII => "minusIII",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.as_str() == s)
    }

    /// Sign of `μ` for the family.
    pub fn mu_sign(self) -> f64 {
        match self {
            Family::Plus => 1.0,
            Family::ZeroI | Family::ZeroII => 0.0,
            _ => -1.0,
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which of the two catalog functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Alpha,
    Beta,
}

/// A catalog α or β with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogFn {
    pub role: Role,
    pub family: Family,
    pub c: f64,
    pub c1: f64,
    pub c2: f64,
    /// `k = √|μ|`; 1 for the normalized catalog and for `μ = 0`.
    pub scale: f64,
}

fn check_params(family: Family, c: f64, scale: f64) -> Result<()> {
    let bad = |why: &str| Err(Error::ParamOutOfRange(format!("{family}: {why}")));
    if !(scale > 0.0 && scale.is_finite()) || !c.is_finite() {
        return bad("scale must be positive and c finite");
    }
    match family {
        Family::Plus if c.abs() >= std::f64::consts::FRAC_PI_2 => bad("need |c| < π/2"),
        Family::ZeroII | Family::MinusII if c == 0.0 => bad("need c ≠ 0"),
        Family::MinusIII if c.abs() != 1.0 => bad("c must be the sign ±1"),
        _ => Ok(()),
    }
}

/// `α` of the normalized catalog: `-tan(y+c)`, `0`, `1/(y+c)`, `tanh(y+c)`, `coth(y+c)`, `±1`.
pub fn alpha_closed_form(family: Family, c: f64) -> Result<CatalogFn> {
    alpha_scaled(family, c, 1.0)
}

pub fn alpha_scaled(family: Family, c: f64, scale: f64) -> Result<CatalogFn> {
    check_params(family, c, scale)?;
    Ok(CatalogFn { role: Role::Alpha, family, c, c1: 0.0, c2: 0.0, scale })
}

/// `β` of the normalized catalog, `c₁ G(y + c) + c₂`.
pub fn beta_closed_form(family: Family, c: f64, c1: f64, c2: f64) -> Result<CatalogFn> {
    beta_scaled(family, c, c1, c2, 1.0)
}

pub fn beta_scaled(family: Family, c: f64, c1: f64, c2: f64, scale: f64) -> Result<CatalogFn> {
    check_params(family, c, scale)?;
    Ok(CatalogFn { role: Role::Beta, family, c, c1, c2, scale })
}

impl CatalogFn {
    /// Argument `t` of `F`, `G` at `y`. The sign family has no shift.
    fn arg(&self, y: &PowerSeries1) -> PowerSeries1 {
        match self.family {
            Family::MinusIII => y * self.scale,
            _ => &(y * self.scale) + self.c,
        }
    }

    /// `F(t)` and `G(t)` as series in `t`.
    fn f_of(&self, t: &PowerSeries1) -> Result<PowerSeries1> {
        let n = t.order();
        Ok(match self.family {
            Family::Plus => &t.tan()? * -1.0,
            Family::ZeroI => PowerSeries1::zeros(n),
            Family::ZeroII | Family::MinusII if t.coeff(0) == 0.0 => {
                return Err(Error::SingularCoefficient(f64::INFINITY))
            }
            Family::ZeroII => t.recip()?,
            Family::MinusI => t.tanh()?,
            Family::MinusII => t.tanh()?.recip()?,
            Family::MinusIII => PowerSeries1::constant(self.c, n),
        })
    }

    fn g_of(&self, t: &PowerSeries1) -> Result<PowerSeries1> {
        Ok(match self.family {
            Family::Plus => {
                let c = t.cos();
                &(&(&c * &c).recip()? + 2.0) * &t.tan()?
            }
            Family::ZeroI => t.clone(),
            Family::ZeroII => t.recip()?.powi(3),
            Family::MinusI => {
                let c = t.cosh();
                &(&(&c * &c).recip()? + 2.0) * &t.tanh()?
            }
            Family::MinusII => {
                let s = t.sinh();
                &(&(&s * &s).recip()? * -1.0 + 2.0) * &t.tanh()?.recip()?
            }
            Family::MinusIII => (t * (-4.0 * self.c)).exp(),
        })
    }

    /// Taylor series about `y0`, in powers of `y - y0`.
    pub fn series(&self, y0: f64, order: usize) -> Result<PowerSeries1> {
        let t = self.arg(&PowerSeries1::variable_at(y0, order));
        let s = match self.role {
            Role::Alpha => &self.f_of(&t)? * self.scale,
            Role::Beta => &(&self.g_of(&t)? * self.c1) + self.c2,
        };
        if s.coeffs().iter().all(|c| c.is_finite()) {
            Ok(s)
        } else {
            Err(Error::SingularCoefficient(s.coeff(0)))
        }
    }

    /// Value and first two derivatives at `y`.
    pub fn jet(&self, y: f64) -> Result<[f64; 3]> {
        let s = self.series(y, 2)?;
        Ok([s.coeff(0), s.coeff(1), 2.0 * s.coeff(2)])
    }

    pub fn eval(&self, y: f64) -> Result<f64> {
        Ok(self.jet(y)?[0])
    }

    /// Derivative of `G` at the base argument, `G'(c)` (or `G'(0)` for the sign family).
    pub(crate) fn g_prime_at_base(&self) -> Result<f64> {
        let t0 = if self.family == Family::MinusIII { 0.0 } else { self.c };
        Ok(self.g_of(&PowerSeries1::variable_at(t0, 1))?.coeff(1))
    }

    pub(crate) fn g_at_base(&self) -> Result<f64> {
        let t0 = if self.family == Family::MinusIII { 0.0 } else { self.c };
        Ok(self.g_of(&PowerSeries1::constant(t0, 0))?.coeff(0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn samples() -> impl Iterator<Item = f64> {
        (0..200).map(|i| -0.6 + 1.2 * i as f64 / 199.0)
    }

    fn params() -> Vec<(Family, f64)> {
        vec![
            (Family::Plus, 0.3),
            (Family::ZeroI, 0.0),
            (Family::ZeroII, 1.0),
            (Family::MinusI, -0.2),
            (Family::MinusII, 1.0),
            (Family::MinusIII, 1.0),
            (Family::MinusIII, -1.0),
        ]
    }

    #[test]
    fn alpha_solves_riccati() {
        for (fam, c) in params() {
            let a = alpha_closed_form(fam, c).unwrap();
            for y in samples() {
                let [v, d, _] = a.jet(y).unwrap();
                assert_abs_diff_eq!(d + v * v + fam.mu_sign(), 0.0, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn beta_solves_its_equation() {
        for (fam, c) in params() {
            let a = alpha_closed_form(fam, c).unwrap();
            let b = beta_closed_form(fam, c, 0.7, -0.4).unwrap();
            for y in samples() {
                let av = a.eval(y).unwrap();
                let [_, d1, d2] = b.jet(y).unwrap();
                let scale = 1.0 + d2.abs();
                assert!((d2 + 4.0 * av * d1).abs() <= 1e-10 * scale, "{fam} at {y}");
            }
        }
    }

    #[test]
    fn scaled_families_solve_with_scaled_mu() {
        let k = 1.7;
        for (fam, c) in [(Family::Plus, 0.2), (Family::MinusI, 0.1), (Family::MinusII, 0.9), (Family::MinusIII, -1.0)] {
            let a = alpha_scaled(fam, c, k).unwrap();
            for y in samples() {
                let [v, d, _] = a.jet(y).unwrap();
                assert_abs_diff_eq!(d + v * v + fam.mu_sign() * k * k, 0.0, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn printed_examples() {
        let a = alpha_closed_form(Family::Plus, 0.0).unwrap();
        assert_abs_diff_eq!(a.eval(0.4).unwrap(), -(0.4f64).tan(), epsilon = 1e-15);
        let a = alpha_closed_form(Family::MinusII, 1.0).unwrap();
        assert_abs_diff_eq!(a.eval(0.2).unwrap(), 1.0 / (1.2f64).tanh(), epsilon = 1e-14);
        let b = beta_closed_form(Family::ZeroI, 0.0, 1.0, 0.0).unwrap();
        assert_abs_diff_eq!(b.eval(0.3).unwrap(), 0.3, epsilon = 1e-15);
        let b = beta_closed_form(Family::MinusIII, 1.0, 0.0, 0.0).unwrap();
        assert_eq!(b.eval(0.3).unwrap(), 0.0);
        let b = beta_closed_form(Family::Plus, 0.0, 1.0, 0.0).unwrap();
        let y = 0.25f64;
        assert_abs_diff_eq!(b.eval(y).unwrap(), (2.0 + 1.0 / y.cos().powi(2)) * y.tan(), epsilon = 1e-14);
    }

    #[test]
    fn parameter_ranges() {
        assert!(matches!(alpha_closed_form(Family::Plus, 2.0), Err(Error::ParamOutOfRange(_))));
        assert!(matches!(alpha_closed_form(Family::ZeroII, 0.0), Err(Error::ParamOutOfRange(_))));
        assert!(matches!(alpha_closed_form(Family::MinusII, 0.0), Err(Error::ParamOutOfRange(_))));
        assert!(matches!(alpha_closed_form(Family::MinusIII, 0.5), Err(Error::ParamOutOfRange(_))));
        // pole of 1/(y+1) at y = -1
        let a = alpha_closed_form(Family::ZeroII, 1.0).unwrap();
        assert!(a.jet(-1.0).is_err());
    }
}
