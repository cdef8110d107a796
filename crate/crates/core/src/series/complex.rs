use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::PowerSeries1;
use crate::error::{Error, Result};

/// `Σ c_n (z - t0)^n` with complex coefficients, evaluated at complex `z`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexSeries1 {
    pub center: f64,
    pub coeffs: Vec<Complex64>,
    /// Explicit evaluation radius; `None` means use the truncation heuristic.
    #[serde(default)]
    pub radius: Option<f64>,
}

impl ComplexSeries1 {
    pub fn new(center: f64, coeffs: Vec<Complex64>) -> Self {
        ComplexSeries1 { center, coeffs, radius: None }
    }

    /// Real-coefficient series about `center`.
    pub fn from_real(center: f64, p: &PowerSeries1) -> Self {
        Self::new(center, p.coeffs().iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn with_radius(mut self, r: f64) -> Self {
        self.radius = Some(r);
        self
    }

    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// `(|c_n| / |c_1|)^{-1/(n-1)}` for the last nonzero `c_n`, `n >= 2`;
    /// `None` when `c_1 = 0` or the series is affine.
    pub fn heuristic_radius(&self) -> Option<f64> {
        let c1 = self.coeffs.get(1)?.norm();
        if c1 == 0.0 {
            return None;
        }
        let (n, cn) = self
            .coeffs
            .iter()
            .enumerate()
            .skip(2)
            .rev()
            .find(|(_, c)| c.norm() > 0.0)?;
        Some((cn.norm() / c1).powf(-1.0 / (n as f64 - 1.0)))
    }

    /// Radius inside which evaluation is accepted: an explicit radius if set,
    /// otherwise 0.8 times the heuristic; infinite for polynomials of degree <= 1.
    pub fn evaluation_radius(&self) -> f64 {
        match (self.radius, self.heuristic_radius()) {
            (Some(r), _) => r,
            (None, Some(h)) => 0.8 * h,
            (None, None) => f64::INFINITY,
        }
    }

    pub fn eval_unchecked(&self, z: Complex64) -> Complex64 {
        let w = z - self.center;
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * w + c)
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let dist = (z - self.center).norm();
        let radius = self.evaluation_radius();
        if dist > radius {
            return Err(Error::RadiusExceeded { dist, radius });
        }
        Ok(self.eval_unchecked(z))
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, c)| c * n as f64)
            .collect();
        ComplexSeries1 { center: self.center, coeffs, radius: self.radius }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn cos_at_complex_argument() {
        let c = PowerSeries1::variable_at(0.0, 40).cos();
        let s = ComplexSeries1::from_real(0.0, &c);
        let z = Complex64::new(0.7, 0.4);
        let got = s.eval(z).unwrap();
        let want = z.cos();
        assert_abs_diff_eq!(got.re, want.re, epsilon = 1e-14);
        assert_abs_diff_eq!(got.im, want.im, epsilon = 1e-14);
    }

    #[test]
    fn radius_is_enforced() {
        let s = ComplexSeries1::new(0.0, vec![0.0.into(), 1.0.into(), 1.0.into()]);
        // (1/1)^(-1/1) = 1, times 0.8
        assert_abs_diff_eq!(s.evaluation_radius(), 0.8);
        assert!(matches!(s.eval(Complex64::new(0.0, 0.9)), Err(Error::RadiusExceeded { .. })));
        let line = ComplexSeries1::new(1.0, vec![2.0.into(), 1.0.into()]);
        assert!(line.eval(Complex64::new(100.0, 50.0)).is_ok());
    }
}
