//! Null curves as complex power series and the surface
//! `F(u, v) = (σ(u + i√v) + σ(u - i√v)) / 2` (`v >= 0`),
//! `F(u, v) = (σ(u + √-v) + σ(u - √-v)) / 2` (`v < 0`).

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{cross_norm, lorentz_dot};
use crate::error::{Error, Result};
use crate::geometry::CausalType;
use crate::series::{ComplexSeries1, PowerSeries1};

/// Imaginary parts left after averaging conjugate shifts must stay below this.
pub const IMAGINARY_TOL: f64 = 1e-10;
/// `|F_u × F_v|` below this marks a sample as not immersed.
pub const IMMERSION_TOL: f64 = 1e-8;
/// Default `|σ' × σ''|` threshold for non-degeneracy.
pub const NONDEGENERACY_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NullCurve {
    pub name: String,
    /// `(σ⁰, σ¹, σ²)` in `(t, x, y)`.
    pub components: [ComplexSeries1; 3],
    pub interval: (f64, f64),
}

impl NullCurve {
    pub fn from_series(name: impl Into<String>, center: f64, comps: [PowerSeries1; 3], interval: (f64, f64)) -> Self {
        let components = comps.map(|p| ComplexSeries1::from_real(center, &p));
        NullCurve { name: name.into(), components, interval }
    }

    /// `σ(u) = (u, cos u, sin u)`, whose surface is the helicoid.
    pub fn helicoid(order: usize) -> Self {
        let u = PowerSeries1::variable_at(0.0, order);
        let (s, c) = u.sin_cos();
        Self::from_series("helicoid_null", 0.0, [u, c, s], (-1.0, 1.0))
    }

    pub fn eval(&self, z: Complex64) -> Result<[Complex64; 3]> {
        let [a, b, c] = &self.components;
        Ok([a.eval(z)?, b.eval(z)?, c.eval(z)?])
    }

    fn derivative_curve(&self) -> [ComplexSeries1; 3] {
        self.components.clone().map(|c| c.derivative())
    }

    fn real_part(&self, comps: &[ComplexSeries1; 3], u: f64) -> Result<[f64; 3]> {
        let z = Complex64::new(u, 0.0);
        Ok([comps[0].eval(z)?.re, comps[1].eval(z)?.re, comps[2].eval(z)?.re])
    }

    pub fn point(&self, u: f64) -> Result<[f64; 3]> {
        self.real_part(&self.components, u)
    }

    pub fn velocity(&self, u: f64) -> Result<[f64; 3]> {
        self.real_part(&self.derivative_curve(), u)
    }

    pub fn acceleration(&self, u: f64) -> Result<[f64; 3]> {
        let d2 = self.derivative_curve().map(|c| c.derivative());
        self.real_part(&d2, u)
    }

    /// `⟨σ', σ'⟩` at `u`.
    pub fn null_residual(&self, u: f64) -> Result<f64> {
        let v = self.velocity(u)?;
        Ok(lorentz_dot(&v, &v))
    }

    /// `|σ' × σ''|` at `u`.
    pub fn nondegeneracy(&self, u: f64) -> Result<f64> {
        Ok(cross_norm(&self.velocity(u)?, &self.acceleration(u)?))
    }

    /// Largest `|⟨σ', σ'⟩|` and smallest `|σ' × σ''|` over `n` samples of the interval.
    pub fn check(&self, n: usize) -> Result<(f64, f64)> {
        let (a, b) = self.interval;
        let mut worst = (0.0f64, f64::INFINITY);
        for i in 0..n.max(2) {
            let u = a + (b - a) * i as f64 / (n.max(2) - 1) as f64;
            worst.0 = worst.0.max(self.null_residual(u)?.abs());
            worst.1 = worst.1.min(self.nondegeneracy(u)?);
        }
        Ok(worst)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleFlag {
    Ok,
    NotImmersed,
    RadiusExceeded,
    ImaginaryResidue,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BjorlingSample {
    pub u: f64,
    pub v: f64,
    pub point: [f64; 3],
    pub imag_residual: f64,
    /// `EG - F²` of the induced metric; positive on space-like samples.
    pub metric_det: f64,
    pub tag: CausalType,
    pub flag: SampleFlag,
}

/// Evaluate the reconstructed surface and its induced metric at `(u, v)`.
pub fn bjorling_reconstruct(sigma: &NullCurve, u: f64, v: f64) -> Result<BjorlingSample> {
    let s = v.abs().sqrt();
    let shift = if v >= 0.0 { Complex64::new(0.0, s) } else { Complex64::new(s, 0.0) };
    let zp = Complex64::new(u, 0.0) + shift;
    let zm = Complex64::new(u, 0.0) - shift;
    let (p, m) = (sigma.eval(zp)?, sigma.eval(zm)?);
    let mut point = [0.0; 3];
    let mut imag_residual = 0.0f64;
    for i in 0..3 {
        let avg = (p[i] + m[i]) / 2.0;
        point[i] = avg.re;
        imag_residual = imag_residual.max(avg.im.abs());
    }
    if imag_residual > IMAGINARY_TOL {
        return Err(Error::ImaginaryResidue(imag_residual));
    }

    let d = sigma.derivative_curve();
    let eval_d = |z: Complex64| -> Result<[Complex64; 3]> { Ok([d[0].eval(z)?, d[1].eval(z)?, d[2].eval(z)?]) };
    let (dp, dm) = (eval_d(zp)?, eval_d(zm)?);
    let fu: [f64; 3] = std::array::from_fn(|i| ((dp[i] + dm[i]) / 2.0).re);
    let fv: [f64; 3] = if s < 1e-8 {
        let acc = sigma.acceleration(u)?;
        acc.map(|a| -a / 2.0)
    } else if v >= 0.0 {
        // d/dv with s = √v: -Im σ'(u + is) / (2s)
        std::array::from_fn(|i| -dp[i].im / (2.0 * s))
    } else {
        std::array::from_fn(|i| -(dp[i].re - dm[i].re) / (4.0 * s))
    };
    let e = lorentz_dot(&fu, &fu);
    let f = lorentz_dot(&fu, &fv);
    let g = lorentz_dot(&fv, &fv);
    let metric_det = e * g - f * f;
    let band = 1e-12 * (1.0 + e.abs() * g.abs() + f * f);
    let tag = if metric_det > band {
        CausalType::Spacelike
    } else if metric_det < -band {
        CausalType::Timelike
    } else {
        CausalType::Lightlike
    };
    let flag = if cross_norm(&fu, &fv) < IMMERSION_TOL { SampleFlag::NotImmersed } else { SampleFlag::Ok };
    Ok(BjorlingSample { u, v, point, imag_residual, metric_det, tag, flag })
}

/// Samples on a `(u, v)` grid, `v` index outer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BjorlingPatch {
    pub nu: usize,
    pub nv: usize,
    pub samples: Vec<BjorlingSample>,
}

impl BjorlingPatch {
    pub fn count_flag(&self, flag: SampleFlag) -> usize {
        self.samples.iter().filter(|s| s.flag == flag).count()
    }
}

/// Grid reconstruction; samples outside the evaluation radius or with
/// imaginary residue are kept with a flag and NaN coordinates.
pub fn bjorling_grid(sigma: &NullCurve, us: &[f64], vs: &[f64]) -> BjorlingPatch {
    let pts: Vec<(f64, f64)> = vs.iter().flat_map(|&v| us.iter().map(move |&u| (u, v))).collect();
    let samples = pts
        .par_iter()
        .map(|&(u, v)| match bjorling_reconstruct(sigma, u, v) {
            Ok(s) => s,
            Err(e) => BjorlingSample {
                u,
                v,
                point: [f64::NAN; 3],
                imag_residual: f64::NAN,
                metric_det: f64::NAN,
                tag: CausalType::Lightlike,
                flag: match e {
                    Error::ImaginaryResidue(_) => SampleFlag::ImaginaryResidue,
                    _ => SampleFlag::RadiusExceeded,
                },
            },
        })
        .collect();
    BjorlingPatch { nu: us.len(), nv: vs.len(), samples }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn helicoid_is_a_nondegenerate_null_curve() {
        let h = NullCurve::helicoid(40);
        let (null, cross) = h.check(101).unwrap();
        assert!(null < 1e-14);
        // |(1, -sin, cos) × (0, -cos, -sin)| = √2
        assert_abs_diff_eq!(cross, 2f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn reconstruction_matches_closed_form() {
        let h = NullCurve::helicoid(40);
        for &(u, v) in &[(0.3, 0.2), (-0.8, 0.5), (0.5, -0.3), (1.0, -0.5)] {
            let s = bjorling_reconstruct(&h, u, v).unwrap();
            let r = if v >= 0.0 { v.sqrt().cosh() } else { (-v).sqrt().cos() };
            let want = [u, u.cos() * r, u.sin() * r];
            for i in 0..3 {
                assert_abs_diff_eq!(s.point[i], want[i], epsilon = 1e-12);
            }
            let expect = if v > 0.0 { CausalType::Spacelike } else { CausalType::Timelike };
            assert_eq!(s.tag, expect);
        }
        let s = bjorling_reconstruct(&h, 0.4, 0.0).unwrap();
        assert_eq!(s.point, h.point(0.4).unwrap());
        assert_eq!(s.tag, CausalType::Lightlike);
    }

    #[test]
    fn far_samples_are_flagged() {
        let h = NullCurve::helicoid(20);
        let patch = bjorling_grid(&h, &[0.0, 1.0], &[0.0, 1e4]);
        assert_eq!(patch.samples.len(), 4);
        assert_eq!(patch.count_flag(SampleFlag::RadiusExceeded), 2);
        assert!(patch.samples[3].point[0].is_nan());
    }
}
