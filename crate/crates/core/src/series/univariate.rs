//! Truncated power series in one variable.
//!
//! Elementary functions are computed with the usual first-order recurrences
//! obtained from `b' = F'(a) a'`, so they work for an arbitrary inner series
//! and not only for the identity.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `c_0 + c_1 t + ... + c_N t^N`, truncated at degree `N = order()`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Series1Repr", into = "Series1Repr")]
pub struct PowerSeries1 {
    coeffs: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct Series1Repr {
    order: usize,
    coeffs: Vec<f64>,
}

impl TryFrom<Series1Repr> for PowerSeries1 {
    type Error = String;
    fn try_from(r: Series1Repr) -> std::result::Result<Self, String> {
        if r.coeffs.len() > r.order + 1 {
            return Err(format!(
                "{} coefficients given for order {}",
                r.coeffs.len(),
                r.order
            ));
        }
        let mut s = PowerSeries1::zeros(r.order);
        s.coeffs[..r.coeffs.len()].copy_from_slice(&r.coeffs);
        Ok(s)
    }
}

impl From<PowerSeries1> for Series1Repr {
    fn from(s: PowerSeries1) -> Self {
        Series1Repr { order: s.order(), coeffs: s.coeffs }
    }
}

impl PowerSeries1 {
    /// Series with the given coefficients; the order is `coeffs.len() - 1`.
    /// An empty vector gives the zero series of order 0.
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        PowerSeries1 { coeffs }
    }

    /// Coefficients padded with zeros (or truncated) to `order`.
    pub fn from_coeffs(coeffs: &[f64], order: usize) -> Self {
        let mut s = Self::zeros(order);
        for (dst, src) in s.coeffs.iter_mut().zip(coeffs) {
            *dst = *src;
        }
        s
    }

    pub fn zeros(order: usize) -> Self {
        PowerSeries1 { coeffs: vec![0.0; order + 1] }
    }

    pub fn constant(c: f64, order: usize) -> Self {
        let mut s = Self::zeros(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `t0 + t`.
    pub fn variable_at(t0: f64, order: usize) -> Self {
        let mut s = Self::constant(t0, order);
        if order >= 1 {
            s.coeffs[1] = 1.0;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient of `t^n`, zero beyond the truncation order.
    pub fn coeff(&self, n: usize) -> f64 {
        self.coeffs.get(n).copied().unwrap_or(0.0)
    }

    pub fn set_coeff(&mut self, n: usize, c: f64) {
        self.coeffs[n] = c;
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(&self.coeffs, order)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
    }

    /// Value and first two derivatives at `t`.
    pub fn eval_jet(&self, t: f64) -> [f64; 3] {
        let d1 = self.derivative();
        let d2 = d1.derivative();
        [self.eval(t), d1.eval(t), d2.eval(t)]
    }

    /// Formal derivative; the order drops by one (a constant of order 0 stays order 0).
    pub fn derivative(&self) -> Self {
        let n = self.order();
        if n == 0 {
            return Self::zeros(0);
        }
        PowerSeries1 {
            coeffs: (1..=n).map(|k| k as f64 * self.coeffs[k]).collect(),
        }
    }

    /// Antiderivative with constant term `c0`; the order rises by one.
    pub fn integral(&self, c0: f64) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(c0);
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c / (k as f64 + 1.0)),
        );
        PowerSeries1 { coeffs }
    }

    pub fn scale(&self, s: f64) -> Self {
        PowerSeries1 { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    /// `t -> m t`, i.e. coefficient `n` scaled by `m^n`.
    pub fn scale_arg(&self, m: f64) -> Self {
        let mut p = 1.0;
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let v = c * p;
                p *= m;
                v
            })
            .collect();
        PowerSeries1 { coeffs }
    }

    pub fn recip(&self) -> Result<Self> {
        let a0 = self.coeffs[0];
        if a0.abs() < 1e-300 || !a0.is_finite() {
            return Err(Error::ZeroConstantTerm(a0));
        }
        let n = self.order();
        let mut b = vec![0.0; n + 1];
        b[0] = 1.0 / a0;
        for m in 1..=n {
            let s: f64 = (1..=m).map(|k| self.coeffs[k] * b[m - k]).sum();
            b[m] = -s / a0;
        }
        Ok(PowerSeries1 { coeffs: b })
    }

    pub fn sqrt(&self) -> Result<Self> {
        let a0 = self.coeffs[0];
        if !(a0 > 0.0) {
            return Err(Error::NonPositiveConstantTerm(a0));
        }
        let n = self.order();
        let mut b = vec![0.0; n + 1];
        b[0] = a0.sqrt();
        for m in 1..=n {
            let s: f64 = (1..m).map(|k| b[k] * b[m - k]).sum();
            b[m] = (self.coeffs[m] - s) / (2.0 * b[0]);
        }
        Ok(PowerSeries1 { coeffs: b })
    }

    pub fn exp(&self) -> Self {
        let n = self.order();
        let mut b = vec![0.0; n + 1];
        b[0] = self.coeffs[0].exp();
        for m in 1..=n {
            let s: f64 = (1..=m).map(|k| k as f64 * self.coeffs[k] * b[m - k]).sum();
            b[m] = s / m as f64;
        }
        PowerSeries1 { coeffs: b }
    }

    pub fn ln(&self) -> Result<Self> {
        let a0 = self.coeffs[0];
        if !(a0 > 0.0) {
            return Err(Error::Domain { func: "ln", value: a0 });
        }
        Ok(self.integrate_derivative(&self.recip()?, a0.ln()))
    }

    /// `(sin a, cos a)`.
    pub fn sin_cos(&self) -> (Self, Self) {
        self.trig_pair(-1.0)
    }

    /// `(sinh a, cosh a)`.
    pub fn sinh_cosh(&self) -> (Self, Self) {
        self.trig_pair(1.0)
    }

    // s' = c a', c' = sign * s a'
    fn trig_pair(&self, sign: f64) -> (Self, Self) {
        let n = self.order();
        let a0 = self.coeffs[0];
        let (mut s, mut c) = (vec![0.0; n + 1], vec![0.0; n + 1]);
        if sign < 0.0 {
            s[0] = a0.sin();
            c[0] = a0.cos();
        } else {
            s[0] = a0.sinh();
            c[0] = a0.cosh();
        }
        for m in 1..=n {
            let (mut ss, mut cs) = (0.0, 0.0);
            for k in 1..=m {
                let ka = k as f64 * self.coeffs[k];
                ss += ka * c[m - k];
                cs += ka * s[m - k];
            }
            s[m] = ss / m as f64;
            c[m] = sign * cs / m as f64;
        }
        (PowerSeries1 { coeffs: s }, PowerSeries1 { coeffs: c })
    }

    pub fn sin(&self) -> Self {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Self {
        self.sin_cos().1
    }

    pub fn tan(&self) -> Result<Self> {
        let (s, c) = self.sin_cos();
        Ok(&s * &c.recip()?)
    }

    pub fn sinh(&self) -> Self {
        self.sinh_cosh().0
    }

    pub fn cosh(&self) -> Self {
        self.sinh_cosh().1
    }

    pub fn tanh(&self) -> Result<Self> {
        let (s, c) = self.sinh_cosh();
        Ok(&s * &c.recip()?)
    }

    pub fn atan(&self) -> Result<Self> {
        let d = (&(self * self) + 1.0).recip()?;
        Ok(self.integrate_derivative(&d, self.coeffs[0].atan()))
    }

    pub fn asin(&self) -> Result<Self> {
        let a0 = self.coeffs[0];
        if !(a0.abs() < 1.0) {
            return Err(Error::Domain { func: "asin", value: a0 });
        }
        let d = (&(-(self * self)) + 1.0).sqrt()?.recip()?;
        Ok(self.integrate_derivative(&d, a0.asin()))
    }

    pub fn acos(&self) -> Result<Self> {
        let a0 = self.coeffs[0];
        let s = self.asin()?;
        let mut r = -s;
        r.coeffs[0] = a0.acos();
        Ok(r)
    }

    pub fn asinh(&self) -> Result<Self> {
        let d = (&(self * self) + 1.0).sqrt()?.recip()?;
        Ok(self.integrate_derivative(&d, self.coeffs[0].asinh()))
    }

    pub fn acosh(&self) -> Result<Self> {
        let a0 = self.coeffs[0];
        if !(a0 > 1.0) {
            return Err(Error::Domain { func: "acosh", value: a0 });
        }
        let d = (&(self * self) - 1.0).sqrt()?.recip()?;
        Ok(self.integrate_derivative(&d, a0.acosh()))
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut r = Self::constant(1.0, self.order());
        for _ in 0..n {
            r = &r * self;
        }
        r
    }

    /// `c0 + ∫ a' d` truncated to the order of `self`.
    fn integrate_derivative(&self, d: &Self, c0: f64) -> Self {
        let da = self.derivative();
        (&da * d).integral(c0).truncate(self.order())
    }
}

impl Add<&PowerSeries1> for &PowerSeries1 {
    type Output = PowerSeries1;
    fn add(self, rhs: &PowerSeries1) -> PowerSeries1 {
        let n = self.order().min(rhs.order());
        PowerSeries1 {
            coeffs: (0..=n).map(|k| self.coeffs[k] + rhs.coeffs[k]).collect(),
        }
    }
}

impl Sub<&PowerSeries1> for &PowerSeries1 {
    type Output = PowerSeries1;
    fn sub(self, rhs: &PowerSeries1) -> PowerSeries1 {
        let n = self.order().min(rhs.order());
        PowerSeries1 {
            coeffs: (0..=n).map(|k| self.coeffs[k] - rhs.coeffs[k]).collect(),
        }
    }
}

impl Mul<&PowerSeries1> for &PowerSeries1 {
    type Output = PowerSeries1;
    fn mul(self, rhs: &PowerSeries1) -> PowerSeries1 {
        let n = self.order().min(rhs.order());
        let coeffs = (0..=n)
            .map(|m| (0..=m).map(|k| self.coeffs[k] * rhs.coeffs[m - k]).sum())
            .collect();
        PowerSeries1 { coeffs }
    }
}

impl Add<f64> for &PowerSeries1 {
    type Output = PowerSeries1;
    fn add(self, rhs: f64) -> PowerSeries1 {
        let mut r = self.clone();
        r.coeffs[0] += rhs;
        r
    }
}

impl Sub<f64> for &PowerSeries1 {
    type Output = PowerSeries1;
    fn sub(self, rhs: f64) -> PowerSeries1 {
        self + (-rhs)
    }
}

impl Mul<f64> for &PowerSeries1 {
    type Output = PowerSeries1;
    fn mul(self, rhs: f64) -> PowerSeries1 {
        self.scale(rhs)
    }
}

impl Neg for PowerSeries1 {
    type Output = PowerSeries1;
    fn neg(mut self) -> PowerSeries1 {
        self.coeffs.iter_mut().for_each(|c| *c = -*c);
        self
    }
}

impl Neg for &PowerSeries1 {
    type Output = PowerSeries1;
    fn neg(self) -> PowerSeries1 {
        -self.clone()
    }
}

macro_rules! forward_owned_binop {
    ($ty:ty, $tr:ident, $m:ident) => {
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &$ty) -> $ty {
                (&self).$m(rhs)
            }
        }
        impl $tr<$ty> for &$ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                self.$m(&rhs)
            }
        }
        impl $tr<f64> for $ty {
            type Output = $ty;
            fn $m(self, rhs: f64) -> $ty {
                (&self).$m(rhs)
            }
        }
    };
}
pub(crate) use forward_owned_binop;

forward_owned_binop!(PowerSeries1, Add, add);
forward_owned_binop!(PowerSeries1, Sub, sub);
forward_owned_binop!(PowerSeries1, Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn t(order: usize) -> PowerSeries1 {
        PowerSeries1::variable_at(0.0, order)
    }

    fn factorial(n: usize) -> f64 {
        (1..=n).map(|k| k as f64).product()
    }

    #[test]
    fn geometric_series() {
        let a = PowerSeries1::new(vec![1.0, -1.0, 0.0, 0.0, 0.0]);
        let b = a.recip().unwrap();
        for c in b.coeffs() {
            assert_abs_diff_eq!(*c, 1.0);
        }
    }

    #[test]
    fn exp_sin_cos_match_factorials() {
        let x = t(10);
        let e = x.exp();
        let (s, c) = x.sin_cos();
        for n in 0..=10 {
            assert_abs_diff_eq!(e.coeff(n), 1.0 / factorial(n), epsilon = 1e-15);
            let sn = if n % 2 == 1 { (-1f64).powi((n as i32 - 1) / 2) / factorial(n) } else { 0.0 };
            let cn = if n % 2 == 0 { (-1f64).powi(n as i32 / 2) / factorial(n) } else { 0.0 };
            assert_abs_diff_eq!(s.coeff(n), sn, epsilon = 1e-15);
            assert_abs_diff_eq!(c.coeff(n), cn, epsilon = 1e-15);
        }
    }

    #[test]
    fn inverse_functions_round_trip() {
        let x = PowerSeries1::variable_at(0.3, 12);
        let checks: Vec<(PowerSeries1, PowerSeries1)> = vec![
            (x.tan().unwrap().atan().unwrap(), x.clone()),
            (x.sin().asin().unwrap(), x.clone()),
            (x.sinh().asinh().unwrap(), x.clone()),
            (x.exp().ln().unwrap(), x.clone()),
        ];
        for (got, want) in checks {
            for n in 0..=12 {
                assert_abs_diff_eq!(got.coeff(n), want.coeff(n), epsilon = 1e-12);
            }
        }
        // acos(cos a) and acosh(cosh a) pass through 1/sin a, whose radius of
        // convergence about a0 is |a0|; keep a0 well away from 0.
        let y = PowerSeries1::variable_at(1.2, 12);
        for back in [y.cosh().acosh().unwrap(), y.cos().acos().unwrap()] {
            for n in 0..=12 {
                assert_abs_diff_eq!(back.coeff(n), y.coeff(n), epsilon = 1e-11);
            }
        }
    }

    #[test]
    fn sqrt_binomial() {
        // sqrt(1 - t^2) = 1 - t^2/2 - t^4/8 - t^6/16
        let a = PowerSeries1::new(vec![1.0, 0.0, -1.0, 0.0, 0.0, 0.0, 0.0]);
        let s = a.sqrt().unwrap();
        let want = [1.0, 0.0, -0.5, 0.0, -0.125, 0.0, -0.0625];
        for (n, w) in want.iter().enumerate() {
            assert_abs_diff_eq!(s.coeff(n), *w, epsilon = 1e-15);
        }
    }

    #[test]
    fn domain_errors() {
        assert!(PowerSeries1::zeros(3).recip().is_err());
        assert!(PowerSeries1::constant(-1.0, 3).sqrt().is_err());
        assert!(PowerSeries1::constant(0.5, 3).acosh().is_err());
        assert!(PowerSeries1::constant(0.0, 3).ln().is_err());
    }

    #[test]
    fn json_shape() {
        let s = PowerSeries1::new(vec![0.1, 0.2]);
        let js = serde_json::to_string(&s).unwrap();
        assert_eq!(js, r#"{"order":1,"coeffs":[0.1,0.2]}"#);
        let back: PowerSeries1 = serde_json::from_str(&js).unwrap();
        assert_eq!(back, s);
    }
}
