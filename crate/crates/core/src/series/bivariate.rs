//! Truncated power series in two variables with total-degree truncation.
//!
//! Coefficients of `x^j y^k`, `j + k <= N`, are stored degree by degree:
//! degree `d` occupies `d(d+1)/2 .. (d+1)(d+2)/2`, ordered by ascending `k`.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::univariate::{forward_owned_binop, PowerSeries1};
use crate::error::{Error, Result};

/// Coefficients below this (relative to the series' largest) count as zero
/// in divisibility tests.
pub const DIVISIBILITY_TOL: f64 = 1e-9;

/// Partial derivative direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Series2Repr", into = "Series2Repr")]
pub struct PowerSeries2 {
    order: usize,
    coeffs: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct Series2Repr {
    order: usize,
    coeffs: Vec<(usize, usize, f64)>,
}

impl TryFrom<Series2Repr> for PowerSeries2 {
    type Error = String;
    fn try_from(r: Series2Repr) -> std::result::Result<Self, String> {
        let mut s = PowerSeries2::zeros(r.order);
        for (j, k, c) in r.coeffs {
            if j + k > r.order {
                return Err(format!("term x^{j} y^{k} exceeds order {}", r.order));
            }
            s.set(j, k, c);
        }
        Ok(s)
    }
}

impl From<PowerSeries2> for Series2Repr {
    fn from(s: PowerSeries2) -> Self {
        // zeros are implied; this also drops -0.0
        let coeffs = s.terms().filter(|&(_, _, c)| c != 0.0).collect();
        Series2Repr { order: s.order, coeffs }
    }
}

#[inline]
fn idx(j: usize, k: usize) -> usize {
    let d = j + k;
    d * (d + 1) / 2 + k
}

fn len_for(order: usize) -> usize {
    (order + 1) * (order + 2) / 2
}

impl PowerSeries2 {
    pub fn zeros(order: usize) -> Self {
        PowerSeries2 { order, coeffs: vec![0.0; len_for(order)] }
    }

    pub fn constant(c: f64, order: usize) -> Self {
        let mut s = Self::zeros(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `x0 + x`.
    pub fn x_at(x0: f64, order: usize) -> Self {
        let mut s = Self::constant(x0, order);
        if order >= 1 {
            s.set(1, 0, 1.0);
        }
        s
    }

    /// The series `y0 + y`.
    pub fn y_at(y0: f64, order: usize) -> Self {
        let mut s = Self::constant(y0, order);
        if order >= 1 {
            s.set(0, 1, 1.0);
        }
        s
    }

    /// Build from `(j, k, c)` triples; terms beyond `order` are dropped.
    pub fn from_terms(order: usize, terms: impl IntoIterator<Item = (usize, usize, f64)>) -> Self {
        let mut s = Self::zeros(order);
        for (j, k, c) in terms {
            if j + k <= order {
                s.coeffs[idx(j, k)] += c;
            }
        }
        s
    }

    /// Embed a univariate series in `x`.
    pub fn from_x(p: &PowerSeries1, order: usize) -> Self {
        Self::from_terms(order, p.coeffs().iter().enumerate().map(|(j, &c)| (j, 0, c)))
    }

    /// Embed a univariate series in `y`.
    pub fn from_y(p: &PowerSeries1, order: usize) -> Self {
        Self::from_terms(order, p.coeffs().iter().enumerate().map(|(k, &c)| (0, k, c)))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `x^j y^k`, zero beyond the truncation order.
    pub fn get(&self, j: usize, k: usize) -> f64 {
        if j + k > self.order {
            0.0
        } else {
            self.coeffs[idx(j, k)]
        }
    }

    pub fn set(&mut self, j: usize, k: usize, c: f64) {
        assert!(j + k <= self.order, "x^{j} y^{k} beyond order {}", self.order);
        self.coeffs[idx(j, k)] = c;
    }

    /// All `(j, k, c)` in graded order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..=self.order).flat_map(move |d| (0..=d).map(move |k| (d - k, k, self.coeffs[idx(d - k, k)])))
    }

    pub fn constant_term(&self) -> f64 {
        self.coeffs[0]
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.max_abs() <= tol
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut s = Self::zeros(order);
        let n = order.min(self.order);
        s.coeffs[..len_for(n)].copy_from_slice(&self.coeffs[..len_for(n)]);
        s
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        PowerSeries2 { order: self.order, coeffs: self.coeffs.iter().map(|&c| f(c)).collect() }
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|c| c * s)
    }

    /// `(x, y) -> (m x, m y)`: coefficient of degree `d` scaled by `m^d`.
    pub fn scale_args(&self, m: f64) -> Self {
        let mut r = self.clone();
        let mut p = 1.0;
        for d in 0..=self.order {
            for k in 0..=d {
                r.coeffs[idx(d - k, k)] *= p;
            }
            p *= m;
        }
        r
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        // Horner in y over the x-coefficient polynomials.
        let mut acc = 0.0;
        for k in (0..=self.order).rev() {
            let mut px = 0.0;
            for j in (0..=self.order - k).rev() {
                px = px * x + self.coeffs[idx(j, k)];
            }
            acc = acc * y + px;
        }
        acc
    }

    /// Partial derivative `∂^{p+q} / ∂x^p ∂y^q` evaluated at `(x, y)`.
    pub fn eval_partial(&self, p: usize, q: usize, x: f64, y: f64) -> f64 {
        let mut acc = 0.0;
        let mut yk = 1.0;
        for k in q..=self.order {
            let mut xj = 1.0;
            let mut row = 0.0;
            for j in p..=self.order - k {
                let c = self.coeffs[idx(j, k)];
                if c != 0.0 {
                    row += c * falling(j, p) * xj;
                }
                xj *= x;
            }
            acc += row * falling(k, q) * yk;
            yk *= y;
        }
        acc
    }

    pub fn diff(&self, axis: Axis) -> Self {
        if self.order == 0 {
            return Self::zeros(0);
        }
        let n = self.order - 1;
        let mut r = Self::zeros(n);
        for d in 0..=n {
            for k in 0..=d {
                let j = d - k;
                let v = match axis {
                    Axis::X => (j + 1) as f64 * self.coeffs[idx(j + 1, k)],
                    Axis::Y => (k + 1) as f64 * self.coeffs[idx(j, k + 1)],
                };
                r.coeffs[idx(j, k)] = v;
            }
        }
        r
    }

    /// `f(x, 0)`.
    pub fn restrict_y0(&self) -> PowerSeries1 {
        PowerSeries1::new((0..=self.order).map(|j| self.get(j, 0)).collect())
    }

    /// `f(0, y)`.
    pub fn restrict_x0(&self) -> PowerSeries1 {
        PowerSeries1::new((0..=self.order).map(|k| self.get(0, k)).collect())
    }

    /// The coefficient of `x^j` as a series in `y` (order `N - j`).
    pub fn x_coefficient(&self, j: usize) -> PowerSeries1 {
        if j > self.order {
            return PowerSeries1::zeros(0);
        }
        PowerSeries1::new((0..=self.order - j).map(|k| self.get(j, k)).collect())
    }

    /// `h` with `self = x^{k+1} h`. Requires every coefficient of `x^j y^l`
    /// with `j <= k` to vanish; `h` has order `N - k - 1`.
    pub fn divide_by_x_power(&self, k: usize) -> Result<Self> {
        let scale = self.max_abs().max(f64::MIN_POSITIVE);
        for d in 0..=self.order {
            for l in 0..=d {
                let j = d - l;
                let c = self.coeffs[idx(j, l)];
                if j <= k && (c / scale).abs() > DIVISIBILITY_TOL {
                    return Err(Error::NotDivisible { power: k + 1, j, k: l, value: c });
                }
            }
        }
        if self.order < k + 1 {
            return Ok(Self::zeros(0));
        }
        let n = self.order - k - 1;
        let mut h = Self::zeros(n);
        for d in 0..=n {
            for l in 0..=d {
                let j = d - l;
                h.coeffs[idx(j, l)] = self.coeffs[idx(j + k + 1, l)];
            }
        }
        Ok(h)
    }

    /// `x^p * self`, keeping the order.
    pub fn mul_x_power(&self, p: usize) -> Self {
        let mut r = Self::zeros(self.order);
        for (j, k, c) in self.terms() {
            if j + k + p <= self.order {
                r.coeffs[idx(j + p, k)] = c;
            }
        }
        r
    }

    pub fn recip(&self) -> Result<Self> {
        let a0 = self.coeffs[0];
        let scale = self.max_abs();
        if !a0.is_finite() || a0.abs() <= 1e-14 * scale.max(1e-300) {
            return Err(Error::ZeroConstantTerm(a0));
        }
        let n = self.order;
        let mut b = Self::zeros(n);
        b.coeffs[0] = 1.0 / a0;
        for d in 1..=n {
            for k in 0..=d {
                let j = d - k;
                let mut s = 0.0;
                for q in 0..=k {
                    for p in 0..=j {
                        if p == 0 && q == 0 {
                            continue;
                        }
                        let a = self.coeffs[idx(p, q)];
                        if a != 0.0 {
                            s += a * b.coeffs[idx(j - p, k - q)];
                        }
                    }
                }
                b.coeffs[idx(j, k)] = -s / a0;
            }
        }
        Ok(b)
    }

    /// Principal square root by Newton iteration `b <- (b + a/b)/2`; each
    /// step doubles the number of correct degrees.
    pub fn sqrt(&self) -> Result<Self> {
        let a0 = self.coeffs[0];
        if !(a0 > 0.0) {
            return Err(Error::NonPositiveConstantTerm(a0));
        }
        let n = self.order;
        let mut b = Self::constant(a0.sqrt(), n);
        let mut correct = 1usize; // degrees 0..correct are exact
        while correct <= n {
            correct = (2 * correct).min(n + 1);
            let prec = correct - 1;
            let a = self.truncate(prec);
            let bt = b.truncate(prec);
            let next = (&bt + &(&a * &bt.recip()?)).scale(0.5);
            b = next.truncate(n);
        }
        Ok(b)
    }

    /// `outer(self)` where `outer` is the Taylor expansion of a function
    /// about `self.constant_term()`.
    pub fn compose(&self, outer: &PowerSeries1) -> Self {
        let n = self.order;
        let mut shifted = self.clone();
        shifted.coeffs[0] = 0.0;
        let m = outer.order().min(n);
        let mut r = Self::constant(outer.coeff(m), n);
        for k in (0..m).rev() {
            r = &r * &shifted;
            r.coeffs[0] += outer.coeff(k);
        }
        r
    }

    /// Apply an elementary univariate function, given as a map on series.
    pub fn apply(&self, f: impl Fn(&PowerSeries1) -> Result<PowerSeries1>) -> Result<Self> {
        let t = PowerSeries1::variable_at(self.coeffs[0], self.order);
        Ok(self.compose(&f(&t)?))
    }

    pub fn exp(&self) -> Self {
        self.compose(&PowerSeries1::variable_at(self.coeffs[0], self.order).exp())
    }
    pub fn ln(&self) -> Result<Self> {
        self.apply(|t| t.ln())
    }
    pub fn sin(&self) -> Self {
        self.compose(&PowerSeries1::variable_at(self.coeffs[0], self.order).sin())
    }
    pub fn cos(&self) -> Self {
        self.compose(&PowerSeries1::variable_at(self.coeffs[0], self.order).cos())
    }
    pub fn tan(&self) -> Result<Self> {
        self.apply(|t| t.tan())
    }
    pub fn sinh(&self) -> Self {
        self.compose(&PowerSeries1::variable_at(self.coeffs[0], self.order).sinh())
    }
    pub fn cosh(&self) -> Self {
        self.compose(&PowerSeries1::variable_at(self.coeffs[0], self.order).cosh())
    }
    pub fn tanh(&self) -> Result<Self> {
        self.apply(|t| t.tanh())
    }
    pub fn atan(&self) -> Result<Self> {
        self.apply(|t| t.atan())
    }
    pub fn asin(&self) -> Result<Self> {
        self.apply(|t| t.asin())
    }
    pub fn acos(&self) -> Result<Self> {
        self.apply(|t| t.acos())
    }
    pub fn asinh(&self) -> Result<Self> {
        self.apply(|t| t.asinh())
    }
    pub fn acosh(&self) -> Result<Self> {
        self.apply(|t| t.acosh())
    }
}

fn falling(n: usize, p: usize) -> f64 {
    (0..p).map(|i| (n - i) as f64).product()
}

impl Add<&PowerSeries2> for &PowerSeries2 {
    type Output = PowerSeries2;
    fn add(self, rhs: &PowerSeries2) -> PowerSeries2 {
        let n = self.order.min(rhs.order);
        let len = len_for(n);
        PowerSeries2 {
            order: n,
            coeffs: self.coeffs[..len].iter().zip(&rhs.coeffs[..len]).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&PowerSeries2> for &PowerSeries2 {
    type Output = PowerSeries2;
    fn sub(self, rhs: &PowerSeries2) -> PowerSeries2 {
        let n = self.order.min(rhs.order);
        let len = len_for(n);
        PowerSeries2 {
            order: n,
            coeffs: self.coeffs[..len].iter().zip(&rhs.coeffs[..len]).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul<&PowerSeries2> for &PowerSeries2 {
    type Output = PowerSeries2;
    fn mul(self, rhs: &PowerSeries2) -> PowerSeries2 {
        let n = self.order.min(rhs.order);
        let mut r = PowerSeries2::zeros(n);
        for d1 in 0..=n {
            for k1 in 0..=d1 {
                let a = self.coeffs[idx(d1 - k1, k1)];
                if a == 0.0 {
                    continue;
                }
                let j1 = d1 - k1;
                for d2 in 0..=n - d1 {
                    for k2 in 0..=d2 {
                        let b = rhs.coeffs[idx(d2 - k2, k2)];
                        r.coeffs[idx(j1 + d2 - k2, k1 + k2)] += a * b;
                    }
                }
            }
        }
        r
    }
}

impl Add<f64> for &PowerSeries2 {
    type Output = PowerSeries2;
    fn add(self, rhs: f64) -> PowerSeries2 {
        let mut r = self.clone();
        r.coeffs[0] += rhs;
        r
    }
}

impl Sub<f64> for &PowerSeries2 {
    type Output = PowerSeries2;
    fn sub(self, rhs: f64) -> PowerSeries2 {
        self + (-rhs)
    }
}

impl Mul<f64> for &PowerSeries2 {
    type Output = PowerSeries2;
    fn mul(self, rhs: f64) -> PowerSeries2 {
        self.scale(rhs)
    }
}

impl Neg for PowerSeries2 {
    type Output = PowerSeries2;
    fn neg(mut self) -> PowerSeries2 {
        self.coeffs.iter_mut().for_each(|c| *c = -*c);
        self
    }
}

impl Neg for &PowerSeries2 {
    type Output = PowerSeries2;
    fn neg(self) -> PowerSeries2 {
        -self.clone()
    }
}

forward_owned_binop!(PowerSeries2, Add, add);
forward_owned_binop!(PowerSeries2, Sub, sub);
forward_owned_binop!(PowerSeries2, Mul, mul);
