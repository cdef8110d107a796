//! Higher approximation functions `a_k(y) = k [x^k] f(x, y)` of a degenerate
//! germ. Vanishing of the x-derivatives of `A` at `x = 0` gives, for `k >= 4`,
//!
//! ```text
//! a_k'' + 2(k-1) a_2 a_k' + k(3-k) a_2' a_k + k (P_k + Q_k - R_k) = 0
//! ```
//!
//! with `P_k`, `Q_k`, `R_k` built from `a_s`, `s < k`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{PowerSeries1, PowerSeries2};

/// Arithmetic shared by point values and y-series.
pub trait AkScalar: Clone {
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn scale(&self, s: f64) -> Self;
}

impl AkScalar for f64 {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, s: f64) -> Self {
        self * s
    }
}

impl AkScalar for PowerSeries1 {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, s: f64) -> Self {
        self * s
    }
}

/// `a_s`, `a_s'`, `a_s''` indexed by `s` (entries below 2 unused).
pub struct AkJets<'a, T> {
    pub val: &'a [T],
    pub d1: &'a [T],
    pub d2: &'a [T],
}

/// `P_k + Q_k - R_k`; needs `s <= k - 1`.
pub fn pqr<T: AkScalar>(k: usize, a: &AkJets<'_, T>, zero: &T) -> T {
    let mut acc = zero.clone();
    for m in 3..k {
        let w = 2.0 * (k as f64 - 2.0 * m as f64 + 3.0) / (k - m + 2) as f64;
        acc = acc.add(&a.val[m].mul(&a.d1[k - m + 2]).scale(w));
    }
    for m in 2..=k.saturating_sub(2) {
        for n in 2..=k - m {
            let r = k + 2 - m - n;
            let wq = (3.0 * n as f64 - k as f64 + m as f64 - 1.0) / (m * n) as f64;
            acc = acc.add(&a.d1[m].mul(&a.d1[n]).mul(&a.val[r]).scale(wq));
            acc = acc.add(&a.val[m].mul(&a.val[n]).mul(&a.d2[r]).scale(-1.0 / r as f64));
        }
    }
    acc
}

/// Left side of the `a_k` equation; zero on solutions.
pub fn ak_residual<T: AkScalar>(k: usize, a: &AkJets<'_, T>, zero: &T) -> T {
    let kf = k as f64;
    a.d2[k]
        .add(&a.val[2].mul(&a.d1[k]).scale(2.0 * (kf - 1.0)))
        .add(&a.d1[2].mul(&a.val[k]).scale(kf * (3.0 - kf)))
        .add(&pqr(k, a, zero).scale(kf))
}

/// The `k = 4` equation as printed: `a₄'' + 6a₂a₄' - 4a₂'a₄ + 3a₂(a₂')² - 2a₂²a₂'' + (8/3)a₃a₃'`.
pub fn a4_printed(a: &AkJets<'_, f64>) -> f64 {
    a.d2[4] + 6.0 * a.val[2] * a.d1[4] - 4.0 * a.d1[2] * a.val[4] + 3.0 * a.val[2] * a.d1[2].powi(2)
        - 2.0 * a.val[2].powi(2) * a.d2[2]
        + 8.0 / 3.0 * a.val[3] * a.d1[3]
}

/// `a_k` of a series germ as a y-series, `k [x^k] f`.
pub fn ak_of_series(f: &PowerSeries2, k: usize) -> PowerSeries1 {
    &f.x_coefficient(k) * k as f64
}

/// Solve for `a_4..a_kmax` as y-series about 0 given `a_2`, `a_3` and the
/// initial values `(a_k(0), a_k'(0))` for `k = 4..=kmax`. Returns `a_2..a_kmax`.
pub fn solve_ak_series(
    a2: &PowerSeries1,
    a3: &PowerSeries1,
    initial: &[(f64, f64)],
    kmax: usize,
    order: usize,
) -> Result<Vec<PowerSeries1>> {
    if kmax < 4 || initial.len() < kmax - 3 {
        return Err(Error::ParamOutOfRange(format!("need kmax >= 4 and {} initial pairs", kmax.saturating_sub(3))));
    }
    let zero = PowerSeries1::zeros(order);
    let mut val = vec![zero.clone(), zero.clone(), a2.truncate(order), a3.truncate(order)];
    for (i, k) in (4..=kmax).enumerate() {
        let mut ak = PowerSeries1::zeros(order);
        ak.set_coeff(0, initial[i].0);
        if order >= 1 {
            ak.set_coeff(1, initial[i].1);
        }
        val.push(ak);
        // fill y^{n+2} from the y^n coefficient of the residual with a_k'' omitted
        for n in 0..order.saturating_sub(1) {
            let d1: Vec<_> = val.iter().map(|s| s.derivative().truncate(order)).collect();
            let mut d2: Vec<_> = d1.iter().map(|s| s.derivative().truncate(order)).collect();
            d2[k] = zero.clone();
            let r = ak_residual(k, &AkJets { val: &val, d1: &d1, d2: &d2 }, &zero);
            let c = -r.coeff(n) / ((n + 2) * (n + 1)) as f64;
            val[k].set_coeff(n + 2, c);
        }
    }
    Ok(val.split_off(2))
}

/// Uniform y-grid through 0 for the numerical route.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct YGrid {
    pub y0: f64,
    pub y1: f64,
    pub step: f64,
}

impl Default for YGrid {
    fn default() -> Self {
        YGrid { y0: -0.5, y1: 0.5, step: 1e-3 }
    }
}

/// Steps larger than this are refused.
pub const MAX_STEP: f64 = 0.05;
/// `|α|` beyond this is treated as a pole on the grid.
pub const POLE_BOUND: f64 = 1e6;

impl YGrid {
    fn validate(&self) -> Result<()> {
        if !(self.step > 0.0) || self.step > MAX_STEP {
            return Err(Error::GridTooCoarse(self.step));
        }
        if !(self.y0 <= 0.0 && self.y1 >= 0.0) {
            return Err(Error::ParamOutOfRange(format!("grid [{}, {}] must contain 0", self.y0, self.y1)));
        }
        Ok(())
    }

    /// Number of steps below and above 0.
    fn counts(&self) -> (usize, usize) {
        let down = (-self.y0 / self.step + 1e-9).floor() as usize;
        let up = (self.y1 / self.step + 1e-9).floor() as usize;
        (down, up)
    }

    pub fn points(&self) -> Vec<f64> {
        let (down, up) = self.counts();
        (0..=down + up).map(|i| (i as f64 - down as f64) * self.step).collect()
    }
}

/// Sampled `a_k` with first and second derivatives.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AkTable {
    pub k: usize,
    pub y: Vec<f64>,
    pub value: Vec<f64>,
    pub d1: Vec<f64>,
    pub d2: Vec<f64>,
}

/// `(a_k, a_k', a_k'')` for `k = 2, 3` at `y`.
pub type LowJet<'a> = &'a dyn Fn(f64) -> Result<[f64; 3]>;

struct System<'a> {
    alpha: LowJet<'a>,
    beta: LowJet<'a>,
    kmax: usize,
}

impl System<'_> {
    /// Jets of every `a_s` at `y` from the state `[a_4, a_4', a_5, a_5', ...]`.
    fn jets(&self, y: f64, state: &[f64]) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>)> {
        let a = (self.alpha)(y)?;
        let b = (self.beta)(y)?;
        if a.iter().chain(b.iter()).any(|v| !v.is_finite() || v.abs() > POLE_BOUND) {
            return Err(Error::SingularCoefficient(a[0]));
        }
        let n = self.kmax + 1;
        let mut val = vec![0.0; n];
        let mut d1 = vec![0.0; n];
        let mut d2 = vec![0.0; n];
        [val[2], d1[2], d2[2]] = a;
        [val[3], d1[3], d2[3]] = b;
        for k in 4..n {
            val[k] = state[2 * (k - 4)];
            d1[k] = state[2 * (k - 4) + 1];
        }
        for k in 4..n {
            d2[k] = 0.0;
            d2[k] = -ak_residual(k, &AkJets { val: &val, d1: &d1, d2: &d2 }, &0.0);
        }
        Ok((val, d1, d2))
    }

    fn rhs(&self, y: f64, state: &[f64]) -> Result<Vec<f64>> {
        let (_, d1, d2) = self.jets(y, state)?;
        let mut out = vec![0.0; state.len()];
        for k in 4..=self.kmax {
            out[2 * (k - 4)] = d1[k];
            out[2 * (k - 4) + 1] = d2[k];
        }
        Ok(out)
    }

    fn rk4_step(&self, y: f64, h: f64, s: &[f64]) -> Result<Vec<f64>> {
        let axpy = |a: &[f64], t: f64, b: &[f64]| a.iter().zip(b).map(|(p, q)| p + t * q).collect::<Vec<_>>();
        let k1 = self.rhs(y, s)?;
        let k2 = self.rhs(y + h / 2.0, &axpy(s, h / 2.0, &k1))?;
        let k3 = self.rhs(y + h / 2.0, &axpy(s, h / 2.0, &k2))?;
        let k4 = self.rhs(y + h, &axpy(s, h, &k3))?;
        Ok((0..s.len()).map(|i| s[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])).collect())
    }
}

/// Integrate `a_4..a_kmax` together with fixed-step RK4 outward from `y = 0`.
/// Returns tables for `k = 2..=kmax`; `a_2 = α` and `a_3 = β` are sampled directly.
pub fn solve_ak_recursion(
    alpha: LowJet<'_>,
    beta: LowJet<'_>,
    initial: &[(f64, f64)],
    kmax: usize,
    grid: &YGrid,
) -> Result<Vec<AkTable>> {
    grid.validate()?;
    if kmax < 4 || initial.len() < kmax - 3 {
        return Err(Error::ParamOutOfRange(format!("need kmax >= 4 and {} initial pairs", kmax.saturating_sub(3))));
    }
    let sys = System { alpha, beta, kmax };
    let s0: Vec<f64> = initial[..kmax - 3].iter().flat_map(|&(v, d)| [v, d]).collect();
    let (down, up) = grid.counts();
    let h = grid.step;

    let mut states = vec![Vec::new(); down + up + 1];
    states[down] = s0.clone();
    let mut s = s0.clone();
    for i in 0..up {
        s = sys.rk4_step(i as f64 * h, h, &s)?;
        states[down + i + 1] = s.clone();
    }
    let mut s = s0;
    for i in 0..down {
        s = sys.rk4_step(-(i as f64) * h, -h, &s)?;
        states[down - i - 1] = s.clone();
    }

    let ys = grid.points();
    let mut tables: Vec<AkTable> = (2..=kmax)
        .map(|k| AkTable {
            k,
            y: ys.clone(),
            value: Vec::with_capacity(ys.len()),
            d1: Vec::with_capacity(ys.len()),
            d2: Vec::with_capacity(ys.len()),
        })
        .collect();
    for (y, st) in ys.iter().zip(&states) {
        let (val, d1, d2) = sys.jets(*y, st)?;
        for t in tables.iter_mut() {
            t.value.push(val[t.k]);
            t.d1.push(d1[t.k]);
            t.d2.push(d2[t.k]);
        }
    }
    Ok(tables)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};

    #[test]
    fn general_formula_reduces_to_printed_k4() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..100 {
            let mut r = || (0..5).map(|_| rng.gen_range(-2.0..2.0)).collect::<Vec<f64>>();
            let (val, d1, d2) = (r(), r(), r());
            let a = AkJets { val: &val, d1: &d1, d2: &d2 };
            assert_abs_diff_eq!(ak_residual(4, &a, &0.0), a4_printed(&a), epsilon = 1e-12);
        }
    }

    #[test]
    fn vanishing_seed_stays_zero() {
        let zero = |_y: f64| Ok([0.0; 3]);
        let t = solve_ak_recursion(&zero, &zero, &[(0.0, 0.0); 4], 7, &YGrid::default()).unwrap();
        assert_eq!(t.len(), 6);
        assert!(t.iter().all(|t| t.value.iter().all(|&v| v == 0.0)));
        let s = solve_ak_series(&PowerSeries1::zeros(6), &PowerSeries1::zeros(6), &[(0.0, 0.0); 2], 5, 6).unwrap();
        assert!(s.iter().all(|p| p.max_abs() == 0.0));
    }

    #[test]
    fn grid_checks() {
        let zero = |_y: f64| Ok([0.0; 3]);
        let coarse = YGrid { step: 0.1, ..Default::default() };
        assert_eq!(solve_ak_recursion(&zero, &zero, &[(0.0, 0.0)], 4, &coarse), Err(Error::GridTooCoarse(0.1)));
        let pole = |y: f64| Ok([(y - 0.3).powi(-3), 0.0, 0.0]);
        assert!(matches!(
            solve_ak_recursion(&pole, &zero, &[(0.0, 0.0)], 4, &YGrid::default()),
            Err(Error::SingularCoefficient(_))
        ));
        assert_eq!(YGrid::default().points().len(), 1001);
    }
}
