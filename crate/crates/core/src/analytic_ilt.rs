//! Inversion of analytic Laplace-domain functions with a cosh kernel.
//!
//! `f(t) ≈ -(e^a / t) Σ_{n≥0} (-1)^n Im F((a + i(n + ½)π) / t)`, with the
//! alternating tail summed by Euler's transformation.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::forward_lt::TimeSignal;
use crate::numerics::{binomial, Complex64};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IltParams {
    pub a_param: f64,
    pub n_sum: usize,
    pub n_euler: usize,
}

impl Default for IltParams {
    fn default() -> Self {
        Self { a_param: 6.0, n_sum: 50, n_euler: 12 }
    }
}

impl IltParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.a_param > 0.0 && self.a_param.is_finite()) {
            return Err(Error::InvalidInput(format!("a_param = {} must be positive", self.a_param)));
        }
        if self.n_sum == 0 || self.n_euler == 0 {
            return Err(Error::InvalidInput("n_sum and n_euler must be at least 1".into()));
        }
        if self.a_param > 700.0 {
            return Err(Error::Overflow(format!("e^{} overflows", self.a_param)));
        }
        Ok(())
    }
}

/// Tail weights `2^{-N} E_k`, `k = 1..=N`, with `E_N = 1` and `E_k = E_{k+1} + C(N, k)`.
pub fn euler_weights(n_euler: usize) -> Vec<f64> {
    let n = n_euler as u64;
    let mut e = vec![0.0; n_euler];
    let mut acc = 0.0;
    for k in (1..=n).rev() {
        acc += if k == n { 1.0 } else { binomial(n, k) };
        e[k as usize - 1] = acc;
    }
    let scale = 0.5f64.powi(n_euler as i32);
    e.iter().map(|v| v * scale).collect()
}

/// Sum of the alternating series `y_1 - y_2 + y_3 - …`.
///
/// The first `y.len() - n_euler` terms are summed directly and the last
/// `n_euler` are combined with [`euler_weights`].
pub fn euler_accelerate(y: &[f64], n_euler: usize) -> Result<f64> {
    if n_euler == 0 || y.len() < n_euler {
        return Err(Error::InvalidInput(format!(
            "need at least n_euler = {n_euler} >= 1 terms, got {}",
            y.len()
        )));
    }
    if y.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("series term".into()));
    }
    let m = y.len() - n_euler;
    let sign = |i: usize| if i.is_multiple_of(2) { 1.0 } else { -1.0 };
    let raw: f64 = y[..m].iter().enumerate().map(|(i, v)| sign(i) * v).sum();
    let tail: f64 = euler_weights(n_euler)
        .iter()
        .zip(&y[m..])
        .enumerate()
        .map(|(k, (w, v))| sign(k) * w * v)
        .sum();
    Ok(raw + sign(m) * tail)
}

/// Truncated expansion `1/cosh z ≈ 2π Σ_{n<n_terms} (-1)^n (n+½) / ((n+½)²π² + z²)`.
pub fn cosh_inv_series(z: Complex64, n_terms: usize) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite(format!("argument {z}")));
    }
    // poles at ±i(k + ½)π
    let k = (z.im / PI - 0.5).round();
    let distance = (z - Complex64::new(0.0, (k + 0.5) * PI)).norm();
    if distance <= 1e-8 {
        return Err(Error::PoleProximity { distance });
    }
    let z2 = z * z;
    let sum: Complex64 = (0..n_terms)
        .map(|n| {
            let h = n as f64 + 0.5;
            let s = if n % 2 == 0 { 1.0 } else { -1.0 };
            s * h / (h * h * PI * PI + z2)
        })
        .sum();
    Ok(2.0 * PI * sum)
}

/// Inversion result at one time point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IltPoint {
    pub value: f64,
    /// Magnitude of the imaginary part of the complex series, dropped because targets are real.
    pub discarded: f64,
}

/// Inverse transform of `f` at `t > 0`.
pub fn ilt_valsa<F>(f: &F, t: f64, p: &IltParams) -> Result<f64>
where
    F: Fn(Complex64) -> Complex64 + ?Sized,
{
    ilt_valsa_detailed(f, t, p).map(|r| r.value)
}

pub fn ilt_valsa_detailed<F>(f: &F, t: f64, p: &IltParams) -> Result<IltPoint>
where
    F: Fn(Complex64) -> Complex64 + ?Sized,
{
    p.validate()?;
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidInput(format!("time t = {t} must be positive")));
    }
    let total = p.n_sum + p.n_euler;
    let mut im = Vec::with_capacity(total);
    let mut re = Vec::with_capacity(total);
    for n in 0..total {
        let z = Complex64::new(p.a_param, (n as f64 + 0.5) * PI) / t;
        let v = f(z);
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::NonFinite(format!("F({z}) = {v}")));
        }
        im.push(v.im);
        re.push(v.re);
    }
    let scale = p.a_param.exp() / t;
    Ok(IltPoint {
        value: -scale * euler_accelerate(&im, p.n_euler)?,
        discarded: (scale * euler_accelerate(&re, p.n_euler)?).abs(),
    })
}

/// [`ilt_valsa`] over a strictly increasing grid of positive times.
pub fn ilt_on_grid<F>(f: &F, ts: &[f64], p: &IltParams) -> Result<TimeSignal>
where
    F: Fn(Complex64) -> Complex64 + Sync + ?Sized,
{
    let values = ts
        .par_iter()
        .map(|&t| ilt_valsa(f, t, p))
        .collect::<Result<Vec<f64>>>()?;
    TimeSignal::new(ts.to_vec(), values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    // (1/2) Σ_{n=1}^{N} (-Δ/2)^{n-1} y_1 by explicit forward differences.
    fn euler_by_differences(y: &[f64]) -> f64 {
        let mut diffs = y.to_vec();
        let mut total = 0.0;
        let mut factor = 0.5;
        for _ in 0..y.len() {
            total += factor * diffs[0];
            diffs = diffs.windows(2).map(|w| w[1] - w[0]).collect();
            factor *= -0.5;
        }
        total
    }

    #[test]
    fn weights_match_forward_difference_form() {
        for n in 1..=14 {
            let y: Vec<f64> = (0..n).map(|k| 1.0 / (1.0 + k as f64).powf(1.3)).collect();
            let direct = euler_accelerate(&y, n).unwrap();
            assert!((direct - euler_by_differences(&y)).abs() < 1e-14, "N={n}");
        }
    }

    #[test]
    fn single_term_by_hand() {
        // E_1 = 1, weight 1/2
        assert_eq!(euler_weights(1), vec![0.5]);
        assert_eq!(euler_accelerate(&[1.0], 1).unwrap(), 0.5);
        // N = 2: E_2 = 1, E_1 = 1 + C(2,1) = 3
        assert_eq!(euler_weights(2), vec![0.75, 0.25]);
    }

    #[test]
    fn alternating_geometric() {
        let y: Vec<f64> = (0..20).map(|n| 0.5f64.powi(n)).collect();
        let s = euler_accelerate(&y, 10).unwrap();
        // the transformed tail of a geometric series leaves (2/3)·2^-10·4^-10
        let predicted = 2.0 / 3.0 * 0.5f64.powi(10) * 0.25f64.powi(10);
        assert!((s - 2.0 / 3.0 + predicted).abs() < 1e-15);
        assert!((s - 2.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn leibniz_series() {
        let y: Vec<f64> = (1..=32).map(|n| 1.0 / n as f64).collect();
        let s = euler_accelerate(&y, 12).unwrap();
        assert!((s - 2f64.ln()).abs() < 1e-8);
    }

    #[test]
    fn cosh_series_accuracy() {
        assert!((cosh_inv_series(c(0.0, 0.0), 200_000).unwrap().re - 1.0).abs() < 1e-5);
        let err = |terms| {
            (0..=300)
                .map(|i| {
                    let x = 3.0 * i as f64 / 300.0;
                    (cosh_inv_series(c(x, 0.0), terms).unwrap().re - 1.0 / x.cosh()).abs()
                })
                .fold(0.0, f64::max)
        };
        assert!(err(10) <= 0.05);
        // the truncation error decays like 1/(π(N + ½)), so doubling N gives a ratio just above ½
        let mut prev = err(10);
        for terms in [20, 40, 80, 160] {
            let e = err(terms);
            let ratio = e / prev;
            assert!(ratio <= 0.5 + 1.0 / (8.0 * terms as f64), "N={terms}: {ratio}");
            assert!(ratio > 0.5);
            prev = e;
        }
        assert!(cosh_inv_series(c(0.0, PI / 2.0), 10).is_err());
        assert!(cosh_inv_series(c(0.0, -1.5 * PI), 10).is_err());
    }

    #[test]
    fn closed_form_pairs() {
        let p = IltParams::default();
        // For f ≡ 1 the kernel bias sums to exactly 1/(1 + e^{-2a}) - 1.
        let v = ilt_valsa(&|z: Complex64| 1.0 / z, 1.0, &p).unwrap();
        assert!((v - 1.0 / (1.0 + (-12.0f64).exp())).abs() < 1e-12);
        let wide = IltParams { a_param: 8.0, ..p };
        assert!((ilt_valsa(&|z: Complex64| 1.0 / z, 1.0, &wide).unwrap() - 1.0).abs() < 1e-6);
        for t in [0.5, 1.0, 2.0] {
            let v = ilt_valsa(&|z: Complex64| 1.0 / (z + 1.0), t, &p).unwrap();
            assert!((v - (-t).exp()).abs() < 1e-5);
        }
        let v = ilt_valsa(&|z: Complex64| 1.0 / (z * z + 1.0), PI / 2.0, &p).unwrap();
        assert!((v - 1.0).abs() < 1e-4);
    }

    #[test]
    fn rejects_bad_time_and_params() {
        let p = IltParams::default();
        assert!(ilt_valsa(&|z: Complex64| 1.0 / z, 0.0, &p).is_err());
        assert!(ilt_valsa(&|z: Complex64| 1.0 / z, 1.0, &IltParams { a_param: -1.0, ..p }).is_err());
        assert!(ilt_valsa(&|_z: Complex64| c(f64::NAN, 0.0), 1.0, &p).is_err());
    }

    #[test]
    fn bias_tracks_a_param() {
        let f = |z: Complex64| 1.0 / (z + 1.0);
        for t in [0.5, 1.0, 2.0] {
            let lo = ilt_valsa(&f, t, &IltParams { a_param: 4.0, ..Default::default() }).unwrap();
            let hi = ilt_valsa(&f, t, &IltParams { a_param: 8.0, ..Default::default() }).unwrap();
            // leading bias -e^{-2a} f(3t), |f| <= 1
            assert!((lo - hi).abs() <= (-8.0f64).exp());
        }
    }
}
