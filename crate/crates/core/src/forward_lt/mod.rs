//! Forward Laplace transform of sampled signals through piecewise polynomials.
//!
//! A signal is fitted by a spline whose pieces are monomials restricted to
//! `[a_k, a_{k+1})`; each windowed monomial has a closed-form transform, so the
//! transform of the fit is exact up to rounding.

mod spline;

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numerics::{binomial, eval_poly, factorial, Complex64};

pub use spline::{fit_piecewise_poly, PolyFit};

/// Right end of the default time domain `[0, 2π]`.
pub const DOMAIN_END: f64 = 2.0 * PI;

/// Frequencies with `|z|` at or below this are treated as zero.
pub const ZERO_FREQ: f64 = 1e-12;

/// Ordered real samples `(t_i, y_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSignal {
    t: Vec<f64>,
    y: Vec<f64>,
}

impl TimeSignal {
    pub fn new(t: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        if t.len() != y.len() {
            return Err(Error::InvalidInput(format!(
                "{} times but {} values",
                t.len(),
                y.len()
            )));
        }
        if t.len() < 2 {
            return Err(Error::InvalidInput("a signal needs at least two samples".into()));
        }
        if t.iter().chain(&y).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("signal sample".into()));
        }
        if let Some(w) = t.windows(2).find(|w| w[1] <= w[0]) {
            return Err(Error::InvalidInput(format!(
                "sample times must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
        Ok(Self { t, y })
    }

    /// `count` uniform samples of `f` on `[a, b]`, endpoints included.
    pub fn sample(f: impl Fn(f64) -> f64, a: f64, b: f64, count: usize) -> Result<Self> {
        if count < 2 || b <= a {
            return Err(Error::InvalidInput(format!(
                "cannot sample {count} points on [{a}, {b}]"
            )));
        }
        let step = (b - a) / (count - 1) as f64;
        let t: Vec<f64> = (0..count)
            .map(|i| if i == count - 1 { b } else { a + i as f64 * step })
            .collect();
        let y = t.iter().map(|&x| f(x)).collect();
        Self::new(t, y)
    }

    pub fn times(&self) -> &[f64] {
        &self.t
    }

    pub fn values(&self) -> &[f64] {
        &self.y
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }
}

/// Piecewise polynomial `Σ_k Σ_n q_{n,k} t^n χ_[a_k, a_{k+1})` in global monomials.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewisePoly {
    knots: Vec<f64>,
    coeffs: Vec<Vec<f64>>,
    degree: usize,
    // coefficients of (t - knots[k])^j, used by the transform
    local: Vec<Vec<f64>>,
}

impl PiecewisePoly {
    /// `coeffs[k][n]` multiplies `t^n` on `[knots[k], knots[k+1])`.
    pub fn new(knots: Vec<f64>, coeffs: Vec<Vec<f64>>) -> Result<Self> {
        if knots.len() < 2 || coeffs.len() != knots.len() - 1 {
            return Err(Error::InvalidInput(format!(
                "{} knots need {} coefficient rows, got {}",
                knots.len(),
                knots.len().saturating_sub(1),
                coeffs.len()
            )));
        }
        if knots.windows(2).any(|w| w[1] <= w[0]) || knots.iter().any(|k| !k.is_finite()) {
            return Err(Error::InvalidInput("knots must be finite and strictly increasing".into()));
        }
        if knots[0] < 0.0 {
            return Err(Error::InvalidInput("knots must be non-negative".into()));
        }
        let degree = coeffs.iter().map(|r| r.len()).max().unwrap_or(1).saturating_sub(1);
        if degree > 4 {
            return Err(Error::InvalidInput(format!("degree {degree} exceeds 4")));
        }
        if coeffs.iter().flatten().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("polynomial coefficient".into()));
        }
        let coeffs: Vec<Vec<f64>> = coeffs
            .into_iter()
            .map(|mut r| {
                r.resize(degree + 1, 0.0);
                r
            })
            .collect();
        let local = coeffs
            .iter()
            .zip(&knots)
            .map(|(row, &a)| {
                (0..=degree)
                    .map(|j| (j..=degree).map(|n| row[n] * binomial(n as u64, j as u64) * a.powi((n - j) as i32)).sum())
                    .collect()
            })
            .collect();
        Ok(Self { knots, coeffs, degree, local })
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn coeffs(&self) -> &[Vec<f64>] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn start(&self) -> f64 {
        self.knots[0]
    }

    pub fn end(&self) -> f64 {
        *self.knots.last().expect("two or more knots")
    }

    /// Index of the piece containing `t`; the right end belongs to the last piece.
    pub fn piece_index(&self, t: f64) -> Option<usize> {
        if !(self.start()..=self.end()).contains(&t) {
            return None;
        }
        let k = self.knots.partition_point(|&a| a <= t);
        Some(k.saturating_sub(1).min(self.coeffs.len() - 1))
    }

    /// Value at `t`; zero outside `[a_0, a_d]`.
    pub fn eval(&self, t: f64) -> f64 {
        match self.piece_index(t) {
            Some(k) => eval_poly(&self.coeffs[k], t),
            None => 0.0,
        }
    }

    /// Piecewise derivative (knot jumps ignored).
    pub fn derivative(&self) -> PiecewisePoly {
        let coeffs = self
            .coeffs
            .iter()
            .map(|row| {
                if row.len() == 1 {
                    vec![0.0]
                } else {
                    row.iter().enumerate().skip(1).map(|(n, q)| n as f64 * q).collect()
                }
            })
            .collect();
        PiecewisePoly::new(self.knots.clone(), coeffs).expect("derivative keeps knots valid")
    }

    pub fn scale_add(&self, alpha: f64, other: &PiecewisePoly, beta: f64) -> Result<PiecewisePoly> {
        if self.knots != other.knots {
            return Err(Error::InvalidInput("piecewise polynomials have different knots".into()));
        }
        let deg = self.degree.max(other.degree);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| {
                (0..=deg)
                    .map(|n| alpha * a.get(n).copied().unwrap_or(0.0) + beta * b.get(n).copied().unwrap_or(0.0))
                    .collect()
            })
            .collect();
        PiecewisePoly::new(self.knots.clone(), coeffs)
    }
}

/// Transform value at one frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LtSample {
    pub z: Complex64,
    pub value: Complex64,
}

fn check_z(z: Complex64) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(format!("frequency {z}")))
    }
}

/// `∫_0^h s^j e^{-zs} ds`, by power series for small `|zh|` and closed form otherwise.
pub fn shifted_integral(j: u32, h: f64, z: Complex64) -> Complex64 {
    let w = z * h;
    let hp = h.powi(j as i32 + 1);
    if w.norm() <= 3.0 {
        let mut sum = Complex64::new(0.0, 0.0);
        let mut term = Complex64::new(1.0, 0.0);
        for m in 0..80u32 {
            let add = term / (j + m + 1) as f64;
            sum += add;
            if add.norm() < 1e-18 * sum.norm() {
                break;
            }
            term *= -w / (m + 1) as f64;
        }
        return hp * sum;
    }
    let mut partial = Complex64::new(0.0, 0.0);
    let mut wp = Complex64::new(1.0, 0.0);
    for i in 0..=j {
        if i > 0 {
            wp *= w / i as f64;
        }
        partial += wp;
    }
    factorial(j) / z.powu(j + 1) * (1.0 - (-w).exp() * partial)
}

/// `G_j(h, z)` for `j = 0..=max_j` (at most 4), sharing the exponential and series terms.
pub fn shifted_integrals(max_j: u32, h: f64, z: Complex64) -> [Complex64; 5] {
    assert!(max_j <= 4, "degree {max_j} exceeds 4");
    let w = z * h;
    let mut out = [Complex64::new(0.0, 0.0); 5];
    if w.norm() <= 3.0 {
        let mut term = Complex64::new(1.0, 0.0);
        for m in 0..80u32 {
            for (j, o) in out.iter_mut().enumerate().take(max_j as usize + 1) {
                *o += term / (j as u32 + m + 1) as f64;
            }
            // out[max_j] carries the smallest weights 1/(j + m + 1)
            if term.norm_sqr() < 1e-34 * out[max_j as usize].norm_sqr() * ((m + 1) * (m + 1)) as f64 {
                break;
            }
            term *= -w / (m + 1) as f64;
        }
        let mut hp = h;
        for o in out.iter_mut().take(max_j as usize + 1) {
            *o *= hp;
            hp *= h;
        }
        return out;
    }
    let e = (-w).exp();
    let mut partial = Complex64::new(0.0, 0.0);
    let mut wp = Complex64::new(1.0, 0.0);
    let mut scale = 1.0 / z;
    for j in 0..=max_j {
        if j > 0 {
            wp *= w / j as f64;
            scale *= j as f64 / z;
        }
        partial += wp;
        out[j as usize] = scale * (1.0 - e * partial);
    }
    out
}

/// `A_{a,n}(z) = ∫_a^∞ t^n e^{-zt} dt = e^{-az} Σ_k C(n,k) a^{n-k} k!/z^{k+1}`.
pub fn lt_shifted_monomial(n: u32, a: f64, z: Complex64) -> Result<Complex64> {
    check_z(z)?;
    if n > 4 {
        return Err(Error::InvalidInput(format!("degree {n} exceeds 4")));
    }
    if !(a >= 0.0 && a.is_finite()) {
        return Err(Error::InvalidInput(format!("shift a = {a} must be finite and >= 0")));
    }
    if z.norm() <= ZERO_FREQ {
        return Err(Error::NearZeroFrequency(z.norm()));
    }
    let sum: Complex64 = (0..=n)
        .map(|k| binomial(n as u64, k as u64) * a.powi((n - k) as i32) * factorial(k) / z.powu(k + 1))
        .sum();
    Ok((-a * z).exp() * sum)
}

/// `∫_a^b t^n e^{-zt} dt`, i.e. `A_{a,n}(z) - A_{b,n}(z)`, evaluated without cancellation.
pub fn lt_power_window(n: u32, a: f64, b: f64, z: Complex64) -> Result<Complex64> {
    check_z(z)?;
    if n > 4 {
        return Err(Error::InvalidInput(format!("degree {n} exceeds 4")));
    }
    if !(a >= 0.0 && a < b && b.is_finite()) {
        return Err(Error::InvalidWindow { a, b });
    }
    if z.norm() <= ZERO_FREQ {
        let p = (n + 1) as i32;
        return Ok(Complex64::new((b.powi(p) - a.powi(p)) / p as f64, 0.0));
    }
    let h = b - a;
    let sum: Complex64 = (0..=n)
        .map(|j| binomial(n as u64, j as u64) * a.powi((n - j) as i32) * shifted_integral(j, h, z))
        .sum();
    Ok((-a * z).exp() * sum)
}

/// Exact transform of a piecewise polynomial.
///
/// Each piece is re-expanded about its left knot, `Σ_j c_j (t - a)^j`, and
/// integrated against one shared set of [`shifted_integrals`].
pub fn lt_piecewise_poly(p: &PiecewisePoly, z: Complex64) -> Result<Complex64> {
    check_z(z)?;
    let deg = p.degree;
    let mut total = Complex64::new(0.0, 0.0);
    for (k, c) in p.local.iter().enumerate() {
        let (a, b) = (p.knots[k], p.knots[k + 1]);
        let g = shifted_integrals(deg as u32, b - a, z);
        let piece: Complex64 = c.iter().zip(&g).map(|(c, g)| c * g).sum();
        total += (-a * z).exp() * piece;
    }
    Ok(total)
}

/// Fits `sig` once and evaluates the transform of the fit at every `z`.
pub fn lt_signal(sig: &TimeSignal, zs: &[Complex64], degree: usize) -> Result<Vec<LtSample>> {
    let fit = fit_piecewise_poly(sig, degree)?;
    lt_poly_many(&fit.poly, zs)
}

pub fn lt_poly_many(p: &PiecewisePoly, zs: &[Complex64]) -> Result<Vec<LtSample>> {
    zs.par_iter()
        .map(|&z| Ok(LtSample { z, value: lt_piecewise_poly(p, z)? }))
        .collect()
}

fn trig_guard(w: f64, z: Complex64) -> Result<Complex64> {
    check_z(z)?;
    if !(w.is_finite() && w > 0.0) {
        return Err(Error::InvalidInput(format!("frequency w = {w} must be positive")));
    }
    let d = z * z + w * w;
    if d.norm() <= 1e-12 {
        return Err(Error::PoleProximity { distance: d.norm() });
    }
    Ok(d)
}

/// `∫_0^{2π} sin(wt) e^{-zt} dt`.
pub fn lt_sin_window(w: f64, z: Complex64) -> Result<Complex64> {
    let d = trig_guard(w, z)?;
    let (s, c) = (w * DOMAIN_END).sin_cos();
    let e = (-DOMAIN_END * z).exp();
    Ok((w - e * (z * s + w * c)) / d)
}

/// `∫_0^{2π} cos(wt) e^{-zt} dt`.
pub fn lt_cos_window(w: f64, z: Complex64) -> Result<Complex64> {
    let d = trig_guard(w, z)?;
    let (s, c) = (w * DOMAIN_END).sin_cos();
    let e = (-DOMAIN_END * z).exp();
    Ok((z - e * (z * c - w * s)) / d)
}

/// Both sides of the Dirichlet-series / step-function correspondence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepwiseLt {
    /// `f(z + z0) / z` with `f(s) = Σ a_n e^{-λ_n s}`.
    pub dirichlet: Complex64,
    /// Transform of `g(t) = Σ_{λ_n ≤ t} a_n e^{-λ_n z0}` integrated piece by piece.
    pub stepwise: Complex64,
    pub discrepancy: f64,
}

/// Upper bound on the number of jumps accepted by [`lt_stepwise`].
pub const MAX_JUMPS: usize = 1_000_000;

/// Evaluates both sides of `f(z + z0)/z = L[H(t - λ_1) g(t)](z)` for jumps `(λ_n, a_n)`.
pub fn lt_stepwise(jumps: &[(f64, f64)], z: Complex64, z0: Complex64) -> Result<StepwiseLt> {
    check_z(z)?;
    check_z(z0)?;
    if z.re <= 0.0 {
        return Err(Error::InvalidInput(format!("Re z = {} must be positive", z.re)));
    }
    if jumps.len() > MAX_JUMPS {
        return Err(Error::InvalidInput(format!("more than {MAX_JUMPS} jumps")));
    }
    if jumps.iter().any(|(l, a)| !(l.is_finite() && a.is_finite()) || *l < 0.0) {
        return Err(Error::InvalidInput("jump positions must be finite and >= 0".into()));
    }
    if jumps.windows(2).any(|w| w[1].0 <= w[0].0) {
        return Err(Error::InvalidInput("jump positions must be strictly increasing".into()));
    }
    let zero = Complex64::new(0.0, 0.0);
    if jumps.is_empty() {
        return Ok(StepwiseLt { dirichlet: zero, stepwise: zero, discrepancy: 0.0 });
    }
    let dirichlet: Complex64 =
        jumps.iter().map(|&(l, a)| a * (-l * (z + z0)).exp()).sum::<Complex64>() / z;

    let mut level = zero;
    let mut stepwise = zero;
    for (k, &(l, a)) in jumps.iter().enumerate() {
        level += a * (-l * z0).exp();
        let tail = match jumps.get(k + 1) {
            Some(&(next, _)) => (-l * z).exp() * shifted_integral(0, next - l, z),
            None => (-l * z).exp() / z,
        };
        stepwise += level * tail;
    }
    Ok(StepwiseLt {
        dirichlet,
        stepwise,
        discrepancy: (dirichlet - stepwise).norm(),
    })
}

/// `sup|fit - f| · (e^{-Re z a} - e^{-Re z b}) / Re z`, with the `Re z → 0` limit.
pub fn forward_error_bound(sup_diff: f64, a: f64, b: f64, re_z: f64) -> Result<f64> {
    if !(a < b) {
        return Err(Error::InvalidWindow { a, b });
    }
    if sup_diff < 0.0 {
        return Err(Error::InvalidInput("sup_diff must be non-negative".into()));
    }
    if re_z.abs() <= ZERO_FREQ {
        return Ok(sup_diff * (b - a));
    }
    // e^{-ra} - e^{-rb} = e^{-ra} (1 - e^{-r(b-a)})
    Ok(sup_diff * (-re_z * a).exp() * -(-re_z * (b - a)).exp_m1() / re_z)
}
