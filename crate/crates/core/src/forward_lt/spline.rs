use super::{PiecewisePoly, TimeSignal};
use crate::error::{Error, Result};
use crate::numerics::{binomial, real_least_squares};

/// Width of the sliding least-squares window used by the quartic fitter.
pub const QUARTIC_WINDOW: usize = 7;

/// A fitted spline and its largest deviation from the input samples.
#[derive(Debug, Clone)]
pub struct PolyFit {
    pub poly: PiecewisePoly,
    pub max_residual: f64,
}

/// Fits a natural cubic spline (`degree = 3`) or continuous local quartics (`degree = 4`).
///
/// The quartic on `[t_k, t_{k+1}]` interpolates both end samples and takes its
/// remaining three coefficients from a least-squares fit over a window of
/// [`QUARTIC_WINDOW`] neighbouring samples.
pub fn fit_piecewise_poly(sig: &TimeSignal, degree: usize) -> Result<PolyFit> {
    if degree != 3 && degree != 4 {
        return Err(Error::InvalidInput(format!("fit degree must be 3 or 4, got {degree}")));
    }
    if sig.len() < degree + 1 {
        return Err(Error::InvalidInput(format!(
            "degree {degree} needs at least {} samples, got {}",
            degree + 1,
            sig.len()
        )));
    }
    if sig.times()[0] < 0.0 {
        return Err(Error::InvalidInput("sample times must be non-negative".into()));
    }
    let local = if degree == 3 {
        natural_cubic(sig.times(), sig.values())
    } else {
        local_quartics(sig.times(), sig.values())?
    };
    let t = sig.times();
    let coeffs = local
        .iter()
        .enumerate()
        .map(|(k, d)| local_to_global(d, t[k]))
        .collect();
    let poly = PiecewisePoly::new(t.to_vec(), coeffs)?;
    let max_residual = t
        .iter()
        .zip(sig.values())
        .map(|(&ti, &yi)| (poly.eval(ti) - yi).abs())
        .fold(0.0, f64::max);
    Ok(PolyFit { poly, max_residual })
}

/// Coefficients in `t` of `Σ_j d_j (t - a)^j`.
fn local_to_global(d: &[f64], a: f64) -> Vec<f64> {
    (0..d.len())
        .map(|n| {
            (n..d.len())
                .map(|j| d[j] * binomial(j as u64, n as u64) * (-a).powi((j - n) as i32))
                .sum()
        })
        .collect()
}

// Local coefficients in s = t - t_k for each interval.
fn natural_cubic(t: &[f64], y: &[f64]) -> Vec<Vec<f64>> {
    let n = t.len();
    let h: Vec<f64> = t.windows(2).map(|w| w[1] - w[0]).collect();
    let mut m = vec![0.0; n];
    if n > 2 {
        // Thomas algorithm on the interior second derivatives.
        let size = n - 2;
        let mut diag = vec![0.0; size];
        let mut rhs = vec![0.0; size];
        for i in 0..size {
            diag[i] = 2.0 * (h[i] + h[i + 1]);
            rhs[i] = 6.0 * ((y[i + 2] - y[i + 1]) / h[i + 1] - (y[i + 1] - y[i]) / h[i]);
        }
        for i in 1..size {
            let w = h[i] / diag[i - 1];
            diag[i] -= w * h[i];
            rhs[i] -= w * rhs[i - 1];
        }
        m[size] = rhs[size - 1] / diag[size - 1];
        for i in (0..size - 1).rev() {
            m[i + 1] = (rhs[i] - h[i + 1] * m[i + 2]) / diag[i];
        }
    }
    (0..n - 1)
        .map(|k| {
            let hk = h[k];
            let slope = (y[k + 1] - y[k]) / hk - hk * (2.0 * m[k] + m[k + 1]) / 6.0;
            vec![y[k], slope, 0.5 * m[k], (m[k + 1] - m[k]) / (6.0 * hk)]
        })
        .collect()
}

fn local_quartics(t: &[f64], y: &[f64]) -> Result<Vec<Vec<f64>>> {
    let n = t.len();
    let width = QUARTIC_WINDOW.min(n);
    (0..n - 1)
        .map(|k| {
            let h = t[k + 1] - t[k];
            let delta = y[k + 1] - y[k];
            let start = k.saturating_sub(3).min(n - width);
            let mut rows = Vec::new();
            let mut rhs = Vec::new();
            for i in start..start + width {
                if i == k || i == k + 1 {
                    continue;
                }
                let s = (t[i] - t[k]) / h;
                let base = s * (s - 1.0);
                rows.extend_from_slice(&[base, base * s, base * s * s]);
                rhs.push(y[i] - y[k] - delta * s);
            }
            let c = real_least_squares(rhs.len(), 3, &rows, &rhs)?;
            // p(σ) = y_k + Δσ + σ(σ-1)(c0 + c1σ + c2σ²), σ = s/h
            let e = [y[k], delta - c[0], c[0] - c[1], c[1] - c[2], c[2]];
            Ok(e.iter().enumerate().map(|(j, ej)| ej / h.powi(j as i32)).collect())
        })
        .collect()
}
