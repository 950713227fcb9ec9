use num_complex::Complex64;

const MAX_DEPTH: u32 = 48;
// Levels refined unconditionally, so integrands vanishing on the coarse nodes are not missed.
const MIN_DEPTH: u32 = 6;

/// Adaptive Simpson quadrature of a complex integrand with absolute tolerance `tol`.
pub fn integrate_complex(f: impl Fn(f64) -> Complex64, a: f64, b: f64, tol: f64) -> Complex64 {
    if a == b {
        return Complex64::new(0.0, 0.0);
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(&f, a, b, fa, fm, fb, whole, tol, MAX_DEPTH)
}

/// Real-valued wrapper around [`integrate_complex`].
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    integrate_complex(|x| Complex64::new(f(x), 0.0), a, b, tol).re
}

/// Integrates over consecutive sub-intervals split at `breaks` (must be increasing).
pub fn integrate_piecewise(f: impl Fn(f64) -> f64, breaks: &[f64], tol: f64) -> f64 {
    let share = tol / breaks.len().max(2) as f64;
    breaks
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| integrate(&f, w[0], w[1], share))
        .sum()
}

#[allow(clippy::too_many_arguments)]
fn step(
    f: &impl Fn(f64) -> Complex64,
    a: f64,
    b: f64,
    fa: Complex64,
    fm: Complex64,
    fb: Complex64,
    whole: Complex64,
    tol: f64,
    depth: u32,
) -> Complex64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let diff = left + right - whole;
    let forced = MAX_DEPTH - depth < MIN_DEPTH;
    if depth == 0 || (!forced && diff.norm() <= 15.0 * tol) || m <= a || m >= b {
        return left + right + diff / 15.0;
    }
    step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomials_and_exponentials() {
        assert!((integrate(|x| x * x, 0.0, 3.0, 1e-12) - 9.0).abs() < 1e-12);
        assert!((integrate(f64::exp, 0.0, 1.0, 1e-12) - (1f64.exp() - 1.0)).abs() < 1e-12);
        assert!((integrate(|x| x.sin(), 0.0, PI, 1e-12) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn complex_oscillatory() {
        // ∫_0^{2π} e^{iφ} e^{-iφ} dφ = 2π
        let v = integrate_complex(|p| Complex64::new(0.0, p).exp() * Complex64::new(0.0, -p).exp(), 0.0, 2.0 * PI, 1e-12);
        assert!((v - Complex64::new(2.0 * PI, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn integrand_vanishing_on_coarse_nodes() {
        let v = integrate(|x| (2.0 * x).sin().powi(2), 0.0, 2.0 * PI, 1e-12);
        assert!((v - PI).abs() < 1e-11);
    }

    #[test]
    fn piecewise_handles_kinks() {
        let v = integrate_piecewise(|x: f64| (x - 1.0).abs(), &[0.0, 1.0, 3.0], 1e-12);
        assert!((v - 2.5).abs() < 1e-12);
    }
}
