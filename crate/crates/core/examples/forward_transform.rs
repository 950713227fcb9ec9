//! Spline-fit a sampled sine and compare its transform with the closed form.

use laplaceforge::forward_lt::{fit_piecewise_poly, forward_error_bound, lt_piecewise_poly, lt_sin_window, TimeSignal, DOMAIN_END};
use laplaceforge::Complex64;

fn main() -> laplaceforge::Result<()> {
    let sig = TimeSignal::sample(f64::sin, 0.0, DOMAIN_END, 200)?;
    for degree in [3, 4] {
        let fit = fit_piecewise_poly(&sig, degree)?;
        println!("degree {degree}: {} pieces, max sample residual {:.2e}", fit.poly.knots().len() - 1, fit.max_residual);
        for y in [0.0, 2.5, 10.0] {
            let z = Complex64::new(0.5, y);
            let got = lt_piecewise_poly(&fit.poly, z)?;
            let exact = lt_sin_window(1.0, z)?;
            println!("  z = {z:>9}: F = {got:.10}, error {:.2e}", (got - exact).norm());
        }
    }
    println!("bound for a 1e-6 sup error at Re z = 0.5: {:.2e}", forward_error_bound(1e-6, 0.0, DOMAIN_END, 0.5)?);
    Ok(())
}
