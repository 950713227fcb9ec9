//! Invert closed-form transforms with the cosh-kernel series.

use laplaceforge::analytic_ilt::{ilt_valsa_detailed, IltParams};
use laplaceforge::Complex64;

type Pair = (&'static str, fn(Complex64) -> Complex64, fn(f64) -> f64);

fn main() -> laplaceforge::Result<()> {
    let p = IltParams::default();
    let pairs: [Pair; 3] = [
        ("1/z", |z| 1.0 / z, |_| 1.0),
        ("1/(z+1)", |z| 1.0 / (z + 1.0), |t| (-t).exp()),
        ("1/(z^2+1)", |z| 1.0 / (z * z + 1.0), f64::sin),
    ];
    for (name, f, exact) in pairs {
        let mut worst: f64 = 0.0;
        for k in 1..=40 {
            let t = 0.25 * k as f64;
            let r = ilt_valsa_detailed(&f, t, &p)?;
            worst = worst.max((r.value - exact(t)).abs());
        }
        println!("{name:>10}: max error on (0, 10] = {worst:.2e}");
    }
    Ok(())
}
