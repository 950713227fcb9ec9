//! Forward transform of a discontinuous test function, then back again.

use laplaceforge::analytic_ilt::{ilt_valsa, IltParams};
use laplaceforge::forward_lt::{fit_piecewise_poly, lt_piecewise_poly, DOMAIN_END};
use laplaceforge::surface::{composite, TestFunctionSpec};
use laplaceforge::Complex64;

fn main() -> laplaceforge::Result<()> {
    let sig = TestFunctionSpec::Composite { noise: 0.0 }.signal(200, 0)?;
    let poly = fit_piecewise_poly(&sig, 4)?.poly;
    let f = |z: Complex64| lt_piecewise_poly(&poly, z).unwrap_or(Complex64::new(f64::NAN, 0.0));
    for n_sum in [50, 200, 1000] {
        let p = IltParams { n_sum, ..IltParams::default() };
        let ts: Vec<f64> = (0..50).map(|k| 0.1 + (DOMAIN_END - 0.2) * k as f64 / 49.0).collect();
        let mut sq = 0.0;
        for &t in &ts {
            sq += (ilt_valsa(&f, t, &p)? - composite(t)).powi(2);
        }
        let tail = ilt_valsa(&f, DOMAIN_END + 1.0, &p)?;
        println!("n_sum {n_sum:>4}: RMSE {:.3e}, f(2π+1) = {tail:.2e}", (sq / ts.len() as f64).sqrt());
    }
    Ok(())
}
