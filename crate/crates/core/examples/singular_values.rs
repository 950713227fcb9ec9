//! Decay of the smallest singular value of the transform matrix with partition size.

use laplaceforge::partitions::PartitionScheme;
use laplaceforge::rmt_lab::{fit_gamma, singval_sweep, ZSampler};

fn main() -> laplaceforge::Result<()> {
    let samplers = [("disk", ZSampler::default()), ("band", ZSampler::Band { re_max: 1.0, im_max: 400.0 })];
    for (name, sampler) in samplers {
        let sweep = singval_sweep(&[8, 16, 32, 64], 1.2, PartitionScheme::SegmentsLeft, &sampler, 20, 5)?;
        println!("{name} sampler:");
        for r in &sweep.rows {
            println!("  n = {:>3} ({} rows): mean σ_min {:.3e} ± {:.1e}", r.n, r.n_prime, r.mean_sigma_min, r.std);
        }
        match fit_gamma(&sweep) {
            Ok(fit) => println!("  γ = {:.3}, R² = {:.3}", fit.gamma, fit.r_squared),
            Err(e) => println!("  no fit: {e}"),
        }
    }
    Ok(())
}
