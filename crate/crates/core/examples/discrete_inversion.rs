//! Randomized quantized inversion of a sampled transform of sin(3t).

use laplaceforge::discrete_ilt::{curve_rmse, randomized_ilt, Aggregation, IltConfig};
use laplaceforge::rmt_lab::ZSampler;
use laplaceforge::surface::{sample_surface, TestFunctionSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

fn main() -> laplaceforge::Result<()> {
    let zs = ZSampler::Disk { r_min: 0.5, r_max: 3.0, re_min: 0.5 }.sample(400, &mut ChaCha12Rng::seed_from_u64(1))?;
    let set = sample_surface(&TestFunctionSpec::Sin { w: 3.0 }, &zs, 0.0, 1)?;
    let truth = |t: f64| (3.0 * t).sin();
    let cfg = IltConfig { itn: 50, seed: 7, ..IltConfig::for_sample_count(set.len()) };
    println!("n1 = {}, n2 = {}, itn = {}, rcond = {:e}", cfg.n1, cfg.n2, cfg.itn, cfg.rcond);
    let e = randomized_ilt(&set, &cfg)?;
    println!("failed attempts: {}", e.failed_attempts());
    for (name, agg) in [("mean", Aggregation::Mean), ("median", Aggregation::Median), ("weighted", Aggregation::WeightedMean)] {
        let curve = match agg {
            Aggregation::Mean => &e.mean,
            Aggregation::Median => &e.median,
            Aggregation::WeightedMean => &e.weighted_mean,
        };
        println!("{name:>8} RMSE on [0, 5]: {:.4}", curve_rmse(&e.grid, curve, truth, 0.0, 5.0));
    }
    for i in (0..e.grid.len()).step_by(32) {
        println!("t = {:.3}: median {:+.3} [{:+.3}, {:+.3}], truth {:+.3}", e.grid[i], e.median[i], e.q25[i], e.q75[i], truth(e.grid[i]));
    }
    Ok(())
}
