//! Random partitions: the Beta law of normalized exponential breakpoints and the
//! dependence between breakpoints of normalized uniform ones.

use laplaceforge::partitions::{
    dependence_check, exp_order_stats_check, gen_partition, irwin_hall_ratio_cdf, DependenceQuery, PartitionScheme,
};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

fn main() -> laplaceforge::Result<()> {
    let mut rng = ChaCha12Rng::seed_from_u64(3);
    for scheme in PartitionScheme::ALL {
        let p = gen_partition(scheme, 5, &mut rng)?;
        let bp: Vec<String> = p.breakpoints().iter().map(|b| format!("{b:.3}")).collect();
        println!("{:>22}: [{}]", scheme.name(), bp.join(", "));
    }
    for row in exp_order_stats_check(5, 10_000, &mut rng)? {
        println!("Beta({}, {}) KS = {:.4}, p = {:.3}", row.k, 6 - row.k, row.ks, row.p_value);
    }
    println!("P(S1/S3 <= 0.4) = {:.6}", irwin_hall_ratio_cdf(1, 2, 0.4)?);
    for control in [false, true] {
        let q = DependenceQuery { i: 1, k: 2, u: 0.3, eps: 0.02, independent_control: control };
        let r = dependence_check(PartitionScheme::NormalizedUniform, 4, q, 200_000, &mut rng)?;
        println!("control = {control}: gap {:.3} ± {:.3} ({} draws in band)", r.gap, r.std_error, r.band_count);
    }
    Ok(())
}
