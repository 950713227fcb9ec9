//! Closed-form SVD of the first-difference matrix and the product bound on σ_min.

use laplaceforge::numerics::svd;
use laplaceforge::rmt_lab::{composite_bound_check, diff_matrix_svd, random_gaussian_matrix};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

fn main() -> laplaceforge::Result<()> {
    for n in [3, 6, 12] {
        let d = diff_matrix_svd(n)?;
        let numeric = svd(&d.d)?;
        let gap = d
            .factors
            .singular_values
            .iter()
            .zip(&numeric.singular_values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        println!(
            "n = {n:>2}: σ = [{:.4} .. {:.4}], reconstruction error {:.1e}, gap to Jacobi SVD {:.1e}",
            d.factors.sigma_max(),
            d.factors.sigma_min(),
            d.reconstruction_error(),
            gap
        );
    }
    let mut rng = ChaCha12Rng::seed_from_u64(9);
    for n in [4, 8, 16] {
        let c = random_gaussian_matrix(n, n, &mut rng);
        let b = composite_bound_check(&c, n)?;
        println!("n = {n:>2}: σ_min(CD) = {:.3e} >= {:.3e}: {}", b.lhs, b.rhs, b.holds);
    }
    Ok(())
}
