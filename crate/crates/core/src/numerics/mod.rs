//! Complex linear algebra, special functions, quadrature and sample statistics.

mod matrix;
pub mod quad;
pub mod special;
pub mod stats;
mod svd;

pub use matrix::{real_least_squares, vector_norm, ComplexMatrix};
pub use num_complex::Complex64;
pub use special::{bessel_i0, bessel_j0, bessel_j0_zeros, binomial, eval_poly, factorial};
pub use svd::{default_rcond, pseudo_inverse_solve, svd, LstsqSolution, SvdResult, MAX_SWEEPS};

/// Complex scalar used throughout the crate.
pub type ComplexVal = Complex64;

pub fn is_finite_c(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}
