use num_complex::Complex64;

use super::matrix::{vector_norm, ComplexMatrix};
use crate::error::{Error, Result};

/// Sweep cap for the one-sided Jacobi iteration.
pub const MAX_SWEEPS: usize = 60;

/// Thin singular value decomposition `A = U diag(σ) V*`.
///
/// For an `m x n` input `U` is `m x k`, `V` is `n x k` with `k = min(m, n)`.
#[derive(Debug, Clone)]
pub struct SvdResult {
    pub singular_values: Vec<f64>,
    pub u: ComplexMatrix,
    pub v: ComplexMatrix,
}

impl SvdResult {
    pub fn sigma_max(&self) -> f64 {
        self.singular_values[0]
    }

    pub fn sigma_min(&self) -> f64 {
        *self.singular_values.last().expect("non-empty")
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        let (m, n, k) = (self.u.rows(), self.v.rows(), self.singular_values.len());
        ComplexMatrix::from_fn(m, n, |i, j| {
            (0..k)
                .map(|l| self.u[(i, l)] * self.singular_values[l] * self.v[(j, l)].conj())
                .sum()
        })
    }
}

/// One-sided (Hestenes) Jacobi SVD of a complex matrix.
pub fn svd(a: &ComplexMatrix) -> Result<SvdResult> {
    if !a.is_finite() {
        return Err(Error::NonFinite("svd input".into()));
    }
    if a.rows() < a.cols() {
        let t = svd(&a.adjoint())?;
        return Ok(SvdResult {
            singular_values: t.singular_values,
            u: t.v,
            v: t.u,
        });
    }
    let (m, n) = (a.rows(), a.cols());
    let mut w: Vec<Vec<Complex64>> = (0..n).map(|j| a.column(j)).collect();
    let mut v: Vec<Vec<Complex64>> = (0..n)
        .map(|j| {
            let mut e = vec![Complex64::new(0.0, 0.0); n];
            e[j] = Complex64::new(1.0, 0.0);
            e
        })
        .collect();
    let tol = f64::EPSILON * (m as f64).sqrt();

    let mut converged = n == 1;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let (alpha, beta, gamma) = gram(&w[p], &w[q]);
                let g = gamma.norm();
                if alpha == 0.0 || beta == 0.0 || g <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = if zeta == 0.0 {
                    1.0
                } else {
                    zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let e = gamma / g;
                rotate(&mut w, p, q, c, s, e);
                rotate(&mut v, p, q, c, s, e);
            }
        }
        converged = !rotated;
    }
    if !converged {
        return Err(Error::SvdNonConvergence { sweeps: MAX_SWEEPS });
    }

    let mut sigma: Vec<f64> = w.iter().map(|col| vector_norm(col)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| sigma[j].total_cmp(&sigma[i]));
    sigma = order.iter().map(|&i| sigma[i]).collect();

    let mut u_cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for (rank, &i) in order.iter().enumerate() {
        if sigma[rank] > 0.0 {
            u_cols.push(w[i].iter().map(|z| z / sigma[rank]).collect());
        } else {
            u_cols.push(complete_basis(&u_cols, m));
        }
    }
    let u = ComplexMatrix::from_fn(m, n, |i, j| u_cols[j][i]);
    let v = ComplexMatrix::from_fn(n, n, |i, j| v[order[j]][i]);
    Ok(SvdResult {
        singular_values: sigma,
        u,
        v,
    })
}

fn gram(x: &[Complex64], y: &[Complex64]) -> (f64, f64, Complex64) {
    let mut alpha = 0.0;
    let mut beta = 0.0;
    let mut gamma = Complex64::new(0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        alpha += a.norm_sqr();
        beta += b.norm_sqr();
        gamma += a.conj() * b;
    }
    (alpha, beta, gamma)
}

fn rotate(cols: &mut [Vec<Complex64>], p: usize, q: usize, c: f64, s: f64, e: Complex64) {
    let (left, right) = cols.split_at_mut(q);
    let (cp, cq) = (&mut left[p], &mut right[0]);
    let ec = e.conj();
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let (xp, xq) = (*x, *y);
        *x = xp * c - ec * xq * s;
        *y = e * xp * s + xq * c;
    }
}

/// Unit vector orthogonal to `basis`, via Gram-Schmidt on the canonical vectors.
fn complete_basis(basis: &[Vec<Complex64>], m: usize) -> Vec<Complex64> {
    let mut best = vec![Complex64::new(0.0, 0.0); m];
    let mut best_norm = -1.0;
    for k in 0..m {
        let mut x = vec![Complex64::new(0.0, 0.0); m];
        x[k] = Complex64::new(1.0, 0.0);
        for _ in 0..2 {
            for b in basis {
                let proj: Complex64 = b.iter().zip(&x).map(|(bi, xi)| bi.conj() * xi).sum();
                for (xi, bi) in x.iter_mut().zip(b) {
                    *xi -= proj * bi;
                }
            }
        }
        let nrm = vector_norm(&x);
        if nrm > best_norm {
            best_norm = nrm;
            best = x.iter().map(|z| z / nrm).collect();
        }
        if nrm > 0.5 {
            break;
        }
    }
    best
}

/// Truncated pseudoinverse solution.
#[derive(Debug, Clone)]
pub struct LstsqSolution {
    pub x: Vec<Complex64>,
    /// Number of retained singular directions.
    pub rank: usize,
    /// True when at least one direction was discarded.
    pub rank_deficient: bool,
    pub singular_values: Vec<f64>,
}

/// `max(rows, cols) * eps`.
pub fn default_rcond(rows: usize, cols: usize) -> f64 {
    rows.max(cols) as f64 * f64::EPSILON
}

/// Solves `A x ≈ b` with directions `σ_k <= rcond * σ_1` discarded.
pub fn pseudo_inverse_solve(a: &ComplexMatrix, b: &[Complex64], rcond: f64) -> Result<LstsqSolution> {
    if b.len() != a.rows() {
        return Err(Error::InvalidInput(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            a.rows()
        )));
    }
    if !(0.0..1.0).contains(&rcond) {
        return Err(Error::InvalidInput(format!("rcond must lie in [0, 1), got {rcond}")));
    }
    if b.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite("right-hand side".into()));
    }
    let dec = svd(a)?;
    let n = a.cols();
    let cutoff = rcond * dec.sigma_max();
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    let mut rank = 0;
    for (k, &s) in dec.singular_values.iter().enumerate() {
        if s <= cutoff || s == 0.0 {
            continue;
        }
        rank += 1;
        let coef: Complex64 = (0..a.rows()).map(|i| dec.u[(i, k)].conj() * b[i]).sum::<Complex64>() / s;
        for (j, xj) in x.iter_mut().enumerate() {
            *xj += dec.v[(j, k)] * coef;
        }
    }
    Ok(LstsqSolution {
        x,
        rank,
        rank_deficient: rank < n,
        singular_values: dec.singular_values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn random_matrix(rows: usize, cols: usize, seed: u64) -> ComplexMatrix {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        ComplexMatrix::from_fn(rows, cols, |_, _| {
            Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        })
    }

    #[test]
    fn identity_and_diagonal() {
        let s = svd(&ComplexMatrix::identity(3)).unwrap();
        assert_eq!(s.singular_values, vec![1.0, 1.0, 1.0]);
        let s = svd(&ComplexMatrix::diagonal(&[1.0, 3.0, 2.0])).unwrap();
        assert_eq!(s.singular_values, vec![3.0, 2.0, 1.0]);
    }

    #[test]
    fn column_vector_norm() {
        let a = ComplexMatrix::from_real(2, 1, &[1.0, -1.0]).unwrap();
        let s = svd(&a).unwrap();
        assert!((s.singular_values[0] - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn reconstruction_random_tall_and_wide() {
        for (r, cdim, seed) in [(8, 5, 1), (5, 8, 2), (12, 12, 3), (1, 4, 4)] {
            let a = random_matrix(r, cdim, seed);
            let s = svd(&a).unwrap();
            assert!(s.reconstruct().distance(&a) <= 1e-12 * a.frobenius_norm());
            assert!(s.singular_values.windows(2).all(|w| w[0] >= w[1]));
            let utu = s.u.adjoint().matmul(&s.u).unwrap();
            assert!(utu.distance(&ComplexMatrix::identity(utu.rows())) < 1e-12);
        }
    }

    #[test]
    fn zero_column_gets_orthonormal_completion() {
        let a = ComplexMatrix::from_real(3, 2, &[1.0, 0.0, 2.0, 0.0, 0.0, 0.0]).unwrap();
        let s = svd(&a).unwrap();
        assert_eq!(s.sigma_min(), 0.0);
        let utu = s.u.adjoint().matmul(&s.u).unwrap();
        assert!(utu.distance(&ComplexMatrix::identity(2)) < 1e-14);
        assert!(s.reconstruct().distance(&a) < 1e-14);
    }

    #[test]
    fn pinv_identity_and_truncation() {
        let b = vec![Complex64::new(1.0, 2.0), c(-3.0), Complex64::new(0.0, 0.5)];
        let sol = pseudo_inverse_solve(&ComplexMatrix::identity(3), &b, default_rcond(3, 3)).unwrap();
        assert_eq!(sol.rank, 3);
        for (x, y) in sol.x.iter().zip(&b) {
            assert!((x - y).norm() < 1e-15);
        }
        let sol = pseudo_inverse_solve(&ComplexMatrix::diagonal(&[2.0, 0.0]), &[c(4.0), c(1.0)], 1e-12)
            .unwrap();
        assert!(sol.rank_deficient);
        assert_eq!(sol.rank, 1);
        assert!((sol.x[0] - c(2.0)).norm() < 1e-15);
        assert_eq!(sol.x[1], c(0.0));
    }

    #[test]
    fn pinv_all_truncated_gives_zero() {
        let a = ComplexMatrix::zeros(3, 2);
        let sol = pseudo_inverse_solve(&a, &[c(1.0), c(1.0), c(1.0)], 0.1).unwrap();
        assert_eq!(sol.rank, 0);
        assert!(sol.rank_deficient);
        assert!(sol.x.iter().all(|z| *z == c(0.0)));
    }

    #[test]
    fn pinv_rejects_bad_arguments() {
        let a = ComplexMatrix::identity(2);
        assert!(pseudo_inverse_solve(&a, &[c(1.0)], 0.0).is_err());
        assert!(pseudo_inverse_solve(&a, &[c(1.0), c(1.0)], 1.0).is_err());
        assert!(pseudo_inverse_solve(&a, &[c(1.0), c(1.0)], -0.1).is_err());
    }

    #[test]
    fn pinv_recovers_constructed_solution() {
        let a = random_matrix(6, 3, 7);
        let x0 = vec![Complex64::new(1.0, -1.0), c(0.25), Complex64::new(-2.0, 0.5)];
        let b = a.mul_vec(&x0).unwrap();
        let sol = pseudo_inverse_solve(&a, &b, default_rcond(6, 3)).unwrap();
        for (x, y) in sol.x.iter().zip(&x0) {
            assert!((x - y).norm() < 1e-10);
        }
    }
}
