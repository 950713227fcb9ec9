//! Random-matrix experiments around the quantized transform matrix.

use std::f64::consts::PI;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::discrete_ilt::{attempt_rng, build_lt_matrix};
use crate::error::{Error, Result};
use crate::forward_lt::DOMAIN_END;
use crate::numerics::quad::integrate_complex;
use crate::numerics::stats::{linear_fit, mean, std_dev};
use crate::numerics::{bessel_i0, bessel_j0_zeros, svd, Complex64, ComplexMatrix, SvdResult};
use crate::partitions::{gen_partition, Partition, PartitionScheme};

/// Rows with a mean σ_min below this are treated as round-off and left out of the γ fit.
pub const MACHINE_FLOOR: f64 = 1e-13;
pub const MIN_SWEEP_TRIALS: usize = 10;
pub const MIN_MC_TRIALS: usize = 10_000;
const MC_CHUNK: usize = 8192;

/// Law of the evaluation points `z`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ZSampler {
    /// `|z| ~ U(r_min, r_max)`, phase uniform on `[-π/2, π/2]`, redrawn until `Re z >= re_min`.
    Disk { r_min: f64, r_max: f64, re_min: f64 },
    /// `Re z ~ U(0, re_max)`, `Im z ~ U(-im_max, im_max)`.
    Band { re_max: f64, im_max: f64 },
    /// Leading points of a fixed list.
    Fixed { points: Vec<Complex64> },
}

impl Default for ZSampler {
    fn default() -> Self {
        ZSampler::Disk { r_min: 0.5, r_max: 3.0, re_min: 0.0 }
    }
}

impl ZSampler {
    pub fn validate(&self) -> Result<()> {
        let ok = match self {
            ZSampler::Disk { r_min, r_max, re_min } => {
                0.0 <= *r_min && r_min < r_max && r_max.is_finite() && *re_min >= 0.0 && re_min < r_max
            }
            ZSampler::Band { re_max, im_max } => *re_max > 0.0 && *im_max >= 0.0 && re_max.is_finite() && im_max.is_finite(),
            ZSampler::Fixed { points } => points.iter().all(|z| z.re >= 0.0 && z.re.is_finite() && z.im.is_finite()),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("invalid z sampler {self:?}")))
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, count: usize, rng: &mut R) -> Result<Vec<Complex64>> {
        self.validate()?;
        match self {
            ZSampler::Disk { r_min, r_max, re_min } => Ok((0..count)
                .map(|_| loop {
                    let r = rng.random_range(*r_min..*r_max);
                    let z = Complex64::from_polar(r, rng.random_range(-PI / 2.0..=PI / 2.0));
                    if z.re >= *re_min {
                        break Complex64::new(z.re.max(0.0), z.im);
                    }
                })
                .collect()),
            ZSampler::Band { re_max, im_max } => Ok((0..count)
                .map(|_| {
                    let im = if *im_max > 0.0 { rng.random_range(-*im_max..*im_max) } else { 0.0 };
                    Complex64::new(rng.random_range(0.0..*re_max), im)
                })
                .collect()),
            ZSampler::Fixed { points } => {
                if points.len() < count {
                    return Err(Error::InvalidInput(format!(
                        "fixed sampler holds {} points, {count} requested",
                        points.len()
                    )));
                }
                Ok(points[..count].to_vec())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: usize,
    pub n_prime: usize,
    pub mean_sigma_min: f64,
    pub std: f64,
    pub trials: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingvalSweep {
    pub rows: Vec<SweepRow>,
    /// Every trial had `0 < σ_min <= σ_max`.
    pub all_trials_valid: bool,
}

impl SingvalSweep {
    pub fn strictly_decreasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].mean_sigma_min < w[0].mean_sigma_min)
    }
}

/// Smallest singular value of one `n' x n` transform matrix.
pub fn sigma_min_trial<R: Rng + ?Sized>(
    n: usize,
    n_prime: usize,
    scheme: PartitionScheme,
    sampler: &ZSampler,
    rng: &mut R,
) -> Result<(f64, f64)> {
    let p = gen_partition(scheme, n, rng)?;
    let zs = sampler.sample(n_prime, rng)?;
    let s = svd(&build_lt_matrix(&zs, &p)?)?;
    Ok((s.sigma_min(), s.sigma_max()))
}

/// Mean and spread of `σ_min` over `trials` random matrices for each `n` (cells).
pub fn singval_sweep(
    n_list: &[usize],
    aspect: f64,
    scheme: PartitionScheme,
    sampler: &ZSampler,
    trials: usize,
    seed: u64,
) -> Result<SingvalSweep> {
    if !(aspect >= 1.0 && aspect.is_finite()) {
        return Err(Error::InvalidInput(format!("aspect must be >= 1, got {aspect}")));
    }
    if trials < MIN_SWEEP_TRIALS {
        return Err(Error::InvalidInput(format!("need at least {MIN_SWEEP_TRIALS} trials")));
    }
    if n_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidInput("sizes must be strictly increasing".into()));
    }
    sampler.validate()?;
    let mut rows = Vec::with_capacity(n_list.len());
    let mut all_trials_valid = true;
    for &n in n_list {
        let n_prime = (aspect * n as f64).ceil() as usize;
        let sigmas = (0..trials as u64)
            .into_par_iter()
            .map(|k| sigma_min_trial(n, n_prime, scheme, sampler, &mut attempt_rng(seed, ((n as u64) << 32) | k)))
            .collect::<Result<Vec<_>>>()?;
        all_trials_valid &= sigmas.iter().all(|&(lo, hi)| lo > 0.0 && lo <= hi);
        let mins: Vec<f64> = sigmas.iter().map(|s| s.0).collect();
        rows.push(SweepRow { n, n_prime, mean_sigma_min: mean(&mins), std: std_dev(&mins), trials });
    }
    Ok(SingvalSweep { rows, all_trials_valid })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaFit {
    pub gamma: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// Fits `mean σ_min ≈ e^c n^{-γ}` on rows above [`MACHINE_FLOOR`].
pub fn fit_gamma(sweep: &SingvalSweep) -> Result<GammaFit> {
    if let Some(r) = sweep.rows.iter().find(|r| !(r.mean_sigma_min > 0.0)) {
        return Err(Error::InvalidInput(format!("nonpositive mean σ_min at n = {}", r.n)));
    }
    let kept: Vec<&SweepRow> = sweep.rows.iter().filter(|r| r.mean_sigma_min >= MACHINE_FLOOR).collect();
    if kept.len() < 4 {
        return Err(Error::InvalidInput(format!(
            "γ fit needs 4 rows above {MACHINE_FLOOR:e}, have {}",
            kept.len()
        )));
    }
    let x: Vec<f64> = kept.iter().map(|r| (r.n as f64).ln()).collect();
    let y: Vec<f64> = kept.iter().map(|r| r.mean_sigma_min.ln()).collect();
    let (slope, intercept, r_squared) = linear_fit(&x, &y)?;
    Ok(GammaFit { gamma: -slope, intercept, r_squared })
}

/// First-order difference matrix and its closed-form SVD.
#[derive(Debug, Clone)]
pub struct DiffMatrixSvd {
    /// `n x (n-1)`, `D[i][i] = 1`, `D[i+1][i] = -1`.
    pub d: ComplexMatrix,
    pub factors: SvdResult,
}

impl DiffMatrixSvd {
    pub fn reconstruction_error(&self) -> f64 {
        self.factors.reconstruct().distance(&self.d)
    }
}

/// `U[m][k] = √(2/n) cos((2m-1)kπ/2n)`, `σ_k = 2 sin(kπ/2n)`, `V[t][k] = √(2/n) sin(ktπ/n)`,
/// with columns ordered by decreasing `σ`.
pub fn diff_matrix_svd(n: usize) -> Result<DiffMatrixSvd> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("difference matrix needs n >= 2, got {n}")));
    }
    let nf = n as f64;
    let scale = (2.0 / nf).sqrt();
    let d = ComplexMatrix::from_fn(n, n - 1, |i, j| {
        Complex64::new(
            if i == j {
                1.0
            } else if i == j + 1 {
                -1.0
            } else {
                0.0
            },
            0.0,
        )
    });
    // column c holds mode k = n-1-c
    let mode = |c: usize| (n - 1 - c) as f64;
    let u = ComplexMatrix::from_fn(n, n - 1, |m, c| {
        Complex64::new(scale * ((2 * m + 1) as f64 * mode(c) * PI / (2.0 * nf)).cos(), 0.0)
    });
    let v = ComplexMatrix::from_fn(n - 1, n - 1, |t, c| {
        Complex64::new(scale * (mode(c) * (t + 1) as f64 * PI / nf).sin(), 0.0)
    });
    let singular_values = (0..n - 1).map(|c| 2.0 * (mode(c) * PI / (2.0 * nf)).sin()).collect();
    Ok(DiffMatrixSvd { d, factors: SvdResult { singular_values, u, v } })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CompositeBound {
    /// `σ_min(C D)`.
    pub lhs: f64,
    /// `σ_min(C) σ_min(D)`.
    pub rhs: f64,
    pub holds: bool,
}

/// Checks `σ_min(C D) >= σ_min(C) σ_min(D)` for an `n x n` matrix `C` and the `n x (n-1)` difference matrix.
pub fn composite_bound_check(c: &ComplexMatrix, n: usize) -> Result<CompositeBound> {
    if c.cols() != n || c.rows() < n {
        return Err(Error::InvalidInput(format!(
            "C is {}x{}, expected at least {n} rows and exactly {n} columns",
            c.rows(),
            c.cols()
        )));
    }
    let diff = diff_matrix_svd(n)?;
    let cd = c.matmul(&diff.d)?;
    let lhs = svd(&cd)?.sigma_min();
    let sc = svd(c)?;
    let rhs = sc.sigma_min() * diff.factors.sigma_min();
    let slack = 64.0 * f64::EPSILON * sc.sigma_max() * diff.factors.sigma_max();
    Ok(CompositeBound { lhs, rhs, holds: lhs >= rhs - slack })
}

/// Matrix with IID standard complex Gaussian entries.
pub fn random_gaussian_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    use rand_distr::StandardNormal;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.sample::<f64, _>(StandardNormal) * s, rng.sample::<f64, _>(StandardNormal) * s)
    })
}

/// Phase law on `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PhaseDist {
    Uniform,
    /// Density `e^{-a cos φ} / (2π I₀(a))`.
    VonMises { a: f64 },
}

impl PhaseDist {
    pub fn density(&self, phi: f64) -> Result<f64> {
        match *self {
            PhaseDist::Uniform => Ok(1.0 / (2.0 * PI)),
            PhaseDist::VonMises { a } => {
                // scaled by e^{-|a|} on both sides to stay finite for large a
                let i0 = bessel_i0(a)?;
                Ok((-a * phi.cos() - a.abs()).exp() / (2.0 * PI * i0 * (-a.abs()).exp()))
            }
        }
    }

    /// Rejection sampling from the uniform law with envelope `e^{|a|}`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            PhaseDist::Uniform => rng.random_range(0.0..2.0 * PI),
            PhaseDist::VonMises { a } => loop {
                let phi = rng.random_range(0.0..2.0 * PI);
                let u: f64 = rng.random();
                if u <= (-a * phi.cos() - a.abs()).exp() {
                    break phi;
                }
            },
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            PhaseDist::VonMises { a } if !a.is_finite() || a.abs() > 700.0 => {
                Err(Error::InvalidInput(format!("von Mises concentration {a} out of range")))
            }
            _ => Ok(()),
        }
    }
}

/// Monte-Carlo mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate<T> {
    pub value: T,
    pub std_error: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IsotropyEstimate {
    /// `E[e^{a e^{iφ}}]`.
    pub mean_c: McEstimate<Complex64>,
    /// `E[|e^{a e^{iφ}}|²]`.
    pub mean_cc: McEstimate<f64>,
}

// Sums of (c, |c|², |c|⁴) over one chunk of draws.
fn mc_chunks(
    trials: usize,
    seed: u64,
    draw: impl Fn(&mut rand_chacha::ChaCha12Rng) -> Complex64 + Sync,
) -> (Complex64, f64, f64) {
    let chunks = trials.div_ceil(MC_CHUNK);
    let parts: Vec<(Complex64, f64, f64)> = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = attempt_rng(seed, k as u64);
            let len = MC_CHUNK.min(trials - k * MC_CHUNK);
            let mut acc = (Complex64::new(0.0, 0.0), 0.0, 0.0);
            for _ in 0..len {
                let c = draw(&mut rng);
                let cc = c.norm_sqr();
                acc.0 += c;
                acc.1 += cc;
                acc.2 += cc * cc;
            }
            acc
        })
        .collect();
    parts.into_iter().fold((Complex64::new(0.0, 0.0), 0.0, 0.0), |a, p| (a.0 + p.0, a.1 + p.1, a.2 + p.2))
}

fn summarize(sums: (Complex64, f64, f64), trials: usize) -> IsotropyEstimate {
    let n = trials as f64;
    let mean_c = sums.0 / n;
    let mean_cc = sums.1 / n;
    let var_c = (mean_cc - mean_c.norm_sqr()).max(0.0) * n / (n - 1.0);
    let var_cc = (sums.2 / n - mean_cc * mean_cc).max(0.0) * n / (n - 1.0);
    IsotropyEstimate {
        mean_c: McEstimate { value: mean_c, std_error: (var_c / n).sqrt() },
        mean_cc: McEstimate { value: mean_cc, std_error: (var_cc / n).sqrt() },
    }
}

/// Moments of `c = e^{a e^{iφ}}` with `φ ~ dist`.
pub fn isotropy_mc(dist: PhaseDist, a: f64, trials: usize, seed: u64) -> Result<IsotropyEstimate> {
    if trials < MIN_MC_TRIALS {
        return Err(Error::InvalidInput(format!("need at least {MIN_MC_TRIALS} trials")));
    }
    if !a.is_finite() {
        return Err(Error::NonFinite("a".into()));
    }
    dist.validate()?;
    let sums = mc_chunks(trials, seed, |rng| (a * Complex64::from_polar(1.0, dist.sample(rng))).exp());
    Ok(summarize(sums, trials))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SecondMoment {
    pub estimate: McEstimate<f64>,
    /// `I₀(2pr) - 1`.
    pub reference: f64,
}

/// `E[|e^{-zp} - 1|²]` for `z = r e^{iφ}` with uniform `φ`.
pub fn uniform_phase_second_moment(p: f64, r: f64, trials: usize, seed: u64) -> Result<SecondMoment> {
    if !(p > 0.0 && p <= DOMAIN_END) {
        return Err(Error::InvalidInput(format!("p = {p} must lie in (0, 2π]")));
    }
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidInput(format!("r = {r} must be positive")));
    }
    if trials < 2 {
        return Err(Error::InvalidInput("need at least two trials".into()));
    }
    let reference = bessel_i0(2.0 * p * r)? - 1.0;
    let sums = mc_chunks(trials, seed, |rng| {
        let z = Complex64::from_polar(r, rng.random_range(0.0..2.0 * PI));
        (-z * p).exp() - 1.0
    });
    Ok(SecondMoment { estimate: summarize(sums, trials).mean_cc, reference })
}

/// Breakpoints at the first `n` zeros of `J₀(r t)`, plus the endpoints of `[0, 2π]`.
pub fn bessel_zero_partition(r: f64, n: usize) -> Result<Partition> {
    if !(r > 0.0 && r.is_finite()) || n == 0 {
        return Err(Error::InvalidInput(format!("need r > 0 and n >= 1, got r = {r}, n = {n}")));
    }
    let zeros = bessel_j0_zeros(n);
    let last = zeros[n - 1];
    if last >= DOMAIN_END * r {
        return Err(Error::InsufficientZeros { min_r: last / DOMAIN_END });
    }
    let mut bp = Vec::with_capacity(n + 2);
    bp.push(0.0);
    bp.extend(zeros.iter().map(|j| j / r));
    bp.push(DOMAIN_END);
    Partition::new(bp)
}

/// `∫₀^{2π} e^{a e^{iφ}} e^{-iφ} dφ` by quadrature, against `2πa`.
pub fn phase_integral_identity(a: f64) -> Result<(Complex64, f64)> {
    if !a.is_finite() {
        return Err(Error::NonFinite("a".into()));
    }
    let tol = 1e-13 * a.abs().exp();
    let lhs = integrate_complex(
        |phi| (a * Complex64::from_polar(1.0, phi)).exp() * Complex64::from_polar(1.0, -phi),
        0.0,
        DOMAIN_END,
        tol,
    );
    Ok((lhs, 2.0 * PI * a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::bessel_j0;
    use crate::numerics::quad::integrate;
    use rand::SeedableRng;

    #[test]
    fn two_column_matrix_matches_hand_build() {
        let zs = vec![Complex64::new(0.5, 1.0), Complex64::new(1.0, -0.5), Complex64::new(2.0, 0.0)];
        let p = Partition::equidistant(2).unwrap();
        let sampler = ZSampler::Fixed { points: zs.clone() };
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(0);
        let (lo, _) = sigma_min_trial(2, 3, PartitionScheme::Equidistant, &sampler, &mut rng).unwrap();
        let h = PI;
        let hand = ComplexMatrix::from_fn(3, 2, |i, j| {
            let z = zs[i];
            ((-z * (j as f64 * h)).exp() - (-z * ((j + 1) as f64 * h)).exp()) / z
        });
        assert!((svd(&hand).unwrap().sigma_min() - lo).abs() < 1e-13);
        assert_eq!(p.cells(), 2);
    }

    #[test]
    fn sweep_rows_positive() {
        let s = singval_sweep(&[4, 8], 1.2, PartitionScheme::SegmentsLeft, &ZSampler::default(), 10, 1).unwrap();
        assert!(s.all_trials_valid);
        assert!(s.rows.iter().all(|r| r.mean_sigma_min > 0.0));
        assert_eq!(s.rows[1].n_prime, 10);
        assert!(singval_sweep(&[4], 0.5, PartitionScheme::SegmentsLeft, &ZSampler::default(), 10, 1).is_err());
    }

    fn synthetic(f: impl Fn(f64) -> f64) -> SingvalSweep {
        let rows = [4, 8, 16, 32, 64]
            .iter()
            .map(|&n| SweepRow { n, n_prime: n, mean_sigma_min: f(n as f64), std: 0.0, trials: 10 })
            .collect();
        SingvalSweep { rows, all_trials_valid: true }
    }

    #[test]
    fn gamma_on_constructed_sweeps() {
        assert!((fit_gamma(&synthetic(|n| 1.0 / n)).unwrap().gamma - 1.0).abs() < 1e-10);
        assert!(fit_gamma(&synthetic(|_| 0.3)).unwrap().gamma.abs() < 1e-12);
        assert!(fit_gamma(&synthetic(|n| if n > 10.0 { 0.0 } else { 1.0 })).is_err());
        assert!(fit_gamma(&synthetic(|n| if n > 10.0 { 1e-15 } else { 1.0 })).is_err());
    }

    #[test]
    fn difference_matrix_closed_form() {
        let two = diff_matrix_svd(2).unwrap();
        assert_eq!(two.d.as_slice(), &[Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)]);
        assert!((two.factors.singular_values[0] - 2f64.sqrt()).abs() < 1e-15);
        for n in 2..=12 {
            let s = diff_matrix_svd(n).unwrap();
            assert!(s.reconstruction_error() <= 1e-12, "n={n}");
            let numeric = svd(&s.d).unwrap();
            for (a, b) in numeric.singular_values.iter().zip(&s.factors.singular_values) {
                assert!((a - b).abs() <= 1e-10);
            }
            let utu = s.factors.u.adjoint().matmul(&s.factors.u).unwrap();
            let vvt = s.factors.v.matmul(&s.factors.v.adjoint()).unwrap();
            assert!(utu.distance(&ComplexMatrix::identity(n - 1)) <= 1e-12);
            assert!(vvt.distance(&ComplexMatrix::identity(n - 1)) <= 1e-12);
        }
        assert!(diff_matrix_svd(1).is_err());
    }

    #[test]
    fn composite_bound_cases() {
        let id = composite_bound_check(&ComplexMatrix::identity(6), 6).unwrap();
        assert!((id.lhs - id.rhs).abs() < 1e-14 && id.holds);
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(5);
        for _ in 0..100 {
            let c = random_gaussian_matrix(8, 8, &mut rng);
            assert!(composite_bound_check(&c, 8).unwrap().holds);
        }
        let mut c = random_gaussian_matrix(5, 5, &mut rng);
        for j in 0..5 {
            c[(j, 4)] = c[(j, 0)];
        }
        let r = composite_bound_check(&c, 5).unwrap();
        assert!(r.rhs < 1e-14 && r.holds);
    }

    #[test]
    fn von_mises_density_normalised() {
        for a in [0.0, 0.5, 2.0, 10.0] {
            let d = PhaseDist::VonMises { a };
            let total = integrate(|p| d.density(p).unwrap(), 0.0, 2.0 * PI, 1e-13);
            assert!((total - 1.0).abs() < 1e-10, "a={a}");
        }
    }

    #[test]
    fn isotropy_small_run() {
        for a in [0.5, 1.0, 2.0] {
            let u = isotropy_mc(PhaseDist::Uniform, a, 40_000, 3).unwrap();
            assert!((u.mean_c.value - 1.0).norm() <= 4.0 * u.mean_c.std_error);
            let v = isotropy_mc(PhaseDist::VonMises { a }, a, 40_000, 3).unwrap();
            let want = bessel_j0(a) / bessel_i0(a).unwrap();
            assert!((v.mean_c.value - want).norm() <= 4.0 * v.mean_c.std_error);
            assert!((v.mean_cc.value - 1.0).abs() <= 4.0 * v.mean_cc.std_error);
        }
        assert!(isotropy_mc(PhaseDist::Uniform, 1.0, 100, 0).is_err());
    }

    #[test]
    fn second_moment_behaviour() {
        let tiny = uniform_phase_second_moment(1e-6, 1.0, 10_000, 0).unwrap();
        assert!(tiny.estimate.value < 1e-10);
        let m = uniform_phase_second_moment(1.0, 1.0, 200_000, 1).unwrap();
        assert!((m.estimate.value - m.reference).abs() <= 0.01 * m.reference);
        let refs: Vec<f64> = [0.5, 1.0, 2.0]
            .iter()
            .map(|&p| uniform_phase_second_moment(p, 1.0, 20_000, 2).unwrap().estimate.value)
            .collect();
        assert!(refs[0] < refs[1] && refs[1] < refs[2]);
        assert!(uniform_phase_second_moment(7.0, 1.0, 100, 0).is_err());
    }

    #[test]
    fn zero_partition() {
        let p = bessel_zero_partition(10.0, 5).unwrap();
        let bp = p.breakpoints();
        assert!((bp[1] - 0.24048255576957728).abs() < 1e-12);
        for &t in &bp[1..=5] {
            assert!(bessel_j0(10.0 * t).abs() <= 1e-10);
        }
        match bessel_zero_partition(0.5, 5) {
            Err(Error::InsufficientZeros { min_r }) => {
                assert!(bessel_zero_partition(min_r * 1.001, 5).is_ok());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn phase_identity() {
        for a in [0.0, 1.0, 2.5, -1.5] {
            let (lhs, rhs) = phase_integral_identity(a).unwrap();
            assert!((lhs - Complex64::new(rhs, 0.0)).norm() <= 1e-10, "a={a}");
        }
    }

    #[test]
    fn samplers() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(8);
        let zs = ZSampler::Disk { r_min: 0.5, r_max: 3.0, re_min: 0.5 }.sample(500, &mut rng).unwrap();
        assert!(zs.iter().all(|z| z.re >= 0.5 && z.norm() < 3.0 && z.norm() >= 0.5));
        let zs = ZSampler::Band { re_max: 1.0, im_max: 400.0 }.sample(500, &mut rng).unwrap();
        assert!(zs.iter().all(|z| (0.0..1.0).contains(&z.re) && z.im.abs() < 400.0));
        assert!(ZSampler::Fixed { points: vec![] }.sample(1, &mut rng).is_err());
    }
}
