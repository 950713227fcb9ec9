//! Randomized inversion of a sampled kime-surface.
//!
//! Each attempt draws a random partition and a random subset of the samples,
//! models the signal as piecewise constant on the partition, and solves the
//! resulting linear system with a truncated pseudoinverse. The attempts are
//! evaluated on a shared grid and summarised point by point.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forward_lt::{shifted_integral, LtSample, TimeSignal, DOMAIN_END, ZERO_FREQ};
use crate::numerics::stats::{mean, quantile_sorted};
use crate::numerics::{pseudo_inverse_solve, Complex64, ComplexMatrix};
use crate::partitions::{gen_partition, Partition, PartitionScheme};

/// Number of points in the shared evaluation grid.
pub const DEFAULT_GRID_POINTS: usize = 257;
/// Offset in the weighted-mean weights `1 / (residual + δ)`.
pub const WEIGHT_DELTA: f64 = 1e-9;

/// Sampled Laplace-domain values `b_i ≈ F(z_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct KimeSampleSet {
    z: Vec<Complex64>,
    b: Vec<Complex64>,
}

impl KimeSampleSet {
    pub fn new(z: Vec<Complex64>, b: Vec<Complex64>) -> Result<Self> {
        if z.len() != b.len() {
            return Err(Error::InvalidInput(format!("{} points but {} values", z.len(), b.len())));
        }
        if z.len() < 2 {
            return Err(Error::InvalidInput("a sample set needs at least two records".into()));
        }
        if z.iter().chain(&b).any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::NonFinite("sample record".into()));
        }
        if let Some(bad) = z.iter().find(|v| v.re < 0.0) {
            return Err(Error::InvalidInput(format!("Re z must be >= 0, got {bad}")));
        }
        Ok(Self { z, b })
    }

    pub fn from_samples(samples: &[LtSample]) -> Result<Self> {
        Self::new(samples.iter().map(|s| s.z).collect(), samples.iter().map(|s| s.value).collect())
    }

    pub fn points(&self) -> &[Complex64] {
        &self.z
    }

    pub fn values(&self) -> &[Complex64] {
        &self.b
    }

    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }

    pub fn to_samples(&self) -> Vec<LtSample> {
        self.z.iter().zip(&self.b).map(|(&z, &value)| LtSample { z, value }).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Aggregation {
    Mean,
    #[default]
    Median,
    WeightedMean,
}

impl std::str::FromStr for Aggregation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "mean" => Ok(Aggregation::Mean),
            "median" => Ok(Aggregation::Median),
            "weighted-mean" => Ok(Aggregation::WeightedMean),
            _ => Err(Error::InvalidInput(format!("unknown aggregation '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IltConfig {
    /// Partition size (number of cells).
    pub n1: usize,
    /// Number of records drawn per attempt.
    pub n2: usize,
    pub itn: usize,
    pub rcond: f64,
    pub seed: u64,
    pub partition_scheme: PartitionScheme,
    pub aggregation: Aggregation,
    pub grid_points: usize,
}

impl IltConfig {
    /// Defaults for a sample set of size `n`: `n1 = itn = ⌈√n⌉`, `n2 = 2 n1`.
    pub fn for_sample_count(n: usize) -> Self {
        let root = (n as f64).sqrt().ceil() as usize;
        Self {
            n1: root.max(2),
            n2: 2 * root.max(2),
            itn: root.max(1),
            rcond: 1e-5,
            seed: 0,
            partition_scheme: PartitionScheme::SegmentsLeft,
            aggregation: Aggregation::Median,
            grid_points: DEFAULT_GRID_POINTS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n1 < 2 || self.n2 < self.n1 {
            return Err(Error::InvalidInput(format!(
                "need n2 >= n1 >= 2, got n1={}, n2={}",
                self.n1, self.n2
            )));
        }
        if self.itn == 0 {
            return Err(Error::InvalidInput("itn must be at least 1".into()));
        }
        if !(0.0..1.0).contains(&self.rcond) {
            return Err(Error::InvalidInput(format!("rcond must lie in [0, 1), got {}", self.rcond)));
        }
        if self.grid_points < 2 {
            return Err(Error::InvalidInput("grid needs at least two points".into()));
        }
        Ok(())
    }
}

/// `a_ij = ∫_{p_{j-1}}^{p_j} e^{-z_i t} dt`.
pub fn build_lt_matrix(zs: &[Complex64], p: &Partition) -> Result<ComplexMatrix> {
    if zs.is_empty() {
        return Err(Error::InvalidInput("no evaluation points".into()));
    }
    if zs.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::NonFinite("evaluation point".into()));
    }
    let bp = p.breakpoints();
    Ok(ComplexMatrix::from_fn(zs.len(), p.cells(), |i, j| {
        let z = zs[i];
        let h = bp[j + 1] - bp[j];
        if z.norm() <= ZERO_FREQ {
            Complex64::new(h, 0.0)
        } else {
            (-z * bp[j]).exp() * shifted_integral(0, h, z)
        }
    }))
}

/// One attempt: cell values `u` on `partition`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantizedSolution {
    pub partition: Partition,
    pub u: Vec<Complex64>,
    pub residual_norm: f64,
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub rank: usize,
    pub rank_deficient: bool,
}

impl QuantizedSolution {
    /// No singular direction survived the cutoff; the solution is identically zero.
    pub fn failed(&self) -> bool {
        self.rank == 0
    }

    /// Real part of the piecewise-constant estimate at `t`.
    pub fn eval(&self, t: f64) -> f64 {
        self.partition.cell_index(t).map_or(0.0, |k| self.u[k].re)
    }
}

/// Draws `n2` records without replacement and solves `A u ≈ b` on `p`.
pub fn solve_once<R: Rng + ?Sized>(
    s: &KimeSampleSet,
    p: &Partition,
    n2: usize,
    rcond: f64,
    rng: &mut R,
) -> Result<QuantizedSolution> {
    if n2 > s.len() || n2 == 0 {
        return Err(Error::InvalidInput(format!(
            "cannot draw {n2} records from a set of {}",
            s.len()
        )));
    }
    let idx = sample(rng, s.len(), n2).into_vec();
    let zs: Vec<Complex64> = idx.iter().map(|&i| s.z[i]).collect();
    let b: Vec<Complex64> = idx.iter().map(|&i| s.b[i]).collect();
    solve_on(&zs, &b, p, rcond)
}

/// Solves on the given records without subsampling.
pub fn solve_on(zs: &[Complex64], b: &[Complex64], p: &Partition, rcond: f64) -> Result<QuantizedSolution> {
    let a = build_lt_matrix(zs, p)?;
    let sol = pseudo_inverse_solve(&a, b, rcond)?;
    let au = a.mul_vec(&sol.x)?;
    let residual_norm = au.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt();
    Ok(QuantizedSolution {
        partition: p.clone(),
        u: sol.x,
        residual_norm,
        sigma_min: *sol.singular_values.last().expect("non-empty"),
        sigma_max: sol.singular_values[0],
        rank: sol.rank,
        rank_deficient: sol.rank_deficient,
    })
}

/// Per-attempt record kept alongside the ensemble statistics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AttemptDiagnostics {
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub residual_norm: f64,
    pub rank: usize,
    pub rank_deficient: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleResult {
    pub grid: Vec<f64>,
    pub mean: Vec<f64>,
    pub median: Vec<f64>,
    pub q25: Vec<f64>,
    pub q75: Vec<f64>,
    pub weighted_mean: Vec<f64>,
    pub itn: usize,
    pub aggregation: Aggregation,
    pub attempts: Vec<AttemptDiagnostics>,
}

/// JSON diagnostics record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub itn: usize,
    pub n1: usize,
    pub n2: usize,
    pub sigma_min_list: Vec<f64>,
    pub residual_list: Vec<f64>,
    pub seed: u64,
}

impl EnsembleResult {
    /// The curve selected by the configured aggregation.
    pub fn estimate(&self) -> &[f64] {
        match self.aggregation {
            Aggregation::Mean => &self.mean,
            Aggregation::Median => &self.median,
            Aggregation::WeightedMean => &self.weighted_mean,
        }
    }

    pub fn diagnostics(&self, cfg: &IltConfig) -> Diagnostics {
        Diagnostics {
            itn: self.itn,
            n1: cfg.n1,
            n2: cfg.n2,
            sigma_min_list: self.attempts.iter().map(|a| a.sigma_min).collect(),
            residual_list: self.attempts.iter().map(|a| a.residual_norm).collect(),
            seed: cfg.seed,
        }
    }

    pub fn failed_attempts(&self) -> usize {
        self.attempts.iter().filter(|a| a.rank == 0).count()
    }

    /// Builds the statistics from the attempts' grid values; the result does not depend on attempt order.
    pub fn from_attempts(grid: Vec<f64>, solutions: &[QuantizedSolution], aggregation: Aggregation) -> Result<Self> {
        if solutions.is_empty() {
            return Err(Error::InvalidInput("no attempts to aggregate".into()));
        }
        if solutions.iter().all(|s| s.failed()) {
            return Err(Error::AllAttemptsFailed { attempts: solutions.len() });
        }
        let m = grid.len();
        let (mut mean_c, mut median, mut q25, mut q75, mut wmean) =
            (vec![0.0; m], vec![0.0; m], vec![0.0; m], vec![0.0; m], vec![0.0; m]);
        for (g, &t) in grid.iter().enumerate() {
            let mut all: Vec<f64> = solutions.iter().map(|s| s.eval(t)).collect();
            all.sort_by(f64::total_cmp);
            mean_c[g] = mean(&all);
            let mut kept: Vec<f64> = solutions.iter().filter(|s| !s.failed()).map(|s| s.eval(t)).collect();
            kept.sort_by(f64::total_cmp);
            median[g] = quantile_sorted(&kept, 0.5);
            q25[g] = quantile_sorted(&kept, 0.25);
            q75[g] = quantile_sorted(&kept, 0.75);
            let mut pairs: Vec<(f64, f64)> = solutions
                .iter()
                .filter(|s| !s.failed())
                .map(|s| (s.eval(t), 1.0 / (s.residual_norm + WEIGHT_DELTA)))
                .collect();
            pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
            let wsum: f64 = pairs.iter().map(|p| p.1).sum();
            wmean[g] = pairs.iter().map(|p| p.0 * p.1).sum::<f64>() / wsum;
        }
        Ok(Self {
            grid,
            mean: mean_c,
            median,
            q25,
            q75,
            weighted_mean: wmean,
            itn: solutions.len(),
            aggregation,
            attempts: solutions
                .iter()
                .map(|s| AttemptDiagnostics {
                    sigma_min: s.sigma_min,
                    sigma_max: s.sigma_max,
                    residual_norm: s.residual_norm,
                    rank: s.rank,
                    rank_deficient: s.rank_deficient,
                })
                .collect(),
        })
    }
}

/// Uniform grid of `m` points on `[0, 2π]`.
pub fn uniform_grid(m: usize) -> Vec<f64> {
    (0..m)
        .map(|i| if i + 1 == m { DOMAIN_END } else { DOMAIN_END * i as f64 / (m - 1) as f64 })
        .collect()
}

/// Independent stream for attempt `k` derived from the master seed.
pub fn attempt_rng(seed: u64, k: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(k);
    rng
}

/// Runs `cfg.itn` independent attempts and aggregates them on the shared grid.
pub fn randomized_ilt(s: &KimeSampleSet, cfg: &IltConfig) -> Result<EnsembleResult> {
    cfg.validate()?;
    if cfg.n2 > s.len() {
        return Err(Error::InvalidInput(format!(
            "n2 = {} exceeds the {} available records",
            cfg.n2,
            s.len()
        )));
    }
    let solutions = (0..cfg.itn as u64)
        .into_par_iter()
        .map(|k| {
            let mut rng = attempt_rng(cfg.seed, k);
            let p = gen_partition(cfg.partition_scheme, cfg.n1, &mut rng)?;
            solve_once(s, &p, cfg.n2, cfg.rcond, &mut rng)
        })
        .collect::<Result<Vec<_>>>()?;
    EnsembleResult::from_attempts(uniform_grid(cfg.grid_points), &solutions, cfg.aggregation)
}

/// Exact transform of a grid curve, taken as constant on each grid cell at the mean of its endpoints.
pub fn lt_grid_curve(grid: &[f64], values: &[f64], zs: &[Complex64]) -> Vec<LtSample> {
    zs.iter()
        .map(|&z| {
            let value = grid
                .windows(2)
                .zip(values.windows(2))
                .map(|(g, v)| {
                    let level = 0.5 * (v[0] + v[1]);
                    let h = g[1] - g[0];
                    if z.norm() <= ZERO_FREQ {
                        Complex64::new(level * h, 0.0)
                    } else {
                        level * (-z * g[0]).exp() * shifted_integral(0, h, z)
                    }
                })
                .sum();
            LtSample { z, value }
        })
        .collect()
}

/// Forward transform of the ensemble median at each `z`.
pub fn reconstruct_surface(est: &EnsembleResult, zs: &[Complex64]) -> Vec<LtSample> {
    lt_grid_curve(&est.grid, &est.median, zs)
}

/// Reference against which an ensemble is scored.
#[derive(Debug, Clone, Copy)]
pub enum Truth<'a> {
    Signal(&'a TimeSignal),
    Surface(&'a KimeSampleSet),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorMetrics {
    pub abs_err: f64,
    pub rel_err: f64,
}

/// RMSE of the ensemble estimate against `truth`, and the RMSE relative to the RMS of `truth`.
///
/// A time-domain truth is linearly interpolated onto the grid points it covers;
/// a surface truth is compared with [`reconstruct_surface`] at its sample points.
pub fn error_metrics(est: &EnsembleResult, truth: Truth<'_>) -> Result<ErrorMetrics> {
    let (diff, reference): (Vec<f64>, Vec<f64>) = match truth {
        Truth::Signal(sig) => {
            let (t, y) = (sig.times(), sig.values());
            est.grid
                .iter()
                .zip(est.estimate())
                .filter(|(g, _)| **g >= t[0] && **g <= t[t.len() - 1])
                .map(|(&g, &e)| {
                    let k = t.partition_point(|&x| x <= g).clamp(1, t.len() - 1);
                    let w = (g - t[k - 1]) / (t[k] - t[k - 1]);
                    let truth = y[k - 1] + w * (y[k] - y[k - 1]);
                    (e - truth, truth)
                })
                .unzip()
        }
        Truth::Surface(set) => reconstruct_surface(est, set.points())
            .iter()
            .zip(set.values())
            .map(|(r, b)| ((r.value - b).norm(), b.norm()))
            .unzip(),
    };
    if diff.is_empty() {
        return Err(Error::InvalidInput("estimate and truth do not overlap".into()));
    }
    let rms = |v: &[f64]| (v.iter().map(|x| x * x).sum::<f64>() / v.len() as f64).sqrt();
    let abs_err = rms(&diff);
    let scale = rms(&reference);
    Ok(ErrorMetrics {
        abs_err,
        rel_err: if scale > 0.0 { abs_err / scale } else { f64::INFINITY },
    })
}

/// RMSE of a grid curve against `f` over grid points in `[lo, hi]`.
pub fn curve_rmse(grid: &[f64], values: &[f64], f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    let errs: Vec<f64> = grid
        .iter()
        .zip(values)
        .filter(|(t, _)| (lo..=hi).contains(*t))
        .map(|(&t, &v)| (v - f(t)).powi(2))
        .collect();
    (errs.iter().sum::<f64>() / errs.len().max(1) as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forward_lt::lt_power_window;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn matrix_single_interval() {
        let p = Partition::equidistant(1).unwrap();
        let a = build_lt_matrix(&[c(1.0, 0.0), c(0.0, 0.0), c(0.3, 2.0)], &p).unwrap();
        assert!((a[(0, 0)].re - (1.0 - (-DOMAIN_END).exp())).abs() < 1e-15);
        assert_eq!(a[(1, 0)], c(DOMAIN_END, 0.0));
        let w = lt_power_window(0, 0.0, DOMAIN_END, c(0.3, 2.0)).unwrap();
        assert!((a[(2, 0)] - w).norm() < 1e-15);
    }

    #[test]
    fn rows_sum_to_full_window() {
        let p = Partition::new(vec![0.0, 0.5, 2.0, 4.0, DOMAIN_END]).unwrap();
        let zs = [c(0.7, -1.1), c(2.0, 9.0)];
        let a = build_lt_matrix(&zs, &p).unwrap();
        for (i, &z) in zs.iter().enumerate() {
            let row: Complex64 = (0..4).map(|j| a[(i, j)]).sum();
            assert!((row - lt_power_window(0, 0.0, DOMAIN_END, z).unwrap()).norm() < 1e-14);
        }
    }

    #[test]
    fn recovers_piecewise_constant_signal() {
        let p = Partition::new(vec![0.0, 1.0, 2.5, 4.0, DOMAIN_END]).unwrap();
        let truth = [c(1.0, 0.0), c(-0.5, 0.0), c(2.0, 0.0), c(0.25, 0.0)];
        let zs: Vec<Complex64> = (0..12).map(|i| c(0.2 + 0.1 * i as f64, 0.7 * i as f64 - 3.0)).collect();
        let a = build_lt_matrix(&zs, &p).unwrap();
        let b = a.mul_vec(&truth).unwrap();
        let set = KimeSampleSet::new(zs, b).unwrap();
        let sol = solve_once(&set, &p, 12, 1e-14, &mut attempt_rng(1, 0)).unwrap();
        for (u, t) in sol.u.iter().zip(truth) {
            assert!((u - t).norm() < 1e-8);
        }
        assert!(sol.residual_norm < 1e-10);
        assert!(solve_once(&set, &p, 13, 1e-14, &mut attempt_rng(1, 0)).is_err());
    }

    fn sin3_set(n: usize, seed: u64) -> KimeSampleSet {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let zs: Vec<Complex64> = (0..n)
            .map(|_| c(rng.random_range(0.5..2.0), rng.random_range(-2.5..2.5)))
            .collect();
        let b = zs.iter().map(|&z| crate::forward_lt::lt_sin_window(3.0, z).unwrap()).collect();
        KimeSampleSet::new(zs, b).unwrap()
    }

    #[test]
    fn single_attempt_statistics_coincide() {
        let set = sin3_set(60, 2);
        let cfg = IltConfig { itn: 1, ..IltConfig::for_sample_count(60) };
        let e = randomized_ilt(&set, &cfg).unwrap();
        assert_eq!(e.mean, e.median);
        assert_eq!(e.q25, e.q75);
        for (w, m) in e.weighted_mean.iter().zip(&e.mean) {
            assert!((w - m).abs() <= 1e-14 * m.abs().max(1.0));
        }
    }

    #[test]
    fn fixed_seed_is_bitwise_reproducible() {
        let set = sin3_set(100, 3);
        let cfg = IltConfig { seed: 42, itn: 12, ..IltConfig::for_sample_count(100) };
        let a = randomized_ilt(&set, &cfg).unwrap();
        let b = randomized_ilt(&set, &cfg).unwrap();
        assert_eq!(a, b);
        let other = randomized_ilt(&set, &IltConfig { seed: 43, ..cfg }).unwrap();
        assert_ne!(a.median, other.median);
    }

    #[test]
    fn aggregation_ignores_attempt_order() {
        let set = sin3_set(80, 4);
        let sols: Vec<QuantizedSolution> = (0..9)
            .map(|k| {
                let mut rng = attempt_rng(9, k);
                let p = gen_partition(PartitionScheme::SegmentsLeft, 8, &mut rng).unwrap();
                solve_once(&set, &p, 16, 1e-5, &mut rng).unwrap()
            })
            .collect();
        let grid = uniform_grid(33);
        let a = EnsembleResult::from_attempts(grid.clone(), &sols, Aggregation::Median).unwrap();
        let mut rev = sols.clone();
        rev.reverse();
        rev.swap(1, 4);
        let b = EnsembleResult::from_attempts(grid, &rev, Aggregation::Median).unwrap();
        assert_eq!(a.mean, b.mean);
        assert_eq!(a.median, b.median);
        assert_eq!(a.q25, b.q25);
        assert_eq!(a.q75, b.q75);
        assert_eq!(a.weighted_mean, b.weighted_mean);
    }

    #[test]
    fn all_failed_attempts_error() {
        let p = Partition::equidistant(2).unwrap();
        let zs = vec![c(1.0, 0.0), c(2.0, 0.0)];
        let sol = solve_on(&zs, &[c(0.0, 0.0), c(0.0, 0.0)], &p, 0.5).unwrap();
        let zero = QuantizedSolution { rank: 0, u: vec![c(0.0, 0.0); 2], ..sol };
        assert!(matches!(
            EnsembleResult::from_attempts(uniform_grid(5), &[zero], Aggregation::Mean),
            Err(Error::AllAttemptsFailed { .. })
        ));
    }

    #[test]
    fn reconstruction_and_metrics() {
        let grid = uniform_grid(65);
        let zero = EnsembleResult {
            grid: grid.clone(),
            mean: vec![0.0; 65],
            median: vec![0.0; 65],
            q25: vec![0.0; 65],
            q75: vec![0.0; 65],
            weighted_mean: vec![0.0; 65],
            itn: 1,
            aggregation: Aggregation::Median,
            attempts: vec![],
        };
        let zs = [c(0.5, 1.0), c(1.0, -2.0)];
        assert!(reconstruct_surface(&zero, &zs).iter().all(|s| s.value == c(0.0, 0.0)));

        let fine = uniform_grid(4097);
        let sin: Vec<f64> = fine.iter().map(|t| t.sin()).collect();
        let est = EnsembleResult { grid: fine.clone(), median: sin.clone(), mean: sin.clone(), ..zero.clone() };
        for s in reconstruct_surface(&est, &zs) {
            let want = crate::forward_lt::lt_sin_window(1.0, s.z).unwrap();
            assert!((s.value - want).norm() < 1e-5);
        }
        let truth = TimeSignal::new(fine.clone(), sin.clone()).unwrap();
        let m = error_metrics(&est, Truth::Signal(&truth)).unwrap();
        assert!(m.abs_err < 1e-15);
        let shifted: Vec<f64> = sin.iter().map(|v| v + 0.3).collect();
        let est2 = EnsembleResult { median: shifted, ..est.clone() };
        let m = error_metrics(&est2, Truth::Signal(&truth)).unwrap();
        assert!((m.abs_err - 0.3).abs() < 1e-12);
        let far = TimeSignal::new(vec![10.0, 11.0], vec![0.0, 0.0]).unwrap();
        assert!(error_metrics(&est, Truth::Signal(&far)).is_err());
    }

    #[test]
    fn config_validation() {
        let mut cfg = IltConfig::for_sample_count(400);
        assert_eq!((cfg.n1, cfg.n2, cfg.itn), (20, 40, 20));
        assert!(cfg.validate().is_ok());
        cfg.n2 = 10;
        assert!(cfg.validate().is_err());
    }
}
