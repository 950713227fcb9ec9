//! Random partitions of `[0, 2π]` and the distribution theory of their breakpoints.
//!
//! All generators take the number of cells. The normalized and segment schemes
//! are usually described by their number of interior breakpoints `n`, which
//! corresponds to `n + 1` cells here.

use std::fmt;
use std::str::FromStr;

use rand::distr::OpenClosed01;
use rand::Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forward_lt::DOMAIN_END;
use crate::numerics::quad::integrate_piecewise;
use crate::numerics::stats::{beta_cdf_int, kahan_sum, ks_pvalue, ks_statistic};
use crate::numerics::{binomial, factorial};

/// Breakpoints `0 = p_0 < p_1 < … < p_n = 2π`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPartition")]
pub struct Partition {
    breakpoints: Vec<f64>,
}

#[derive(Deserialize)]
struct RawPartition {
    breakpoints: Vec<f64>,
}

impl TryFrom<RawPartition> for Partition {
    type Error = Error;

    fn try_from(raw: RawPartition) -> Result<Self> {
        Partition::new(raw.breakpoints)
    }
}

impl Partition {
    pub fn new(breakpoints: Vec<f64>) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(Error::InvalidInput("a partition needs at least two breakpoints".into()));
        }
        if breakpoints[0] != 0.0 || *breakpoints.last().unwrap() != DOMAIN_END {
            return Err(Error::InvalidInput("partition endpoints must be 0 and 2π".into()));
        }
        if breakpoints.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidInput("breakpoints must be strictly increasing".into()));
        }
        Ok(Self { breakpoints })
    }

    pub fn equidistant(cells: usize) -> Result<Self> {
        if cells == 0 {
            return Err(Error::InvalidInput("a partition needs at least one cell".into()));
        }
        Self::new(
            (0..=cells)
                .map(|j| if j == cells { DOMAIN_END } else { DOMAIN_END * j as f64 / cells as f64 })
                .collect(),
        )
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn cells(&self) -> usize {
        self.breakpoints.len() - 1
    }

    pub fn lengths(&self) -> Vec<f64> {
        self.breakpoints.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Cell containing `t`; `2π` belongs to the last cell.
    pub fn cell_index(&self, t: f64) -> Option<usize> {
        if !(0.0..=DOMAIN_END).contains(&t) {
            return None;
        }
        let k = self.breakpoints.partition_point(|&p| p <= t);
        Some(k.saturating_sub(1).min(self.cells() - 1))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartitionScheme {
    /// Normalized cumulative sums of IID uniforms.
    NormalizedUniform,
    /// Normalized cumulative sums of IID exponentials.
    NormalizedExponential,
    /// Breakpoint `j` uniform on a segment of width `2π/cells` centred at `2πj/cells`.
    SegmentsCentered,
    /// Breakpoint `j` uniform on `(2π(j-1)/m, 2πj/m)`, `m = cells - 1`.
    SegmentsLeft,
    Equidistant,
}

impl PartitionScheme {
    pub const ALL: [PartitionScheme; 5] = [
        PartitionScheme::NormalizedUniform,
        PartitionScheme::NormalizedExponential,
        PartitionScheme::SegmentsCentered,
        PartitionScheme::SegmentsLeft,
        PartitionScheme::Equidistant,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PartitionScheme::NormalizedUniform => "normalized-uniform",
            PartitionScheme::NormalizedExponential => "normalized-exponential",
            PartitionScheme::SegmentsCentered => "segments-centered",
            PartitionScheme::SegmentsLeft => "segments-left",
            PartitionScheme::Equidistant => "equidistant",
        }
    }

    pub fn is_normalized(self) -> bool {
        matches!(self, PartitionScheme::NormalizedUniform | PartitionScheme::NormalizedExponential)
    }
}

impl fmt::Display for PartitionScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PartitionScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace('_', "-");
        Ok(match key.as_str() {
            "normalized-uniform" => PartitionScheme::NormalizedUniform,
            "normalized-exponential" => PartitionScheme::NormalizedExponential,
            "segments-centered" | "e1" => PartitionScheme::SegmentsCentered,
            "segments-left" | "e2" => PartitionScheme::SegmentsLeft,
            "equidistant" => PartitionScheme::Equidistant,
            _ => return Err(Error::InvalidInput(format!("unknown partition scheme '{s}'"))),
        })
    }
}

/// Draws a random partition with `cells` cells.
pub fn gen_partition<R: Rng + ?Sized>(scheme: PartitionScheme, cells: usize, rng: &mut R) -> Result<Partition> {
    if cells == 0 {
        return Err(Error::InvalidInput("a partition needs at least one cell".into()));
    }
    if scheme == PartitionScheme::Equidistant {
        return Partition::equidistant(cells);
    }
    // Ties have probability zero but can appear after rounding; redraw in that case.
    loop {
        let interior = match scheme {
            PartitionScheme::NormalizedUniform => normalized(cells, || rng.sample::<f64, _>(OpenClosed01)),
            PartitionScheme::NormalizedExponential => normalized(cells, || rng.sample::<f64, _>(Exp1)),
            PartitionScheme::SegmentsCentered => {
                let w = DOMAIN_END / cells as f64;
                (1..cells)
                    .map(|j| w * j as f64 + w * (rng.random::<f64>() - 0.5))
                    .collect()
            }
            PartitionScheme::SegmentsLeft => {
                let m = (cells - 1) as f64;
                (1..cells)
                    .map(|j| DOMAIN_END * (j as f64 - rng.random::<f64>()) / m)
                    .collect()
            }
            PartitionScheme::Equidistant => unreachable!(),
        };
        let mut bp = Vec::with_capacity(cells + 1);
        bp.push(0.0);
        bp.extend(interior);
        bp.push(DOMAIN_END);
        if let Ok(p) = Partition::new(bp) {
            return Ok(p);
        }
    }
}

fn normalized(cells: usize, mut draw: impl FnMut() -> f64) -> Vec<f64> {
    let x: Vec<f64> = (0..cells).map(|_| draw()).collect();
    let total: f64 = x.iter().sum();
    let mut acc = 0.0;
    x[..cells - 1]
        .iter()
        .map(|v| {
            acc += v;
            DOMAIN_END * acc / total
        })
        .collect()
}

/// Conditional-versus-marginal comparison for a pair of breakpoints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DependenceReport {
    /// Estimate of `P(V < u | |U - u| < ε)`.
    pub conditional: f64,
    /// Estimate of `P(V < u)`.
    pub marginal: f64,
    pub gap: f64,
    /// Standard error of `gap`.
    pub std_error: f64,
    /// Number of draws falling in the conditioning band.
    pub band_count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DependenceQuery {
    /// 1-based breakpoint indices with `i < k`.
    pub i: usize,
    pub k: usize,
    pub u: f64,
    pub eps: f64,
    /// Draw `V` from an independent partition, giving a control with zero gap.
    pub independent_control: bool,
}

/// Monte-Carlo check that `U = p_i/2π` and `V = p_k/2π` are dependent.
pub fn dependence_check<R: Rng + ?Sized>(
    scheme: PartitionScheme,
    cells: usize,
    q: DependenceQuery,
    trials: usize,
    rng: &mut R,
) -> Result<DependenceReport> {
    if trials < 1000 {
        return Err(Error::InvalidInput("dependence_check needs at least 1000 trials".into()));
    }
    if !(1 <= q.i && q.i < q.k && q.k < cells) {
        return Err(Error::InvalidInput(format!(
            "need 1 <= i < k < cells, got i={}, k={}, cells={cells}",
            q.i, q.k
        )));
    }
    let mut below = 0usize;
    let mut band = 0usize;
    let mut band_below = 0usize;
    for _ in 0..trials {
        let p = gen_partition(scheme, cells, rng)?;
        let u = p.breakpoints()[q.i] / DOMAIN_END;
        let v = if q.independent_control {
            gen_partition(scheme, cells, rng)?.breakpoints()[q.k] / DOMAIN_END
        } else {
            p.breakpoints()[q.k] / DOMAIN_END
        };
        if v < q.u {
            below += 1;
        }
        if (u - q.u).abs() < q.eps {
            band += 1;
            if v < q.u {
                band_below += 1;
            }
        }
    }
    if band == 0 {
        return Err(Error::NonFinite("no draws fell in the conditioning band".into()));
    }
    let marginal = below as f64 / trials as f64;
    let conditional = band_below as f64 / band as f64;
    let var = conditional * (1.0 - conditional) / band as f64 + marginal * (1.0 - marginal) / trials as f64;
    Ok(DependenceReport {
        conditional,
        marginal,
        gap: (conditional - marginal).abs(),
        std_error: var.sqrt().max(1.0 / band as f64),
        band_count: band,
    })
}

/// Largest `n` accepted by [`irwin_hall_ratio_cdf`].
pub const MAX_ANALYTIC_N: usize = 12;

/// Irwin–Hall CDF of the sum of `m` standard uniforms.
pub fn irwin_hall_cdf(m: usize, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= m as f64 {
        return 1.0;
    }
    let mm = m as u64;
    let s = kahan_sum((0..=x.floor() as u64).map(|j| {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        sign * binomial(mm, j) * (x - j as f64).powi(m as i32)
    }));
    (s / factorial(m as u32)).clamp(0.0, 1.0)
}

/// Irwin–Hall density of the sum of `m` standard uniforms.
pub fn irwin_hall_pdf(m: usize, x: f64) -> f64 {
    if x < 0.0 || x > m as f64 {
        return 0.0;
    }
    if m == 1 {
        return 1.0;
    }
    let mm = m as u64;
    let s = kahan_sum((0..=(x.floor() as u64).min(mm)).map(|j| {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        sign * binomial(mm, j) * (x - j as f64).max(0.0).powi(m as i32 - 1)
    }));
    (s / factorial(m as u32 - 1)).max(0.0)
}

/// `P(S_k / S_{n+1} ≤ t)` for partial sums `S_j` of IID standard uniforms.
pub fn irwin_hall_ratio_cdf(k: usize, n: usize, t: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidInput(format!("t = {t} outside [0, 1]")));
    }
    if !(1 <= k && k <= n) {
        return Err(Error::InvalidInput(format!("need 1 <= k <= n, got k={k}, n={n}")));
    }
    if n > MAX_ANALYTIC_N {
        return Err(Error::InvalidInput(format!(
            "analytic ratio CDF is limited to n <= {MAX_ANALYTIC_N}; use Monte-Carlo"
        )));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    if t == 1.0 {
        return Ok(1.0);
    }
    let rest = n + 1 - k;
    let ratio = (1.0 - t) / t;
    let mut breaks: Vec<f64> = (0..=k).map(|j| j as f64).collect();
    breaks.extend((1..=rest).map(|j| j as f64 / ratio).filter(|&l| l < k as f64));
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let v = integrate_piecewise(
        |l| (1.0 - irwin_hall_cdf(rest, l * ratio)) * irwin_hall_pdf(k, l),
        &breaks,
        1e-10,
    );
    Ok(v.clamp(0.0, 1.0))
}

/// Samples of `S_k / S_{n+1}` for IID standard uniforms.
pub fn sample_uniform_ratio<R: Rng + ?Sized>(k: usize, n: usize, trials: usize, rng: &mut R) -> Vec<f64> {
    (0..trials)
        .map(|_| {
            let x: Vec<f64> = (0..=n).map(|_| rng.random::<f64>()).collect();
            let head: f64 = x[..k].iter().sum();
            head / (head + x[k..].iter().sum::<f64>())
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KsRow {
    pub k: usize,
    pub ks: f64,
    pub p_value: f64,
}

/// KS distance between `S_k / S_{n+1}` of IID exponentials and `Beta(k, n+1-k)`, for each `k ≤ n`.
pub fn exp_order_stats_check<R: Rng + ?Sized>(n: usize, trials: usize, rng: &mut R) -> Result<Vec<KsRow>> {
    if n == 0 || trials == 0 {
        return Err(Error::InvalidInput("need n >= 1 and trials >= 1".into()));
    }
    let mut samples = vec![Vec::with_capacity(trials); n];
    for _ in 0..trials {
        let p = gen_partition(PartitionScheme::NormalizedExponential, n + 1, rng)?;
        for (k, s) in samples.iter_mut().enumerate() {
            s.push(p.breakpoints()[k + 1] / DOMAIN_END);
        }
    }
    Ok(samples
        .iter()
        .enumerate()
        .map(|(idx, s)| {
            let k = idx + 1;
            let ks = ks_statistic(s, |x| beta_cdf_int(k as u32, (n + 1 - k) as u32, x));
            KsRow { k, ks, p_value: ks_pvalue(ks, trials) }
        })
        .collect())
}
