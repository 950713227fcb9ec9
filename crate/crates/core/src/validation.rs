//! End-to-end checks, one per acceptance criterion.

use std::f64::consts::PI;
use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::analytic_ilt::{cosh_inv_series, ilt_valsa, IltParams};
use crate::discrete_ilt::{curve_rmse, randomized_ilt, IltConfig};
use crate::error::Result;
use crate::forward_lt::{fit_piecewise_poly, lt_piecewise_poly, lt_signal, TimeSignal, DOMAIN_END};
use crate::numerics::stats::ks_statistic;
use crate::numerics::{bessel_i0, bessel_j0, svd, Complex64};
use crate::partitions::{
    dependence_check, exp_order_stats_check, irwin_hall_ratio_cdf, sample_uniform_ratio, DependenceQuery,
    PartitionScheme,
};
use crate::rmt_lab::{
    diff_matrix_svd, fit_gamma, isotropy_mc, phase_integral_identity, singval_sweep, uniform_phase_second_moment,
    PhaseDist, ZSampler,
};
use crate::surface::{composite, sample_surface, TestFunctionSpec};

pub const SEED: u64 = 20240611;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_s: f64,
    pub budget_s: Option<f64>,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let budget = self.budget_s.map(|b| format!(" / {b} s")).unwrap_or_default();
        write!(
            f,
            "criterion {:>2} [{}] {}: {} ({:.2} s{budget})",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.detail,
            self.elapsed_s
        )
    }
}

fn timed(
    id: u8,
    title: &'static str,
    budget_s: Option<f64>,
    body: impl FnOnce() -> Result<(bool, String)>,
) -> CriterionResult {
    let start = Instant::now();
    let outcome = body();
    let elapsed_s = start.elapsed().as_secs_f64();
    let (ok, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    let in_time = budget_s.is_none_or(|b| elapsed_s < b);
    let detail = if ok && !in_time { format!("{detail}; over time budget") } else { detail };
    CriterionResult { id, title, passed: ok && in_time, detail, elapsed_s, budget_s }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect()
}

/// Forward transform of a sampled signal against its closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SinCaseReport {
    pub points: usize,
    pub degree: usize,
    pub frequencies: usize,
    pub max_abs_err: f64,
    pub max_fit_residual: f64,
}

/// `sin t` sampled at `points` on `[0, 2π]`, transformed at `0.1 + iy` for 200 midpoints `y` of `(0, 20)`.
pub fn sin_case(points: usize, degree: usize) -> Result<SinCaseReport> {
    let sig = TimeSignal::sample(f64::sin, 0.0, DOMAIN_END, points)?;
    let frequencies = 200;
    let zs: Vec<Complex64> =
        (0..frequencies).map(|k| Complex64::new(0.1, 20.0 * (k as f64 + 0.5) / frequencies as f64)).collect();
    let fit = fit_piecewise_poly(&sig, degree)?;
    let got = lt_signal(&sig, &zs, degree)?;
    let max_abs_err = got
        .iter()
        .map(|s| {
            let z = s.z;
            let exact = (1.0 - (-DOMAIN_END * z).exp()) / (z * z + 1.0);
            (s.value - exact).norm()
        })
        .fold(0.0, f64::max);
    Ok(SinCaseReport { points, degree, frequencies, max_abs_err, max_fit_residual: fit.max_residual })
}

pub fn criterion_1() -> CriterionResult {
    timed(1, "forward LT of sampled sin", Some(2.0), || {
        let r = sin_case(200, 4)?;
        Ok((r.max_abs_err <= 1e-8, format!("max |err| = {:.3e} (tol 1e-8)", r.max_abs_err)))
    })
}

pub fn criterion_2() -> CriterionResult {
    timed(2, "analytic ILT pairs", Some(1.0), || {
        let p = IltParams::default();
        let ts = linspace(0.2, 5.0, 20);
        type Pair = (&'static str, fn(Complex64) -> Complex64, fn(f64) -> f64);
        let pairs: [Pair; 3] = [
            ("1/z", |z| 1.0 / z, |_| 1.0),
            ("1/(z+1)", |z| 1.0 / (z + 1.0), |t| (-t).exp()),
            ("1/(z^2+1)", |z| 1.0 / (z * z + 1.0), f64::sin),
        ];
        let mut ok = true;
        let mut parts = Vec::new();
        for (name, f, exact) in pairs {
            let mut worst: f64 = 0.0;
            for &t in &ts {
                let v = ilt_valsa(&f, t, &p)?;
                worst = worst.max((v - exact(t)).abs() / exact(t).abs());
            }
            ok &= worst <= 1e-4;
            parts.push(format!("{name}: {worst:.2e}"));
        }
        Ok((ok, format!("max rel err {} (tol 1e-4)", parts.join(", "))))
    })
}

pub const ROUNDTRIP_N_SUM: usize = 1000;

pub fn criterion_3() -> CriterionResult {
    timed(3, "spline LT then analytic ILT roundtrip", Some(10.0), || {
        let sig = TestFunctionSpec::Composite { noise: 0.0 }.signal(200, 0)?;
        let poly = fit_piecewise_poly(&sig, 4)?.poly;
        let f = |z: Complex64| lt_piecewise_poly(&poly, z).unwrap_or(Complex64::new(f64::NAN, 0.0));
        // the jump at 2π limits the series; its error falls like 1/n_sum
        let p = IltParams { n_sum: ROUNDTRIP_N_SUM, ..IltParams::default() };
        let inside = linspace(0.1, DOMAIN_END - 0.1, 100);
        let mut sq = 0.0;
        for &t in &inside {
            sq += (ilt_valsa(&f, t, &p)? - composite(t)).powi(2);
        }
        let rmse = (sq / inside.len() as f64).sqrt();
        let (lo, hi) = (DOMAIN_END + 0.5, 3.0 * PI);
        let mut outside: f64 = 0.0;
        for k in 0..20 {
            let t = lo + (hi - lo) * (k as f64 + 0.5) / 20.0;
            outside = outside.max(ilt_valsa(&f, t, &p)?.abs());
        }
        Ok((
            rmse <= 1e-2 && outside <= 1e-2,
            format!("n_sum = {ROUNDTRIP_N_SUM}: RMSE = {rmse:.3e} on (0.1, 2π-0.1), max |f| = {outside:.3e} beyond 2π+0.5 (tol 1e-2)"),
        ))
    })
}

pub fn criterion_4() -> CriterionResult {
    timed(4, "randomized discrete ILT of sin(3x)", Some(60.0), || {
        let zs = ZSampler::Disk { r_min: 0.5, r_max: 3.0, re_min: 0.5 }.sample(400, &mut ChaCha12Rng::seed_from_u64(SEED))?;
        let set = sample_surface(&TestFunctionSpec::Sin { w: 3.0 }, &zs, 0.0, SEED)?;
        let truth = |t: f64| (3.0 * t).sin();
        let base = IltConfig { seed: SEED, ..IltConfig::for_sample_count(400) };
        let e = randomized_ilt(&set, &IltConfig { itn: 100, ..base.clone() })?;
        let median_rmse = curve_rmse(&e.grid, &e.median, truth, 0.0, 5.0);
        let mut means = Vec::new();
        for itn in [25, 100, 400] {
            let e = randomized_ilt(&set, &IltConfig { itn, ..base.clone() })?;
            means.push(curve_rmse(&e.grid, &e.mean, truth, 0.0, 5.0));
        }
        let monotone = means.windows(2).all(|w| w[1] <= w[0]);
        Ok((
            median_rmse <= 0.1 && monotone,
            format!(
                "median RMSE = {median_rmse:.4} (tol 0.1); mean RMSE at itn 25/100/400 = {:.4}/{:.4}/{:.4}",
                means[0], means[1], means[2]
            ),
        ))
    })
}

pub const SWEEP_SIZES: [usize; 5] = [8, 16, 32, 64, 128];

/// Wide band used for the decay experiment: entries of the transform matrix then scale like `1/n`.
pub fn wide_band() -> ZSampler {
    ZSampler::Band { re_max: 1.0, im_max: 400.0 }
}

pub fn criterion_5() -> CriterionResult {
    timed(5, "smallest singular value decay", Some(120.0), || {
        let sweep = singval_sweep(&SWEEP_SIZES, 1.2, PartitionScheme::SegmentsLeft, &wide_band(), 50, SEED)?;
        let fit = fit_gamma(&sweep)?;
        let means: Vec<String> = sweep.rows.iter().map(|r| format!("{:.3e}", r.mean_sigma_min)).collect();
        let ok = sweep.strictly_decreasing() && sweep.all_trials_valid && fit.gamma > 0.0 && fit.gamma < 2.0;
        Ok((ok, format!("mean σ_min [{}], γ = {:.3} (R² {:.3})", means.join(", "), fit.gamma, fit.r_squared)))
    })
}

pub fn criterion_6() -> CriterionResult {
    timed(6, "difference-matrix closed-form SVD", None, || {
        let (mut recon, mut sv): (f64, f64) = (0.0, 0.0);
        for n in 2..=12 {
            let d = diff_matrix_svd(n)?;
            recon = recon.max(d.reconstruction_error());
            let numeric = svd(&d.d)?;
            for (a, b) in numeric.singular_values.iter().zip(&d.factors.singular_values) {
                sv = sv.max((a - b).abs());
            }
        }
        Ok((
            recon <= 1e-12 && sv <= 1e-10,
            format!("max reconstruction err {recon:.2e} (tol 1e-12), max σ gap {sv:.2e} (tol 1e-10)"),
        ))
    })
}

pub fn criterion_7() -> CriterionResult {
    timed(7, "isotropy identities", Some(30.0), || {
        let trials = 200_000;
        let mut ok = true;
        let mut worst_z: f64 = 0.0;
        for (i, a) in [0.5, 1.0, 2.0].into_iter().enumerate() {
            let seed = SEED + i as u64;
            let u = isotropy_mc(PhaseDist::Uniform, a, trials, seed)?;
            let zu = (u.mean_c.value - 1.0).norm() / u.mean_c.std_error;
            let v = isotropy_mc(PhaseDist::VonMises { a }, a, trials, seed + 100)?;
            let zv = (v.mean_c.value - bessel_j0(a) / bessel_i0(a)?).norm() / v.mean_c.std_error;
            let zc = (v.mean_cc.value - 1.0).abs() / v.mean_cc.std_error;
            worst_z = worst_z.max(zu).max(zv).max(zc);
            ok &= zu <= 4.0 && zv <= 4.0 && zc <= 4.0;
        }
        let m = uniform_phase_second_moment(1.0, 1.0, 1_000_000, SEED)?;
        let rel = (m.estimate.value - m.reference).abs() / m.reference;
        ok &= rel <= 0.01;
        let mut quad: f64 = 0.0;
        for a in [0.0, 1.0, 2.5] {
            let (lhs, rhs) = phase_integral_identity(a)?;
            quad = quad.max((lhs - rhs).norm());
        }
        ok &= quad <= 1e-10;
        Ok((
            ok,
            format!("worst MC deviation {worst_z:.2} SE (tol 4), I0 moment rel err {rel:.2e} (tol 1e-2), quadrature err {quad:.1e} (tol 1e-10)"),
        ))
    })
}

pub fn criterion_8() -> CriterionResult {
    timed(8, "1/cosh series truncation", None, || {
        let mut worst: f64 = 0.0;
        for x in linspace(0.0, 3.0, 601) {
            worst = worst.max((cosh_inv_series(Complex64::new(x, 0.0), 10)?.re - 1.0 / x.cosh()).abs());
        }
        Ok((worst <= 0.05, format!("max err with 10 terms = {worst:.4} (tol 0.05)")))
    })
}

pub fn criterion_9() -> CriterionResult {
    timed(9, "partition distribution theory", None, || {
        let mut rng = ChaCha12Rng::seed_from_u64(SEED);
        let ks = exp_order_stats_check(4, 10_000, &mut rng)?;
        let ks_max = ks.iter().map(|r| r.ks).fold(0.0, f64::max);
        let mut gap: f64 = 0.0;
        for k in 1..=2 {
            let s = sample_uniform_ratio(k, 3, 100_000, &mut rng);
            gap = gap.max(ks_statistic(&s, |t| irwin_hall_ratio_cdf(k, 3, t).unwrap_or(f64::NAN)));
        }
        let q = DependenceQuery { i: 1, k: 2, u: 0.5, eps: 0.05, independent_control: false };
        let mut dep_ok = true;
        let mut dep = Vec::new();
        for scheme in [PartitionScheme::NormalizedUniform, PartitionScheme::NormalizedExponential] {
            let r = dependence_check(scheme, 4, q, 20_000, &mut rng)?;
            let c = dependence_check(scheme, 4, DependenceQuery { independent_control: true, ..q }, 20_000, &mut rng)?;
            dep_ok &= r.gap > 4.0 * r.std_error && c.gap <= 4.0 * c.std_error;
            dep.push(format!("{scheme}: gap {:.3} vs control {:.3}", r.gap, c.gap));
        }
        Ok((
            ks_max <= 0.02 && gap <= 0.01 && dep_ok,
            format!("Beta KS max {ks_max:.4} (tol 0.02), ratio CDF sup-gap {gap:.4} (tol 0.01), {}", dep.join(", ")),
        ))
    })
}

/// Continuous random spline on `[0, 2π]` with jittered knots.
fn random_spline(rng: &mut ChaCha12Rng, knots: &[f64], degree: usize) -> Result<crate::forward_lt::PiecewisePoly> {
    let y = knots.iter().map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
    Ok(fit_piecewise_poly(&TimeSignal::new(knots.to_vec(), y)?, degree)?.poly)
}

pub fn criterion_10() -> CriterionResult {
    timed(10, "derivative and linearity identities", None, || {
        let mut rng = ChaCha12Rng::seed_from_u64(SEED);
        let (mut deriv, mut lin): (f64, f64) = (0.0, 0.0);
        for trial in 0..50 {
            let pieces = rng.random_range(4..16);
            let h = DOMAIN_END / pieces as f64;
            let mut knots: Vec<f64> = (0..=pieces).map(|k| k as f64 * h).collect();
            for k in knots.iter_mut().take(pieces).skip(1) {
                *k += h * rng.random_range(-0.3..0.3);
            }
            let degree = if trial % 2 == 0 { 3 } else { 4 };
            let f = random_spline(&mut rng, &knots, degree)?;
            let g = random_spline(&mut rng, &knots, degree)?;
            let df = f.derivative();
            let (alpha, beta) = (rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
            let combo = f.scale_add(alpha, &g, beta)?;
            for _ in 0..20 {
                let s = Complex64::new(rng.random_range(0.1..5.0), rng.random_range(-10.0..10.0));
                let lf = lt_piecewise_poly(&f, s)?;
                let rhs = s * lf - f.eval(0.0) + (-DOMAIN_END * s).exp() * f.eval(DOMAIN_END);
                deriv = deriv.max((lt_piecewise_poly(&df, s)? - rhs).norm());
                let lg = lt_piecewise_poly(&g, s)?;
                lin = lin.max((lt_piecewise_poly(&combo, s)? - (alpha * lf + beta * lg)).norm());
            }
        }
        Ok((
            deriv <= 1e-10 && lin <= 1e-12,
            format!("derivative identity err {deriv:.2e} (tol 1e-10), linearity err {lin:.2e} (tol 1e-12)"),
        ))
    })
}

pub const ALL_CRITERIA: [u8; 10] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10];

pub fn run_criterion(id: u8) -> Option<CriterionResult> {
    Some(match id {
        1 => criterion_1(),
        2 => criterion_2(),
        3 => criterion_3(),
        4 => criterion_4(),
        5 => criterion_5(),
        6 => criterion_6(),
        7 => criterion_7(),
        8 => criterion_8(),
        9 => criterion_9(),
        10 => criterion_10(),
        _ => return None,
    })
}

/// Mean σ_min under the default disk sampler, for comparison with the wide band of criterion 5.
pub fn default_sampler_sweep_summary() -> Result<String> {
    let sweep = singval_sweep(&SWEEP_SIZES, 1.2, PartitionScheme::SegmentsLeft, &ZSampler::default(), 50, SEED)?;
    let means: Vec<String> = sweep.rows.iter().map(|r| format!("n={}: {:.2e}", r.n, r.mean_sigma_min)).collect();
    Ok(format!("default disk sampler mean σ_min {}", means.join(", ")))
}

