use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use laplaceforge::analytic_ilt::{ilt_on_grid, IltParams};
use laplaceforge::discrete_ilt::{randomized_ilt, Aggregation, IltConfig};
use laplaceforge::forward_lt::{fit_piecewise_poly, lt_piecewise_poly, lt_signal};
use laplaceforge::io::{read_sample_set, read_signal, write_ensemble, write_json, write_lt_samples, write_sample_set, write_signal};
use laplaceforge::partitions::{exp_order_stats_check, gen_partition, PartitionScheme};
use laplaceforge::plot::{emit_plot, ensemble_series, sweep_series, PlotOptions, Series};
use laplaceforge::rmt_lab::{
    bessel_zero_partition, fit_gamma, isotropy_mc, singval_sweep, PhaseDist, ZSampler,
};
use laplaceforge::surface::{sample_surface, TestFunctionSpec, ZGrid};
use laplaceforge::validation::{run_criterion, sin_case, ALL_CRITERIA};
use laplaceforge::{Complex64, Error, ErrorKind, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde_json::json;

#[derive(Parser)]
#[command(name = "laplaceforge", version, about = "Forward and inverse Laplace transforms on [0, 2π]")]
struct Cli {
    /// Worker threads (0 = all cores); falls back to LAPLACEFORGE_THREADS.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Transform a sampled signal (CSV `t,y`) through a spline fit.
    Lt {
        #[arg(long)]
        input: PathBuf,
        /// Evaluation points, e.g. `re=0.1,im=0..20,count=200`.
        #[arg(long)]
        z_line: ZGrid,
        #[arg(long, default_value_t = 4)]
        degree: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Invert a known transform on a time grid.
    IltAnalytic(IltAnalyticArgs),
    /// Randomized quantized inversion of a sampled surface.
    IltDiscrete(IltDiscreteArgs),
    /// Sample the transform of a test function, optionally with noise.
    SampleSurface {
        /// `sin`, `sin:W`, `composite` or `composite:SIGMA`.
        #[arg(long, default_value = "sin", conflicts_with = "signal")]
        function: TestFunctionSpec,
        /// Tabulated signal (CSV `t,y`) instead of a named function.
        #[arg(long)]
        signal: Option<PathBuf>,
        /// e.g. `disk,r=0.5..3,re_min=0.5,count=400`.
        #[arg(long)]
        z_grid: ZGrid,
        #[arg(long, default_value_t = 0.0)]
        noise: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Smallest singular value of the transform matrix against partition size.
    ExpSingvals {
        #[arg(long, value_delimiter = ',', default_value = "8,16,32,64,128")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 1.2)]
        aspect: f64,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value = "segments-left")]
        scheme: PartitionScheme,
        /// `disk,r=0.5..3,re_min=0` or `band,re_max=1,im_max=400`.
        #[arg(long, default_value = "disk")]
        sampler: ZSampler,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        fit: Option<PathBuf>,
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Draw a partition, or test the order-statistics law of normalized breakpoints.
    ExpPartition {
        #[arg(long, default_value = "segments-left")]
        scheme: PartitionScheme,
        #[arg(long, default_value_t = 10)]
        cells: usize,
        /// Place breakpoints at zeros of J0(r t) instead of drawing them.
        #[arg(long)]
        bessel_r: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also run the Beta KS check with this many draws (n = cells - 1).
        #[arg(long)]
        ks_trials: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Monte-Carlo moments of e^{a e^{iφ}} under a phase law.
    ExpIsotropy {
        #[arg(long, default_value = "uniform", value_parser = ["uniform", "von-mises"])]
        dist: String,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, default_value_t = 100_000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the end-to-end checks.
    Validate {
        /// Single report instead of the full check list.
        #[arg(long, value_parser = ["sin"])]
        case: Option<String>,
        #[arg(long, default_value_t = 200)]
        points: usize,
        #[arg(long, default_value_t = 4)]
        degree: usize,
        #[arg(long, value_delimiter = ',')]
        criteria: Vec<u8>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct IltAnalyticArgs {
    /// `inv-z`, `inv-z-plus-1`, `inv-z2-plus-1`, or a test function such as `sin:2` or `composite:0`.
    #[arg(long, default_value = "inv-z2-plus-1", conflicts_with = "signal")]
    transform: String,
    /// Invert the spline transform of this signal (CSV `t,y`).
    #[arg(long)]
    signal: Option<PathBuf>,
    #[arg(long, default_value_t = 0.2)]
    t_min: f64,
    #[arg(long, default_value_t = 5.0)]
    t_max: f64,
    #[arg(long, default_value_t = 20)]
    count: usize,
    #[arg(long, default_value_t = 6.0)]
    a: f64,
    #[arg(long, default_value_t = 50)]
    n_sum: usize,
    #[arg(long, default_value_t = 12)]
    n_euler: usize,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    plot: Option<PathBuf>,
}

#[derive(Args)]
struct IltDiscreteArgs {
    /// Sample set CSV `re_z,im_z,re_F,im_F`.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    itn: Option<usize>,
    #[arg(long)]
    n1: Option<usize>,
    #[arg(long)]
    n2: Option<usize>,
    #[arg(long)]
    rcond: Option<f64>,
    #[arg(long)]
    scheme: Option<PartitionScheme>,
    #[arg(long, default_value = "median")]
    aggregation: Aggregation,
    #[arg(long, default_value_t = 257)]
    grid_points: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    diagnostics: Option<PathBuf>,
    #[arg(long)]
    plot: Option<PathBuf>,
}

fn configure_threads(flag: Option<usize>) -> Result<()> {
    let threads = match flag {
        Some(n) => n,
        None => match std::env::var("LAPLACEFORGE_THREADS") {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("LAPLACEFORGE_THREADS = '{v}' is not a count")))?,
            Err(_) => 0,
        },
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))
}

fn known_transform(name: &str) -> Result<Box<dyn Fn(Complex64) -> Complex64 + Sync>> {
    Ok(match name {
        "inv-z" => Box::new(|z| 1.0 / z),
        "inv-z-plus-1" => Box::new(|z| 1.0 / (z + 1.0)),
        "inv-z2-plus-1" => Box::new(|z| 1.0 / (z * z + 1.0)),
        other => {
            let spec: TestFunctionSpec = other.parse()?;
            Box::new(move |z| {
                spec.laplace(&[z], 0).map(|v| v[0]).unwrap_or(Complex64::new(f64::NAN, f64::NAN))
            })
        }
    })
}

fn ilt_analytic(args: IltAnalyticArgs) -> Result<()> {
    if args.count < 2 || !(args.t_min > 0.0 && args.t_max > args.t_min) {
        return Err(Error::InvalidInput("need 0 < t_min < t_max and count >= 2".into()));
    }
    let p = IltParams { a_param: args.a, n_sum: args.n_sum, n_euler: args.n_euler };
    let ts: Vec<f64> = (0..args.count)
        .map(|k| args.t_min + (args.t_max - args.t_min) * k as f64 / (args.count - 1) as f64)
        .collect();
    let f: Box<dyn Fn(Complex64) -> Complex64 + Sync> = match &args.signal {
        Some(path) => {
            let sig = read_signal(path)?;
            let degree = if sig.len() >= 5 { 4 } else { 3 };
            let poly = fit_piecewise_poly(&sig, degree)?.poly;
            Box::new(move |z| lt_piecewise_poly(&poly, z).unwrap_or(Complex64::new(f64::NAN, f64::NAN)))
        }
        None => known_transform(&args.transform)?,
    };
    let out = ilt_on_grid(&*f, &ts, &p)?;
    write_signal(&args.out, &out)?;
    if let Some(plot) = &args.plot {
        let opts = PlotOptions { title: "Inverse transform".into(), x_label: "t".into(), y_label: "f(t)".into(), log_y: false };
        emit_plot(&[Series::line("estimate", out.times().to_vec(), out.values().to_vec())], &opts, plot)?;
    }
    Ok(())
}

fn ilt_discrete(args: IltDiscreteArgs) -> Result<()> {
    let set = read_sample_set(&args.input)?;
    let defaults = IltConfig::for_sample_count(set.len());
    let n1 = args.n1.unwrap_or(defaults.n1);
    let cfg = IltConfig {
        n1,
        n2: args.n2.unwrap_or(if args.n1.is_some() { 2 * n1 } else { defaults.n2 }),
        itn: args.itn.unwrap_or(defaults.itn),
        rcond: args.rcond.unwrap_or(defaults.rcond),
        seed: args.seed,
        partition_scheme: args.scheme.unwrap_or(defaults.partition_scheme),
        aggregation: args.aggregation,
        grid_points: args.grid_points,
    };
    let est = randomized_ilt(&set, &cfg)?;
    write_ensemble(&args.out, &est)?;
    if let Some(path) = &args.diagnostics {
        write_json(path, &est.diagnostics(&cfg))?;
    }
    if let Some(path) = &args.plot {
        let opts = PlotOptions { title: "Randomized inversion".into(), x_label: "t".into(), y_label: "f(t)".into(), log_y: false };
        emit_plot(&ensemble_series(&est, None), &opts, path)?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    configure_threads(cli.threads)?;
    match cli.command {
        Command::Lt { input, z_line, degree, out, seed } => {
            let sig = read_signal(&input)?;
            let zs = z_line.points(seed)?;
            write_lt_samples(&out, &lt_signal(&sig, &zs, degree)?)
        }
        Command::IltAnalytic(args) => ilt_analytic(args),
        Command::IltDiscrete(args) => ilt_discrete(args),
        Command::SampleSurface { function, signal, z_grid, noise, seed, out } => {
            let spec = match signal {
                Some(path) => TestFunctionSpec::Custom { signal: read_signal(&path)? },
                None => function,
            };
            let zs = z_grid.points(seed)?;
            write_sample_set(&out, &sample_surface(&spec, &zs, noise, seed)?)
        }
        Command::ExpSingvals { sizes, aspect, trials, scheme, sampler, seed, out, fit, plot } => {
            let sweep = singval_sweep(&sizes, aspect, scheme, &sampler, trials, seed)?;
            laplaceforge::io::write_csv(&out, &sweep.rows)?;
            if let Some(path) = fit {
                write_json(&path, &fit_gamma(&sweep)?)?;
            }
            if let Some(path) = plot {
                let opts = PlotOptions {
                    title: format!("Mean smallest singular value, n' = {aspect} n"),
                    x_label: "n".into(),
                    y_label: "mean σ_min".into(),
                    log_y: true,
                };
                emit_plot(&[sweep_series(&sweep, &scheme.to_string())], &opts, &path)?;
            }
            Ok(())
        }
        Command::ExpPartition { scheme, cells, bessel_r, seed, ks_trials, out } => {
            let p = match bessel_r {
                Some(r) => bessel_zero_partition(r, cells.saturating_sub(1))?,
                None => gen_partition(scheme, cells, &mut ChaCha12Rng::seed_from_u64(seed))?,
            };
            write_json(&out, &p)?;
            if let Some(trials) = ks_trials {
                let rows = exp_order_stats_check(cells.saturating_sub(1), trials, &mut ChaCha12Rng::seed_from_u64(seed))?;
                println!("{}", serde_json::to_string_pretty(&rows).map_err(|e| Error::Parse(e.to_string()))?);
            }
            Ok(())
        }
        Command::ExpIsotropy { dist, a, trials, seed, out } => {
            let phase = if dist == "uniform" { PhaseDist::Uniform } else { PhaseDist::VonMises { a } };
            let est = isotropy_mc(phase, a, trials, seed)?;
            let reference = match phase {
                PhaseDist::Uniform => 1.0,
                PhaseDist::VonMises { a } => laplaceforge::numerics::bessel_j0(a) / laplaceforge::numerics::bessel_i0(a)?,
            };
            let record = json!({
                "dist": dist,
                "a": a,
                "trials": trials,
                "mean_c": [est.mean_c.value.re, est.mean_c.value.im],
                "mean_c_std_error": est.mean_c.std_error,
                "mean_c_reference": reference,
                "mean_cc": est.mean_cc.value,
                "mean_cc_std_error": est.mean_cc.std_error,
            });
            match out {
                Some(path) => write_json(&path, &record),
                None => {
                    println!("{record:#}");
                    Ok(())
                }
            }
        }
        Command::Validate { case, points, degree, criteria, out } => {
            let record = if case.is_some() {
                let r = sin_case(points, degree)?;
                println!("max |LT error| = {:.3e} over {} frequencies", r.max_abs_err, r.frequencies);
                serde_json::to_value(r)
            } else {
                let ids = if criteria.is_empty() { ALL_CRITERIA.to_vec() } else { criteria };
                let mut results = Vec::new();
                for id in ids {
                    let r = run_criterion(id).ok_or_else(|| Error::InvalidInput(format!("no criterion {id}")))?;
                    println!("{r}");
                    results.push(r);
                }
                let failed: Vec<u8> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
                if let Some(path) = &out {
                    write_json(path, &results)?;
                }
                if !failed.is_empty() {
                    return Err(Error::CheckFailed(format!("criteria {failed:?} failed")));
                }
                return Ok(());
            }
            .map_err(|e| Error::Parse(e.to_string()))?;
            if let Some(path) = out {
                write_json(&path, &record)?;
            }
            Ok(())
        }
    }
}

fn exit_code(kind: ErrorKind) -> u8 {
    match kind {
        ErrorKind::Usage => 1,
        ErrorKind::Io => 2,
        ErrorKind::Numeric => 3,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!("{}", json!({ "error": "usage", "message": e.to_string().trim() }));
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let kind = match e.kind() {
                ErrorKind::Usage => "usage",
                ErrorKind::Io => "io",
                ErrorKind::Numeric => "numeric",
            };
            eprintln!("{}", json!({ "error": kind, "message": e.to_string() }));
            ExitCode::from(exit_code(e.kind()))
        }
    }
}
