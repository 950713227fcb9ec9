//! Test signals and synthetic kime-surfaces.

use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

use crate::discrete_ilt::KimeSampleSet;
use crate::error::{Error, Result};
use crate::forward_lt::{
    fit_piecewise_poly, lt_cos_window, lt_poly_many, lt_power_window, lt_sin_window, PiecewisePoly, TimeSignal,
    DOMAIN_END,
};
use crate::numerics::Complex64;
use crate::rmt_lab::ZSampler;

/// Default noise level of the composite signal.
pub const COMPOSITE_NOISE: f64 = 0.1;
/// Samples used when a transform has to go through a fitted spline.
pub const DENSE_POINTS: usize = 2001;

/// `2 sin x + cos 4x + sin(7x + 0.5) + 0.3(x - 3)(x - 5)`.
pub fn composite(x: f64) -> f64 {
    2.0 * x.sin() + (4.0 * x).cos() + (7.0 * x + 0.5).sin() + 0.3 * (x - 3.0) * (x - 5.0)
}

/// Exact transform of [`composite`] restricted to `[0, 2π]`.
pub fn lt_composite(z: Complex64) -> Result<Complex64> {
    let (s5, c5) = 0.5f64.sin_cos();
    let poly = 0.3 * lt_power_window(2, 0.0, DOMAIN_END, z)? - 2.4 * lt_power_window(1, 0.0, DOMAIN_END, z)?
        + 4.5 * lt_power_window(0, 0.0, DOMAIN_END, z)?;
    Ok(2.0 * lt_sin_window(1.0, z)? + lt_cos_window(4.0, z)? + c5 * lt_sin_window(7.0, z)? + s5 * lt_cos_window(7.0, z)?
        + poly)
}

#[derive(Debug, Clone, PartialEq)]
pub enum TestFunctionSpec {
    Sin { w: f64 },
    /// [`composite`] plus IID Gaussian noise of standard deviation `noise` at each sample.
    Composite { noise: f64 },
    Custom { signal: TimeSignal },
}

impl TestFunctionSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            TestFunctionSpec::Sin { w } if !(*w > 0.0 && w.is_finite()) => {
                Err(Error::InvalidInput(format!("sin frequency must be positive, got {w}")))
            }
            TestFunctionSpec::Composite { noise } if !(*noise >= 0.0 && noise.is_finite()) => {
                Err(Error::InvalidInput(format!("noise must be >= 0, got {noise}")))
            }
            _ => Ok(()),
        }
    }

    /// Noise-free value at `t`; zero outside the support.
    pub fn value(&self, t: f64) -> f64 {
        match self {
            TestFunctionSpec::Custom { signal } => {
                let (ts, ys) = (signal.times(), signal.values());
                if t < ts[0] || t > ts[ts.len() - 1] {
                    return 0.0;
                }
                let k = ts.partition_point(|&x| x <= t).clamp(1, ts.len() - 1);
                ys[k - 1] + (t - ts[k - 1]) / (ts[k] - ts[k - 1]) * (ys[k] - ys[k - 1])
            }
            _ if !(0.0..=DOMAIN_END).contains(&t) => 0.0,
            TestFunctionSpec::Sin { w } => (w * t).sin(),
            TestFunctionSpec::Composite { .. } => composite(t),
        }
    }

    /// `points` uniform samples on `[0, 2π]`, noisy for the composite signal.
    pub fn signal(&self, points: usize, seed: u64) -> Result<TimeSignal> {
        self.validate()?;
        match self {
            TestFunctionSpec::Custom { signal } => Ok(signal.clone()),
            TestFunctionSpec::Sin { w } => TimeSignal::sample(|t| (w * t).sin(), 0.0, DOMAIN_END, points),
            TestFunctionSpec::Composite { noise } => {
                let clean = TimeSignal::sample(composite, 0.0, DOMAIN_END, points)?;
                if *noise == 0.0 {
                    return Ok(clean);
                }
                let mut rng = ChaCha12Rng::seed_from_u64(seed);
                let y = clean.values().iter().map(|v| v + noise * rng.sample::<f64, _>(StandardNormal)).collect();
                TimeSignal::new(clean.times().to_vec(), y)
            }
        }
    }

    /// Transform at each `z`, in closed form unless the signal is noisy or tabulated.
    pub fn laplace(&self, zs: &[Complex64], seed: u64) -> Result<Vec<Complex64>> {
        self.validate()?;
        match self {
            TestFunctionSpec::Sin { w } => zs.iter().map(|&z| lt_sin_window(*w, z)).collect(),
            TestFunctionSpec::Composite { noise } if *noise == 0.0 => zs.iter().map(|&z| lt_composite(z)).collect(),
            _ => {
                let poly = self.spline(seed)?;
                Ok(lt_poly_many(&poly, zs)?.into_iter().map(|s| s.value).collect())
            }
        }
    }

    fn spline(&self, seed: u64) -> Result<PiecewisePoly> {
        let sig = self.signal(DENSE_POINTS, seed)?;
        let degree = if sig.len() >= 5 { 4 } else { 3 };
        Ok(fit_piecewise_poly(&sig, degree)?.poly)
    }
}

impl FromStr for TestFunctionSpec {
    type Err = Error;

    /// `sin`, `sin:W`, `composite` or `composite:SIGMA`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let num = |a: &str| a.trim().parse::<f64>().map_err(|_| Error::InvalidInput(format!("bad number '{a}'")));
        let spec = match (name.trim(), arg) {
            ("sin", None) => TestFunctionSpec::Sin { w: 1.0 },
            ("sin", Some(a)) => TestFunctionSpec::Sin { w: num(a)? },
            ("composite", None) => TestFunctionSpec::Composite { noise: COMPOSITE_NOISE },
            ("composite", Some(a)) => TestFunctionSpec::Composite { noise: num(a)? },
            _ => return Err(Error::InvalidInput(format!("unknown test function '{s}'"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Set of evaluation points.
#[derive(Debug, Clone, PartialEq)]
pub enum ZGrid {
    /// `count` points `re + i y` with `y` evenly spaced over `[im_lo, im_hi]`.
    Line { re: f64, im_lo: f64, im_hi: f64, count: usize },
    Random { sampler: ZSampler, count: usize },
}

impl ZGrid {
    pub fn points(&self, seed: u64) -> Result<Vec<Complex64>> {
        match self {
            ZGrid::Line { re, im_lo, im_hi, count } => {
                if *count == 0 || *re < 0.0 || !(re.is_finite() && im_lo.is_finite() && im_hi.is_finite()) {
                    return Err(Error::InvalidInput(format!("invalid z line {self:?}")));
                }
                let step = if *count > 1 { (im_hi - im_lo) / (*count - 1) as f64 } else { 0.0 };
                Ok((0..*count).map(|k| Complex64::new(*re, im_lo + step * k as f64)).collect())
            }
            ZGrid::Random { sampler, count } => sampler.sample(*count, &mut ChaCha12Rng::seed_from_u64(seed)),
        }
    }
}

fn parse_range(v: &str) -> Result<(f64, f64)> {
    let (a, b) = v.split_once("..").ok_or_else(|| Error::InvalidInput(format!("expected lo..hi, got '{v}'")))?;
    Ok((parse_num(a)?, parse_num(b)?))
}

fn parse_num(v: &str) -> Result<f64> {
    v.trim().parse().map_err(|_| Error::InvalidInput(format!("bad number '{v}'")))
}

fn key_values(parts: &[&str]) -> Result<std::collections::BTreeMap<String, String>> {
    parts
        .iter()
        .map(|p| {
            let (k, v) = p.split_once('=').ok_or_else(|| Error::InvalidInput(format!("expected key=value, got '{p}'")))?;
            Ok((k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

fn split_kind(s: &str) -> (&str, Vec<&str>) {
    let parts: Vec<&str> = s.split(',').map(str::trim).filter(|p| !p.is_empty()).collect();
    match parts.first() {
        Some(&k) if !k.contains('=') => (k, parts[1..].to_vec()),
        _ => ("line", parts),
    }
}

fn sampler_from(kind: &str, kv: &std::collections::BTreeMap<String, String>, src: &str) -> Result<ZSampler> {
    let take = |k: &str| kv.get(k).ok_or_else(|| Error::InvalidInput(format!("'{src}' lacks '{k}'")));
    let sampler = match kind {
        "disk" => {
            let (r_min, r_max) = parse_range(take("r")?)?;
            let re_min = kv.get("re_min").map(|v| parse_num(v)).transpose()?.unwrap_or(0.0);
            ZSampler::Disk { r_min, r_max, re_min }
        }
        "band" => ZSampler::Band { re_max: parse_num(take("re_max")?)?, im_max: parse_num(take("im_max")?)? },
        _ => return Err(Error::InvalidInput(format!("unknown sampler '{kind}' in '{src}'"))),
    };
    sampler.validate()?;
    Ok(sampler)
}

impl FromStr for ZSampler {
    type Err = Error;

    /// `disk`, `disk,r=0.5..3,re_min=0.5` or `band,re_max=1,im_max=400`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, parts) = split_kind(s);
        if kind == "disk" && parts.is_empty() {
            return Ok(ZSampler::default());
        }
        sampler_from(kind, &key_values(&parts)?, s)
    }
}

impl FromStr for ZGrid {
    type Err = Error;

    /// `re=0.1,im=0..20,count=200`, `disk,r=0.5..3,re_min=0.5,count=400` or `band,re_max=1,im_max=400,count=100`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, parts) = split_kind(s);
        let kv = key_values(&parts)?;
        let count: usize = kv
            .get("count")
            .ok_or_else(|| Error::InvalidInput(format!("z grid '{s}' lacks 'count'")))?
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad count in '{s}'")))?;
        if kind == "line" {
            let take = |k: &str| kv.get(k).ok_or_else(|| Error::InvalidInput(format!("z grid '{s}' lacks '{k}'")));
            let (im_lo, im_hi) = parse_range(take("im")?)?;
            return Ok(ZGrid::Line { re: parse_num(take("re")?)?, im_lo, im_hi, count });
        }
        Ok(ZGrid::Random { sampler: sampler_from(kind, &kv, s)?, count })
    }
}

/// Exact transform of `spec` at `zs` plus circular complex Gaussian noise with `E|ε|² = sigma_f²`.
pub fn sample_surface(spec: &TestFunctionSpec, zs: &[Complex64], sigma_f: f64, seed: u64) -> Result<KimeSampleSet> {
    if !(sigma_f >= 0.0 && sigma_f.is_finite()) {
        return Err(Error::InvalidInput(format!("surface noise must be >= 0, got {sigma_f}")));
    }
    if let Some(z) = zs.iter().find(|z| z.re < 0.0) {
        return Err(Error::InvalidInput(format!("Re z must be >= 0, got {z}")));
    }
    let mut b = spec.laplace(zs, seed)?;
    if sigma_f > 0.0 {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        rng.set_stream(1);
        let s = sigma_f * std::f64::consts::FRAC_1_SQRT_2;
        for v in &mut b {
            *v += Complex64::new(s * rng.sample::<f64, _>(StandardNormal), s * rng.sample::<f64, _>(StandardNormal));
        }
    }
    KimeSampleSet::new(zs.to_vec(), b)
}
