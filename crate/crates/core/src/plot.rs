//! Minimal standalone SVG line plots.

use std::fmt::Write as _;
use std::path::Path;

use crate::discrete_ilt::EnsembleResult;
use crate::error::{Error, Result};
use crate::io::write_text;
use crate::rmt_lab::SingvalSweep;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const MARGIN: (f64, f64, f64, f64) = (70.0, 160.0, 40.0, 50.0); // left, right, top, bottom
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub name: String,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub dashed: bool,
    pub markers: bool,
}

impl Series {
    pub fn line(name: impl Into<String>, x: Vec<f64>, y: Vec<f64>) -> Self {
        Self { name: name.into(), x, y, dashed: false, markers: false }
    }

    pub fn dashed(mut self) -> Self {
        self.dashed = true;
        self
    }

    pub fn with_markers(mut self) -> Self {
        self.markers = true;
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct PlotOptions {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub log_y: bool,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn nice_ticks(lo: f64, hi: f64) -> Vec<f64> {
    let span = hi - lo;
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0].iter().map(|m| m * mag).find(|s| span / s <= 6.0).unwrap_or(10.0 * mag);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|k| k as f64 * step).collect()
}

/// Renders the series to an SVG document.
pub fn render_svg(series: &[Series], opts: &PlotOptions) -> Result<String> {
    if series.is_empty() || series.iter().any(|s| s.x.is_empty()) {
        return Err(Error::InvalidInput("plot needs at least one nonempty series".into()));
    }
    if let Some(s) = series.iter().find(|s| s.x.len() != s.y.len()) {
        return Err(Error::InvalidInput(format!("series '{}' has mismatched lengths", s.name)));
    }
    let ty = |y: f64| if opts.log_y { y.log10() } else { y };
    let pts: Vec<(f64, f64)> = series
        .iter()
        .flat_map(|s| s.x.iter().zip(&s.y).map(|(&x, &y)| (x, ty(y))))
        .filter(|(x, y)| x.is_finite() && y.is_finite())
        .collect();
    if pts.is_empty() {
        return Err(Error::InvalidInput("no finite points to plot".into()));
    }
    let (mut x0, mut x1, mut y0, mut y1) = pts.iter().fold(
        (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY),
        |(a, b, c, d), &(x, y)| (a.min(x), b.max(x), c.min(y), d.max(y)),
    );
    if x1 - x0 <= 0.0 {
        x0 -= 0.5;
        x1 += 0.5;
    }
    if y1 - y0 <= 0.0 {
        y0 -= 0.5;
        y1 += 0.5;
    }
    let pad = 0.05 * (y1 - y0);
    let (y0, y1) = (y0 - pad, y1 + pad);
    let (ml, mr, mt, mb) = MARGIN;
    let pw = WIDTH - ml - mr;
    let ph = HEIGHT - mt - mb;
    let sx = |x: f64| ml + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| mt + (y1 - y) / (y1 - y0) * ph;

    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(w, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(w, r#"<text x="{}" y="22" text-anchor="middle" font-size="15">{}</text>"#, ml + pw / 2.0, escape(&opts.title));
    let _ = writeln!(w, r##"<rect x="{ml}" y="{mt}" width="{pw}" height="{ph}" fill="none" stroke="#444"/>"##);
    for t in nice_ticks(x0, x1) {
        let x = sx(t);
        let _ = writeln!(w, r##"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="#444"/>"##, mt + ph, mt + ph + 5.0);
        let _ = writeln!(w, r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#, mt + ph + 18.0, fmt_tick(t));
    }
    for t in nice_ticks(y0, y1) {
        let y = sy(t);
        let label = if opts.log_y { format!("1e{}", fmt_tick(t)) } else { fmt_tick(t) };
        let _ = writeln!(w, r##"<line x1="{:.2}" y1="{y:.2}" x2="{ml}" y2="{y:.2}" stroke="#444"/>"##, ml - 5.0);
        let _ = writeln!(w, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{label}</text>"#, ml - 8.0, y + 4.0);
    }
    let _ = writeln!(w, r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#, ml + pw / 2.0, HEIGHT - 10.0, escape(&opts.x_label));
    let y_label = if opts.log_y { format!("{} (log10)", opts.y_label) } else { opts.y_label.clone() };
    let _ = writeln!(
        w,
        r#"<text x="16" y="{0}" text-anchor="middle" transform="rotate(-90 16 {0})">{1}</text>"#,
        mt + ph / 2.0,
        escape(&y_label)
    );
    for (k, s) in series.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let coords: Vec<String> = s
            .x
            .iter()
            .zip(&s.y)
            .map(|(&x, &y)| (x, ty(y)))
            .filter(|(x, y)| x.is_finite() && y.is_finite())
            .map(|(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        let dash = if s.dashed { r#" stroke-dasharray="6 4""# } else { "" };
        let _ = writeln!(w, r#"<polyline fill="none" stroke="{color}" stroke-width="1.6"{dash} points="{}"/>"#, coords.join(" "));
        if s.markers {
            for c in &coords {
                let (cx, cy) = c.split_once(',').expect("formatted pair");
                let _ = writeln!(w, r#"<circle cx="{cx}" cy="{cy}" r="3" fill="{color}"/>"#);
            }
        }
        let ly = mt + 14.0 + 18.0 * k as f64;
        let lx = ml + pw + 12.0;
        let _ = writeln!(w, r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"{dash}/>"#, lx + 22.0);
        let _ = writeln!(w, r#"<text x="{}" y="{}">{}</text>"#, lx + 28.0, ly + 4.0, escape(&s.name));
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn fmt_tick(v: f64) -> String {
    let s = format!("{:.4}", v);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

pub fn emit_plot(series: &[Series], opts: &PlotOptions, path: &Path) -> Result<()> {
    write_text(path, &render_svg(series, opts)?)
}

/// Median with the interquartile band, and optionally the truth.
pub fn ensemble_series(e: &EnsembleResult, truth: Option<&dyn Fn(f64) -> f64>) -> Vec<Series> {
    let mut s = vec![
        Series::line("median", e.grid.clone(), e.median.clone()),
        Series::line("q25", e.grid.clone(), e.q25.clone()).dashed(),
        Series::line("q75", e.grid.clone(), e.q75.clone()).dashed(),
    ];
    if let Some(f) = truth {
        s.push(Series::line("truth", e.grid.clone(), e.grid.iter().map(|&t| f(t)).collect()));
    }
    s
}

pub fn sweep_series(sweep: &SingvalSweep, name: &str) -> Series {
    Series::line(
        name,
        sweep.rows.iter().map(|r| r.n as f64).collect(),
        sweep.rows.iter().map(|r| r.mean_sigma_min).collect(),
    )
    .with_markers()
}
