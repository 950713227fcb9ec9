use std::path::Path;
use std::process::{Command, Output};

use laplaceforge::forward_lt::TimeSignal;
use laplaceforge::io::{read_ensemble, read_lt_samples, read_sample_set, read_signal, write_signal};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_laplaceforge"))
        .args(args)
        .env_remove("LAPLACEFORGE_THREADS")
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn surface_then_discrete_inversion() {
    let dir = tempfile::tempdir().unwrap();
    let surf = dir.path().join("surf.csv");
    let ens = dir.path().join("ens.csv");
    let diag = dir.path().join("diag.json");
    ok(&["sample-surface", "--function", "sin:3", "--z-grid", "disk,r=0.5..3,re_min=0.5,count=120", "--seed", "4", "--out", s(&surf)]);
    let set = read_sample_set(&surf).unwrap();
    assert_eq!(set.len(), 120);
    ok(&[
        "ilt-discrete", "--input", s(&surf), "--itn", "6", "--grid-points", "65", "--seed", "9",
        "--out", s(&ens), "--diagnostics", s(&diag),
    ]);
    let rows = read_ensemble(&ens).unwrap();
    assert_eq!(rows.len(), 65);
    assert!(rows.iter().all(|r| r.q25 <= r.median && r.median <= r.q75));
    let d: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&diag).unwrap()).unwrap();
    assert_eq!(d["sigma_min_list"].as_array().unwrap().len(), 6);

    let again = dir.path().join("again.csv");
    ok(&["ilt-discrete", "--input", s(&surf), "--itn", "6", "--grid-points", "65", "--seed", "9", "--out", s(&again)]);
    assert_eq!(std::fs::read(&ens).unwrap(), std::fs::read(&again).unwrap());
}

#[test]
fn forward_transform_of_a_signal_file() {
    let dir = tempfile::tempdir().unwrap();
    let sig_path = dir.path().join("sig.csv");
    let out = dir.path().join("lt.csv");
    let sig = TimeSignal::sample(f64::sin, 0.0, 2.0 * std::f64::consts::PI, 200).unwrap();
    write_signal(&sig_path, &sig).unwrap();
    ok(&["lt", "--input", s(&sig_path), "--z-line", "re=0.5,im=0..10,count=11", "--out", s(&out)]);
    let samples = read_lt_samples(&out).unwrap();
    assert_eq!(samples.len(), 11);
    for smp in samples {
        let exact = laplaceforge::forward_lt::lt_sin_window(1.0, smp.z).unwrap();
        assert!((smp.value - exact).norm() < 1e-6);
    }
}

#[test]
fn analytic_inversion_grid() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("f.csv");
    let plot = dir.path().join("f.svg");
    ok(&["ilt-analytic", "--transform", "inv-z2-plus-1", "--count", "9", "--out", s(&out), "--plot", s(&plot)]);
    let sig = read_signal(&out).unwrap();
    assert_eq!(sig.len(), 9);
    for (t, y) in sig.times().iter().zip(sig.values()) {
        assert!((y - t.sin()).abs() < 1e-4);
    }
    assert!(std::fs::read_to_string(&plot).unwrap().starts_with("<svg"));
}

#[test]
fn experiments_write_their_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let sweep = dir.path().join("sweep.csv");
    let fit = dir.path().join("fit.json");
    ok(&["exp-singvals", "--sizes", "4,8,12,16", "--trials", "10", "--out", s(&sweep), "--fit", s(&fit)]);
    assert_eq!(std::fs::read_to_string(&sweep).unwrap().lines().count(), 5);
    let part = dir.path().join("p.json");
    ok(&["exp-partition", "--bessel-r", "2", "--cells", "4", "--out", s(&part)]);
    assert!(std::fs::read_to_string(&part).unwrap().contains("breakpoints"));
    let iso = dir.path().join("iso.json");
    ok(&["exp-isotropy", "--dist", "von-mises", "--a", "1.5", "--trials", "20000", "--out", s(&iso)]);
    assert!(std::fs::read_to_string(&iso).unwrap().contains("mean_cc"));
}

#[test]
fn validate_single_criterion() {
    let out = run(&["validate", "--criteria", "6"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("criterion  6 [PASS]"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(run(&["exp-singvals", "--trials", "1", "--out", s(&dir.path().join("w.csv"))]).status.code(), Some(1));
    let missing = dir.path().join("missing.csv");
    let out = run(&["ilt-discrete", "--input", s(&missing), "--out", s(&dir.path().join("o.csv"))]);
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(out.stderr.trim_ascii()).unwrap();
    assert_eq!(err["error"], "io");
    let part = dir.path().join("p.json");
    assert_eq!(run(&["exp-partition", "--bessel-r", "0.1", "--cells", "4", "--out", s(&part)]).status.code(), Some(1));
}
