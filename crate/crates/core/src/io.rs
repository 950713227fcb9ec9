//! CSV and JSON files for signals, sample sets, ensembles and sweeps.
//!
//! Floats are written in shortest round-trip form, so a reload is bit-exact.
//! Every file is written to a temporary sibling and renamed into place.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::discrete_ilt::{EnsembleResult, KimeSampleSet};
use crate::error::{Error, Result};
use crate::forward_lt::{LtSample, TimeSignal};
use crate::numerics::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignalRow {
    pub t: f64,
    pub y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleRow {
    pub re_z: f64,
    pub im_z: f64,
    #[serde(rename = "re_F")]
    pub re_f: f64,
    #[serde(rename = "im_F")]
    pub im_f: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnsembleRow {
    pub t: f64,
    pub mean: f64,
    pub median: f64,
    pub q25: f64,
    pub q75: f64,
}

impl EnsembleRow {
    pub fn from_result(e: &EnsembleResult) -> Vec<Self> {
        (0..e.grid.len())
            .map(|i| EnsembleRow { t: e.grid[i], mean: e.mean[i], median: e.median[i], q25: e.q25[i], q75: e.q75[i] })
            .collect()
    }
}

/// Writes `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, fill: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(path, e))?;
    {
        let mut w = BufWriter::new(tmp.as_file());
        fill(&mut w)?;
        w.flush().map_err(|e| Error::io(path, e))?;
    }
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

fn csv_error(path: &Path, e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(source) => Error::io(path, source),
        other => Error::Parse(format!("{}: {other:?}", path.display())),
    }
}

pub fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    write_atomic(path, |w| {
        let mut out = csv::Writer::from_writer(w);
        for r in rows {
            out.serialize(r).map_err(|e| csv_error(path, e))?;
        }
        out.flush().map_err(|e| Error::io(path, e))
    })
}

pub fn read_csv<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(file)
        .deserialize()
        .map(|r| r.map_err(|e| csv_error(path, e)))
        .collect()
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    write_atomic(path, |w| {
        serde_json::to_writer_pretty(&mut *w, value).map_err(|e| Error::Parse(e.to_string()))?;
        writeln!(w).map_err(|e| Error::io(path, e))
    })
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_reader(std::io::BufReader::new(file))
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Writes `contents` verbatim.
pub fn write_text(path: &Path, contents: &str) -> Result<()> {
    write_atomic(path, |w| w.write_all(contents.as_bytes()).map_err(|e| Error::io(path, e)))
}

pub fn write_signal(path: &Path, sig: &TimeSignal) -> Result<()> {
    let rows: Vec<SignalRow> = sig.times().iter().zip(sig.values()).map(|(&t, &y)| SignalRow { t, y }).collect();
    write_csv(path, &rows)
}

pub fn read_signal(path: &Path) -> Result<TimeSignal> {
    let rows: Vec<SignalRow> = read_csv(path)?;
    TimeSignal::new(rows.iter().map(|r| r.t).collect(), rows.iter().map(|r| r.y).collect())
}

pub fn write_lt_samples(path: &Path, samples: &[LtSample]) -> Result<()> {
    let rows: Vec<SampleRow> = samples
        .iter()
        .map(|s| SampleRow { re_z: s.z.re, im_z: s.z.im, re_f: s.value.re, im_f: s.value.im })
        .collect();
    write_csv(path, &rows)
}

pub fn read_lt_samples(path: &Path) -> Result<Vec<LtSample>> {
    let rows: Vec<SampleRow> = read_csv(path)?;
    Ok(rows
        .iter()
        .map(|r| LtSample { z: Complex64::new(r.re_z, r.im_z), value: Complex64::new(r.re_f, r.im_f) })
        .collect())
}

pub fn write_sample_set(path: &Path, set: &KimeSampleSet) -> Result<()> {
    write_lt_samples(path, &set.to_samples())
}

pub fn read_sample_set(path: &Path) -> Result<KimeSampleSet> {
    KimeSampleSet::from_samples(&read_lt_samples(path)?)
}

pub fn write_ensemble(path: &Path, e: &EnsembleResult) -> Result<()> {
    write_csv(path, &EnsembleRow::from_result(e))
}

pub fn read_ensemble(path: &Path) -> Result<Vec<EnsembleRow>> {
    read_csv(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::Partition;

    #[test]
    fn signal_round_trip_is_bitwise() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sig.csv");
        let t: Vec<f64> = (0..50).map(|i| i as f64 * 0.1 + 1e-17 * i as f64).collect();
        let y: Vec<f64> = t.iter().map(|x| x.sin() / 3.0 + f64::MIN_POSITIVE).collect();
        let sig = TimeSignal::new(t, y).unwrap();
        write_signal(&path, &sig).unwrap();
        assert_eq!(read_signal(&path).unwrap(), sig);
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("t,y\n"));
    }

    #[test]
    fn sample_set_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.csv");
        let z = vec![Complex64::new(0.1, -3.3), Complex64::new(2.0 / 3.0, 1e300)];
        let b = vec![Complex64::new(-1.0 / 7.0, 5e-320), Complex64::new(0.0, -0.0)];
        let set = KimeSampleSet::new(z, b).unwrap();
        write_sample_set(&path, &set).unwrap();
        assert_eq!(read_sample_set(&path).unwrap(), set);
        assert!(std::fs::read_to_string(&path).unwrap().starts_with("re_z,im_z,re_F,im_F\n"));
    }

    #[test]
    fn json_partition_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.json");
        let p = Partition::new(vec![0.0, 0.1 + 0.2, 1.0 / 3.0, crate::forward_lt::DOMAIN_END]).unwrap();
        write_json(&path, &p).unwrap();
        assert_eq!(read_json::<Partition>(&path).unwrap(), p);
    }

    #[test]
    fn missing_and_malformed_files() {
        let dir = tempfile::tempdir().unwrap();
        let missing = read_signal(&dir.path().join("nope.csv")).unwrap_err();
        assert_eq!(missing.kind(), crate::error::ErrorKind::Io);
        let bad = dir.path().join("bad.csv");
        std::fs::write(&bad, "t,y\n1,abc\n").unwrap();
        assert!(matches!(read_signal(&bad), Err(Error::Parse(_))));
        assert!(write_signal(&dir.path().join("no/such/dir.csv"), &TimeSignal::new(vec![0.0, 1.0], vec![0.0, 0.0]).unwrap()).is_err());
    }
}
