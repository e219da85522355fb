use std::io::{Read, Write};

use crate::error::{Error, Result};

pub const RECORD_HEADER: [&str; 11] = [
    "dataset", "method", "fraction", "p", "k", "fis_mean", "fis_std", "lie", "log_lie", "wall_ms", "seed",
];

/// One (dataset, method, fraction, p) cell of a sweep. Simulation-free
/// sweeps leave `fis_mean` and `fis_std` as NaN.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRecord {
    pub dataset: String,
    pub method: String,
    pub fraction: f64,
    pub p: f64,
    pub k: usize,
    pub fis_mean: f64,
    pub fis_std: f64,
    pub lie: f64,
    pub log_lie: f64,
    pub wall_ms: f64,
    pub seed: u64,
}

impl ExperimentRecord {
    /// Every field except `wall_ms`; equal for reproducible re-runs.
    pub fn deterministic_key(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.dataset,
            self.method,
            self.fraction,
            self.p,
            self.k,
            self.fis_mean,
            self.fis_std,
            self.lie,
            self.log_lie,
            self.seed
        )
    }
}

pub fn write_records<W: Write>(records: &[ExperimentRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RECORD_HEADER)?;
    for r in records {
        w.write_record([
            r.dataset.clone(),
            r.method.clone(),
            r.fraction.to_string(),
            r.p.to_string(),
            r.k.to_string(),
            r.fis_mean.to_string(),
            r.fis_std.to_string(),
            r.lie.to_string(),
            r.log_lie.to_string(),
            format!("{:.3}", r.wall_ms),
            r.seed.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn field<T: std::str::FromStr>(rec: &csv::StringRecord, idx: usize, line: usize) -> Result<T> {
    let cell = rec.get(idx).unwrap_or("");
    cell.trim()
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("record {line}: cannot parse {} = {cell:?}", RECORD_HEADER[idx])))
}

pub fn read_records<R: Read>(input: R) -> Result<Vec<ExperimentRecord>> {
    let mut reader = csv::Reader::from_reader(input);
    let header: Vec<String> = reader.headers()?.iter().map(str::to_owned).collect();
    if header != RECORD_HEADER {
        return Err(Error::InvalidArgument(format!("unexpected record header {header:?}")));
    }
    let mut out = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec?;
        let line = i + 2;
        out.push(ExperimentRecord {
            dataset: field(&rec, 0, line)?,
            method: field(&rec, 1, line)?,
            fraction: field(&rec, 2, line)?,
            p: field(&rec, 3, line)?,
            k: field(&rec, 4, line)?,
            fis_mean: field(&rec, 5, line)?,
            fis_std: field(&rec, 6, line)?,
            lie: field(&rec, 7, line)?,
            log_lie: field(&rec, 8, line)?,
            wall_ms: field(&rec, 9, line)?,
            seed: field(&rec, 10, line)?,
        });
    }
    Ok(out)
}
