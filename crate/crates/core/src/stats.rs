//! Friedman ranking test with the Iman–Davenport correction and Holm
//! step-down post-hoc comparison against a control method.

use std::io::{Read, Write};

use statrs::distribution::{ChiSquared, ContinuousCDF, FisherSnedecor, Normal};

use crate::error::{Error, Result};

/// Problems × methods table of results.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultMatrix {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub values: Vec<Vec<f64>>,
    pub higher_is_better: bool,
}

impl ResultMatrix {
    pub fn new(rows: Vec<String>, cols: Vec<String>, values: Vec<Vec<f64>>, higher_is_better: bool) -> Result<Self> {
        if values.len() != rows.len() {
            return Err(Error::InvalidArgument(format!(
                "{} row labels for {} rows",
                rows.len(),
                values.len()
            )));
        }
        if let Some(bad) = values.iter().position(|r| r.len() != cols.len()) {
            return Err(Error::InvalidArgument(format!(
                "row {bad} has {} values, expected {}",
                values[bad].len(),
                cols.len()
            )));
        }
        if values.iter().flatten().any(|v| v.is_nan()) {
            return Err(Error::InvalidArgument("matrix contains NaN cells".into()));
        }
        Ok(Self {
            rows,
            cols,
            values,
            higher_is_better,
        })
    }

    /// Number of problems.
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// Number of methods.
    pub fn k(&self) -> usize {
        self.cols.len()
    }

    /// Reads `problem,method1,method2,...` CSV.
    pub fn from_csv<R: Read>(input: R, higher_is_better: bool) -> Result<Self> {
        let mut reader = csv::Reader::from_reader(input);
        let cols: Vec<String> = reader.headers()?.iter().skip(1).map(str::to_owned).collect();
        let mut rows = Vec::new();
        let mut values = Vec::new();
        for record in reader.records() {
            let record = record?;
            rows.push(record.get(0).unwrap_or_default().to_owned());
            let row = record
                .iter()
                .skip(1)
                .map(|cell| {
                    cell.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::InvalidArgument(format!("bad number {cell:?}")))
                })
                .collect::<Result<Vec<f64>>>()?;
            values.push(row);
        }
        Self::new(rows, cols, values, higher_is_better)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["problem".to_owned()];
        header.extend(self.cols.iter().cloned());
        w.write_record(&header)?;
        for (label, row) in self.rows.iter().zip(&self.values) {
            let mut rec = vec![label.clone()];
            rec.extend(row.iter().map(f64::to_string));
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Ranks within one row, 1 = best, ties get the mean of their ranks.
pub fn rank_row(row: &[f64], higher_is_better: bool) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..row.len()).collect();
    idx.sort_by(|&a, &b| {
        if higher_is_better {
            row[b].total_cmp(&row[a])
        } else {
            row[a].total_cmp(&row[b])
        }
    });
    let mut ranks = vec![0.0; row.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i + 1;
        while j < idx.len() && row[idx[j]] == row[idx[i]] {
            j += 1;
        }
        // positions i..j share rank mean of (i+1)..=j
        let mean = (i + 1 + j) as f64 / 2.0;
        for &t in &idx[i..j] {
            ranks[t] = mean;
        }
        i = j;
    }
    ranks
}

/// Average rank `R_j` of every method.
pub fn friedman_ranks(m: &ResultMatrix) -> Result<Vec<f64>> {
    if m.k() < 2 || m.n() < 2 {
        return Err(Error::InvalidArgument(format!(
            "Friedman test needs at least 2 methods and 2 problems (got k = {}, n = {})",
            m.k(),
            m.n()
        )));
    }
    let mut sums = vec![0.0; m.k()];
    for row in &m.values {
        for (s, r) in sums.iter_mut().zip(rank_row(row, m.higher_is_better)) {
            *s += r;
        }
    }
    Ok(sums.into_iter().map(|s| s / m.n() as f64).collect())
}

/// `χ²_F = 12n / (k(k+1)) · (Σ R_j² − k(k+1)²/4)`.
pub fn friedman_statistic(ranks: &[f64], n: usize) -> f64 {
    let k = ranks.len() as f64;
    let n = n as f64;
    let sum_sq: f64 = ranks.iter().map(|r| r * r).sum();
    12.0 * n / (k * (k + 1.0)) * (sum_sq - k * (k + 1.0).powi(2) / 4.0)
}

/// `F_ID = (n−1)χ²_F / (n(k−1) − χ²_F)`; `+∞` when the denominator vanishes.
pub fn iman_davenport(chi2: f64, n: usize, k: usize) -> f64 {
    let n = n as f64;
    let k = k as f64;
    let denom = n * (k - 1.0) - chi2;
    if denom <= 1e-12 * n * (k - 1.0) {
        f64::INFINITY
    } else {
        (n - 1.0) * chi2 / denom
    }
}

/// Upper-tail p-value of `χ²_F` on `k − 1` degrees of freedom.
pub fn friedman_p_value(chi2: f64, k: usize) -> f64 {
    let dist = ChiSquared::new((k - 1) as f64).expect("k >= 2");
    dist.sf(chi2.max(0.0))
}

/// Upper-tail p-value of `F_ID` on `(k−1, (n−1)(k−1))` degrees of freedom.
pub fn iman_davenport_p_value(f_id: f64, n: usize, k: usize) -> f64 {
    if f_id.is_infinite() {
        return 0.0;
    }
    let dist = FisherSnedecor::new((k - 1) as f64, ((n - 1) * (k - 1)) as f64).expect("n, k >= 2");
    dist.sf(f_id.max(0.0))
}

/// Holm step-down adjustment of ascending p-values from `m` comparisons:
/// `APV_i = min(1, max_{j≤i} (m − j + 1)·p_j)`.
pub fn holm_adjust(pvals: &[f64], m: usize) -> Result<Vec<f64>> {
    if pvals.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Unsorted);
    }
    if pvals.len() > m {
        return Err(Error::InvalidArgument(format!(
            "{} p-values for {m} comparisons",
            pvals.len()
        )));
    }
    let mut running = 0.0f64;
    Ok(pvals
        .iter()
        .enumerate()
        .map(|(j, &p)| {
            running = running.max((m - j) as f64 * p);
            running.min(1.0)
        })
        .collect())
}

/// One row of the post-hoc table.
#[derive(Debug, Clone, PartialEq)]
pub struct HolmRow {
    pub method: String,
    pub z: f64,
    pub p_value: f64,
    pub adjusted: f64,
}

/// Everything the comparison step reports.
#[derive(Debug, Clone, PartialEq)]
pub struct FriedmanReport {
    pub methods: Vec<String>,
    pub average_ranks: Vec<f64>,
    pub n: usize,
    pub k: usize,
    pub chi2: f64,
    pub chi2_p: f64,
    pub iman_davenport: f64,
    pub iman_davenport_p: f64,
    pub control: String,
    /// Sorted by ascending p-value.
    pub holm: Vec<HolmRow>,
}

/// Friedman test plus Holm comparison of every method against the best
/// ranked one. `z = (R_control − R_j) / sqrt(k(k+1)/(6n))` and the p-value is
/// the lower normal tail of `z`.
pub fn friedman_report(m: &ResultMatrix) -> Result<FriedmanReport> {
    let ranks = friedman_ranks(m)?;
    let (n, k) = (m.n(), m.k());
    let chi2 = friedman_statistic(&ranks, n);
    let f_id = iman_davenport(chi2, n, k);

    let control = (0..k)
        .min_by(|&a, &b| ranks[a].total_cmp(&ranks[b]).then(a.cmp(&b)))
        .expect("k >= 2");
    let se = ((k * (k + 1)) as f64 / (6.0 * n as f64)).sqrt();
    let normal = Normal::standard();
    let mut rows: Vec<HolmRow> = (0..k)
        .filter(|&j| j != control)
        .map(|j| {
            let z = (ranks[control] - ranks[j]) / se;
            HolmRow {
                method: m.cols[j].clone(),
                z,
                p_value: normal.cdf(z),
                adjusted: 0.0,
            }
        })
        .collect();
    rows.sort_by(|a, b| a.p_value.total_cmp(&b.p_value));
    let pvals: Vec<f64> = rows.iter().map(|r| r.p_value).collect();
    for (row, apv) in rows.iter_mut().zip(holm_adjust(&pvals, k - 1)?) {
        row.adjusted = apv;
    }

    Ok(FriedmanReport {
        methods: m.cols.clone(),
        average_ranks: ranks,
        n,
        k,
        chi2,
        chi2_p: friedman_p_value(chi2, k),
        iman_davenport: f_id,
        iman_davenport_p: iman_davenport_p_value(f_id, n, k),
        control: m.cols[control].clone(),
        holm: rows,
    })
}

impl FriedmanReport {
    /// CSV report `section,name,value,z,p_value,adjusted_p`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["section", "name", "value", "z", "p_value", "adjusted_p"])?;
        for (m, r) in self.methods.iter().zip(&self.average_ranks) {
            w.write_record(["rank", m, &r.to_string(), "", "", ""])?;
        }
        w.write_record([
            "friedman",
            "chi2",
            &self.chi2.to_string(),
            "",
            &self.chi2_p.to_string(),
            "",
        ])?;
        w.write_record([
            "friedman",
            "iman_davenport",
            &self.iman_davenport.to_string(),
            "",
            &self.iman_davenport_p.to_string(),
            "",
        ])?;
        w.write_record(["control", &self.control, "", "", "", ""])?;
        for row in &self.holm {
            w.write_record([
                "holm",
                &row.method,
                "",
                &row.z.to_string(),
                &row.p_value.to_string(),
                &row.adjusted.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}
