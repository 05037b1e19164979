use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::lp::LpStatus;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub n: usize,
    pub replication: usize,
    pub seed: u64,
    pub stream: u64,
    pub status: LpStatus,
    /// `val(P_n)` when the LP is optimal.
    pub value: Option<f64>,
    /// `val(P_n) - val(P)` when a reference optimum is configured.
    pub error: Option<f64>,
    /// `sqrt(n) (val(P_n) - val(P))`.
    pub normalized_error: Option<f64>,
    pub relative_gap: Option<f64>,
    pub complementarity: Option<f64>,
    /// Whether the optimality certificate passed.
    pub certified: bool,
    pub moment_rows: usize,
    /// Dominance pairs before transitive reduction (chain rows in 1D).
    pub naive_pairs: usize,
    pub shape_rows: usize,
    pub variables: usize,
    pub iterations: usize,
    pub solve_seconds: f64,
}

/// Summary of the optimal records at one sample size.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NSummary {
    pub n: usize,
    pub count: usize,
    pub failures: usize,
    pub mean: f64,
    pub sd: f64,
    /// Standard error of the mean.
    pub se: f64,
    pub min: f64,
    pub q25: f64,
    pub median: f64,
    pub q75: f64,
    pub max: f64,
    pub mean_abs_error: Option<f64>,
    /// 95th percentile of `|sqrt(n) error|`.
    pub p95_abs_normalized_error: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub id: String,
    pub problem: String,
    pub sampler: String,
    pub reference_optimum: Option<f64>,
    pub records: Vec<Record>,
    pub summary: Vec<NSummary>,
    pub notes: Vec<String>,
}

impl ExperimentReport {
    pub fn summary_at(&self, n: usize) -> Option<&NSummary> {
        self.summary.iter().find(|s| s.n == n)
    }
}

/// Linear-interpolation quantile of sorted data.
fn quantile(sorted: &[f64], p: f64) -> f64 {
    if sorted.is_empty() {
        return f64::NAN;
    }
    let h = p * (sorted.len() - 1) as f64;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Per-`n` summaries in increasing `n`.
pub fn summarize(records: &[Record]) -> Vec<NSummary> {
    let mut ns: Vec<usize> = records.iter().map(|r| r.n).collect();
    ns.sort_unstable();
    ns.dedup();
    ns.into_iter()
        .map(|n| {
            let at: Vec<&Record> = records.iter().filter(|r| r.n == n).collect();
            let mut vals: Vec<f64> = at.iter().filter_map(|r| r.value).collect();
            vals.sort_by(f64::total_cmp);
            let k = vals.len();
            let mean = vals.iter().sum::<f64>() / k as f64;
            let sd = if k > 1 {
                (vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1) as f64).sqrt()
            } else {
                0.0
            };
            let errs: Vec<f64> = at.iter().filter_map(|r| r.error).map(f64::abs).collect();
            let mut norm: Vec<f64> = at.iter().filter_map(|r| r.normalized_error).map(f64::abs).collect();
            norm.sort_by(f64::total_cmp);
            NSummary {
                n,
                count: k,
                failures: at.len() - k,
                mean,
                sd,
                se: sd / (k as f64).sqrt(),
                min: quantile(&vals, 0.0),
                q25: quantile(&vals, 0.25),
                median: quantile(&vals, 0.5),
                q75: quantile(&vals, 0.75),
                max: quantile(&vals, 1.0),
                mean_abs_error: (!errs.is_empty()).then(|| errs.iter().sum::<f64>() / errs.len() as f64),
                p95_abs_normalized_error: (!norm.is_empty()).then(|| quantile(&norm, 0.95)),
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

/// Fixed CSV column order: one row per record.
pub const CSV_COLUMNS: [&str; 19] = [
    "experiment",
    "sampler",
    "n",
    "replication",
    "seed",
    "stream",
    "status",
    "value",
    "error",
    "normalized_error",
    "relative_gap",
    "complementarity",
    "certified",
    "moment_rows",
    "naive_pairs",
    "shape_rows",
    "variables",
    "iterations",
    "solve_seconds",
];

fn opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:?}")).unwrap_or_default()
}

/// Writes the report as CSV (records only) or JSON (everything).
pub fn emit_report(report: &ExperimentReport, path: &Path, format: ReportFormat) -> Result<()> {
    let file = std::io::BufWriter::new(std::fs::File::create(path)?);
    write_report(report, file, format)
}

/// [`emit_report`] into any writer.
pub fn write_report<W: std::io::Write>(report: &ExperimentReport, mut out: W, format: ReportFormat) -> Result<()> {
    match format {
        ReportFormat::Json => {
            serde_json::to_writer_pretty(&mut out, report)?;
            writeln!(out)?;
            out.flush()?;
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(CSV_COLUMNS)?;
            for r in &report.records {
                let status = serde_json::to_value(r.status)?;
                w.write_record([
                    report.id.clone(),
                    report.sampler.clone(),
                    r.n.to_string(),
                    r.replication.to_string(),
                    r.seed.to_string(),
                    r.stream.to_string(),
                    status.as_str().unwrap_or_default().to_string(),
                    opt(r.value),
                    opt(r.error),
                    opt(r.normalized_error),
                    opt(r.relative_gap),
                    opt(r.complementarity),
                    r.certified.to_string(),
                    r.moment_rows.to_string(),
                    r.naive_pairs.to_string(),
                    r.shape_rows.to_string(),
                    r.variables.to_string(),
                    r.iterations.to_string(),
                    format!("{:?}", r.solve_seconds),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}
