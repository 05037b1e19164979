//! Replication harness: draw, discretize, assemble, solve, certify, report.

pub mod problems;
mod report;

use std::time::Instant;

pub use report::{emit_report, summarize, write_report, ExperimentReport, NSummary, Record, ReportFormat, CSV_COLUMNS};

use crate::error::{Error, Result};
use crate::lp::{assemble, solve, LpStatus};
use crate::par;
use crate::problem::{ProblemFile, ProblemSpec};
use crate::sampling::{Sampler, SamplerSpec};
use crate::shape::{discretize_with, DiscretizeOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub reduce: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self { reduce: true }
    }
}

/// Desk-scale sample sizes for convergence runs.
pub const DEFAULT_N_LIST: [usize; 5] = [250, 500, 1000, 2000, 4000];
pub const DEFAULT_REPLICATIONS: usize = 30;

/// RNG stream of replication `rep` at sample size `n`.
pub fn stream_id(n: usize, rep: usize) -> u64 {
    ((n as u64) << 32) | rep as u64
}

/// One full IW-SAA solve. Infeasible or unbounded LPs come back as records
/// with the matching status; only malformed inputs are errors.
pub fn solve_instance(
    problem: &ProblemSpec,
    sampler: &Sampler,
    n: usize,
    seed: u64,
    rep: usize,
    opts: RunOptions,
) -> Result<Record> {
    let stream = stream_id(n, rep);
    let batch = sampler.draw(n, seed, stream)?;
    let set = discretize_with(&problem.shape, &batch, DiscretizeOptions { reduce: opts.reduce })?;
    let model = assemble(problem, &batch, &set)?;
    let start = Instant::now();
    let sol = solve(&model)?;
    let seconds = start.elapsed().as_secs_f64();
    let cert = sol.certificate;
    Ok(Record {
        n,
        replication: rep,
        seed,
        stream,
        status: sol.status,
        value: (sol.status == LpStatus::Optimal).then_some(sol.objective),
        error: None,
        normalized_error: None,
        relative_gap: cert.map(|c| c.relative_gap),
        complementarity: cert.map(|c| c.complementarity),
        certified: cert.is_some_and(|c| c.passed()),
        moment_rows: model.moment_rows,
        naive_pairs: set.naive_pair_count,
        shape_rows: set.row_count(),
        variables: model.n_vars,
        iterations: sol.stats.iterations,
        solve_seconds: seconds,
    })
}

fn with_reference(mut r: Record, reference: Option<f64>) -> Record {
    if let (Some(v), Some(t)) = (r.value, reference) {
        let e = v - t;
        r.error = Some(e);
        r.normalized_error = Some((r.n as f64).sqrt() * e);
    }
    r
}

/// All `(n, replication)` jobs, fanned out and folded in order.
fn run_grid(
    id: &str,
    file: &ProblemFile,
    sampler: &SamplerSpec,
    n_list: &[usize],
    replications: usize,
    seed: u64,
    opts: RunOptions,
) -> Result<ExperimentReport> {
    file.problem.ensure_valid()?;
    if n_list.is_empty() || n_list.contains(&0) {
        return Err(Error::InvalidProblem("sample sizes must be positive".into()));
    }
    let smp = Sampler::new(sampler.clone())?;
    if smp.dimension() != file.problem.dimension {
        return Err(Error::DimensionMismatch { expected: file.problem.dimension, got: smp.dimension() });
    }
    let jobs: Vec<(usize, usize)> =
        n_list.iter().flat_map(|&n| (0..replications).map(move |r| (n, r))).collect();
    let results = par::map_indexed(jobs.len(), |k| {
        let (n, rep) = jobs[k];
        solve_instance(&file.problem, &smp, n, seed, rep, opts)
    });
    let mut records = Vec::with_capacity(results.len());
    let mut notes = Vec::new();
    for ((n, rep), r) in jobs.iter().zip(results) {
        match r {
            Ok(rec) => records.push(with_reference(rec, file.reference_optimum)),
            Err(e) => notes.push(format!("n = {n}, replication {rep}: {e}")),
        }
    }
    let summary = summarize(&records);
    Ok(ExperimentReport {
        id: id.into(),
        problem: file.name.clone(),
        sampler: sampler.name(),
        reference_optimum: file.reference_optimum,
        records,
        summary,
        notes,
    })
}

/// Consistency and rate study over a list of sample sizes.
pub fn run_convergence(
    file: &ProblemFile,
    sampler: Option<&SamplerSpec>,
    n_list: &[usize],
    replications: usize,
    seed: u64,
    opts: RunOptions,
) -> Result<ExperimentReport> {
    let sampler = sampler.unwrap_or(&file.sampler);
    run_grid("convergence", file, sampler, n_list, replications, seed, opts)
}

/// One report per sampler, all over the same seeds.
pub fn run_sampler_influence(
    file: &ProblemFile,
    samplers: &[SamplerSpec],
    n: usize,
    replications: usize,
    seed: u64,
    opts: RunOptions,
) -> Result<Vec<ExperimentReport>> {
    samplers
        .iter()
        .map(|s| run_grid("influence", file, s, &[n], replications, seed, opts))
        .collect()
}

/// High-dimensional envelope-bounded run; records carry the naive and
/// reduced pair counts.
pub fn run_high_dim(
    file: &ProblemFile,
    n: usize,
    replications: usize,
    seed: u64,
    opts: RunOptions,
) -> Result<ExperimentReport> {
    run_grid("high_dim", file, &file.sampler, &[n], replications, seed, opts)
}

mod extreme;
pub use extreme::{
    extreme_event_monte_carlo, extreme_event_problem, extreme_event_truth, generate_extreme_event_data, run_extreme_event,
    ExtremeEventConfig,
};
