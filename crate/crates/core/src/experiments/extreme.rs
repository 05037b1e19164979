//! Data-calibrated upper bounds on a rare-event probability.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::problems::envelope_constant;
use super::{solve_instance, summarize, ExperimentReport, RunOptions};
use crate::calibrate::{calibrate_interval_constraints, decile_grid, Calibration};
use crate::error::{Error, Result};
use crate::expr::MomentFunction;
use crate::par;
use crate::problem::{Bound, Domain, ProblemFile, ProblemSpec, ShapeKind, ShapeSpec};
use crate::sampling::{stream_rng, Sampler, SamplerSpec};
use crate::special::normal_sf;

/// Target `P(min X_i >= t_min, max X_i >= t_max)` under `N(0, sd^2 I_d)`,
/// bounded over orthounimodal densities about `lo 1` on `[lo, inf)^d`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtremeEventConfig {
    pub dimension: usize,
    /// Standard deviation of the data-generating normal.
    pub sd: f64,
    pub region_lo: f64,
    pub min_threshold: f64,
    pub max_threshold: f64,
    /// Observations per data set.
    pub records: usize,
    pub alpha: f64,
    /// Samples from `g0` per IW-SAA solve.
    pub n_solver: usize,
    pub runs_per_dataset: usize,
    /// Standard deviation of the sampler `g0`.
    pub g0_sd: f64,
    /// Envelope constant; defaults to [`envelope_constant`].
    pub m: Option<f64>,
}

impl ExtremeEventConfig {
    /// Three-dimensional desk-scale variant.
    pub fn scaled_3d() -> Self {
        Self {
            dimension: 3,
            sd: 4.0,
            region_lo: 1.0,
            min_threshold: 3.0,
            max_threshold: 8.0,
            records: 100_000,
            alpha: 0.05,
            n_solver: 1000,
            runs_per_dataset: 2,
            g0_sd: 32f64.sqrt(),
            m: None,
        }
    }

    /// Ten-dimensional configuration with thresholds 3 and 12.
    pub fn full_10d() -> Self {
        Self {
            dimension: 10,
            max_threshold: 12.0,
            records: 10_000_000,
            n_solver: 100_000,
            runs_per_dataset: 20,
            ..Self::scaled_3d()
        }
    }

    pub fn envelope_m(&self) -> f64 {
        self.m.unwrap_or_else(|| envelope_constant(self.dimension))
    }

    pub fn sampler(&self) -> SamplerSpec {
        let d = self.dimension;
        SamplerSpec::TruncatedNormalOrthant {
            mean: vec![self.region_lo; d],
            sd: vec![self.g0_sd; d],
            lo: vec![self.region_lo; d],
        }
    }
}

/// Closed form `S(a)^d - (S(a) - S(b))^d` with `S` the normal tail.
pub fn extreme_event_truth(cfg: &ExtremeEventConfig) -> f64 {
    let s = |t: f64| normal_sf(t / cfg.sd);
    let (a, b) = (s(cfg.min_threshold), s(cfg.max_threshold));
    let d = cfg.dimension as i32;
    a.powi(d) - (a - b).powi(d)
}

/// Direct Monte Carlo estimate of the target probability from `draws`
/// normal vectors, with its standard error. Work is split into fixed chunks
/// on their own streams, so the estimate does not depend on thread count.
pub fn extreme_event_monte_carlo(cfg: &ExtremeEventConfig, draws: u64, seed: u64) -> (f64, f64) {
    const CHUNK: u64 = 1 << 20;
    let chunks = draws.div_ceil(CHUNK);
    let hits: u64 = par::map_indexed(chunks as usize, |c| {
        let mut rng = stream_rng(seed, c as u64);
        let len = CHUNK.min(draws - c as u64 * CHUNK);
        let mut hits = 0u64;
        for _ in 0..len {
            let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
            for _ in 0..cfg.dimension {
                let x = cfg.sd * rng.sample::<f64, _>(StandardNormal);
                lo = lo.min(x);
                hi = hi.max(x);
            }
            if lo >= cfg.min_threshold && hi >= cfg.max_threshold {
                hits += 1;
            }
        }
        hits
    })
    .into_iter()
    .sum();
    let p = hits as f64 / draws as f64;
    (p, (p * (1.0 - p) / draws as f64).sqrt())
}

/// `records` draws from `N(0, sd^2 I_d)` on stream `dataset`.
pub fn generate_extreme_event_data(cfg: &ExtremeEventConfig, seed: u64, dataset: u64) -> Vec<Vec<f64>> {
    let mut rng = stream_rng(seed, dataset);
    (0..cfg.records)
        .map(|_| {
            (0..cfg.dimension)
                .map(|_| cfg.sd * rng.sample::<f64, _>(StandardNormal))
                .collect()
        })
        .collect()
}

/// The calibrated problem: every bound of `cal` as a pair of inequalities.
pub fn extreme_event_problem(cfg: &ExtremeEventConfig, cal: &Calibration) -> Result<ProblemFile> {
    let d = cfg.dimension;
    let lo = vec![cfg.region_lo; d];
    let objective = MomentFunction::product(vec![
        MomentFunction::in_range(MomentFunction::MinCoord, cfg.min_threshold, f64::INFINITY),
        MomentFunction::in_range(MomentFunction::MaxCoord, cfg.max_threshold, f64::INFINITY),
    ]);
    let shape = ShapeSpec::new(
        ShapeKind::Orthounimodal,
        Some(lo.clone()),
        Domain::Box { lo, hi: vec![f64::INFINITY; d] },
        Bound::Envelope { m: cfg.envelope_m(), gamma: 0.5, reference: cfg.sampler() },
    )?;
    let problem = ProblemSpec { dimension: d, objective, constraints: cal.constraints(), shape };
    problem.ensure_valid()?;
    Ok(ProblemFile {
        name: format!("extreme-event-{d}d"),
        problem,
        sampler: cfg.sampler(),
        reference_optimum: None,
    })
}

/// Calibrates each data set, then solves `runs_per_dataset` IW-SAA problems
/// on it. Record `replication = dataset * runs + run`. An infeasible
/// calibration is recorded, not raised.
pub fn run_extreme_event(
    datasets: &[Vec<Vec<f64>>],
    cfg: &ExtremeEventConfig,
    seed: u64,
    opts: RunOptions,
) -> Result<ExperimentReport> {
    if !(cfg.alpha > 0.0 && cfg.alpha < 1.0) {
        return Err(Error::Calibration(format!("alpha {} must lie in (0, 1)", cfg.alpha)));
    }
    let sampler = Sampler::new(cfg.sampler())?;
    let runs = cfg.runs_per_dataset;
    let mut problems = Vec::with_capacity(datasets.len());
    let mut notes = Vec::new();
    for (k, data) in datasets.iter().enumerate() {
        let cal = calibrate_interval_constraints(data, &vec![cfg.region_lo; cfg.dimension], &decile_grid(), cfg.alpha, None)?;
        notes.push(format!(
            "data set {k}: {} of {} records in region, band halfwidth {:.5} (DKW), level {:.6}",
            cal.conditional_records, cal.records, cal.band_halfwidth, cal.level
        ));
        problems.push(extreme_event_problem(cfg, &cal)?);
    }
    let jobs = datasets.len() * runs;
    let results = par::map_indexed(jobs, |j| {
        solve_instance(&problems[j / runs].problem, &sampler, cfg.n_solver, seed, j, opts)
    });
    let mut records = Vec::with_capacity(jobs);
    for (j, r) in results.into_iter().enumerate() {
        match r {
            Ok(rec) => records.push(rec),
            Err(e) => notes.push(format!("replication {j}: {e}")),
        }
    }
    notes.push(format!("closed-form target probability {:e}", extreme_event_truth(cfg)));
    Ok(ExperimentReport {
        id: "extreme_event".into(),
        problem: format!("extreme-event-{}d", cfg.dimension),
        sampler: cfg.sampler().name(),
        reference_optimum: None,
        summary: summarize(&records),
        records,
        notes,
    })
}
