//! Executable demonstration that IW-SAA is inconsistent for
//! alpha-unimodality: a feasible sample solution with value 1 while the true
//! optimum is at most `(2^alpha - 1) / 2^alpha`.
//!
//! Setting: the quarter disk `{x >= 0, |x| <= 2}` in the plane, objective and
//! total mass both `P(X in S)` with the annulus `S = {x >= 0, 1 <= |x| <= 2}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sampling::{SampleBatch, Sampler, SamplerSpec};

/// `(2^alpha - 1) / 2^alpha`.
pub fn alpha_upper_bound(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::InvalidProblem(format!("alpha must be positive, got {alpha}")));
    }
    Ok(1.0 - 2f64.powf(-alpha))
}

/// Open interval that must contain `C0` for the construction to satisfy the
/// shape and bound hypotheses. For `alpha >= 2` the upper end is `m`.
pub fn admissible_interval(alpha: f64, m: f64) -> (f64, f64) {
    use std::f64::consts::PI;
    if alpha < 2.0 {
        let s = PI * (2f64.powf(alpha) - 1.0);
        (alpha / s, 4.0 * alpha / s)
    } else {
        (2.0 / (3.0 * PI), m)
    }
}

/// Default bound for `alpha >= 2`; any value above `4 / (3 pi)` works.
pub const DEFAULT_M: f64 = 1.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlphaDemoResult {
    pub alpha: f64,
    pub n: usize,
    pub seed: u64,
    /// Samples falling in the annulus.
    pub in_annulus: usize,
    pub c0: f64,
    pub interval: (f64, f64),
    pub c0_admissible: bool,
    /// `|(1/n) sum_i L(X_i) - 1|`.
    pub mass_residual: f64,
    pub objective: f64,
    pub upper_bound: f64,
    pub gap: f64,
    pub success: bool,
}

/// Uniform sampler on the quarter disk of radius 2 (density `1 / pi`).
pub fn quarter_disk_sampler() -> Sampler {
    Sampler::new(SamplerSpec::UniformBallSector { center: vec![0.0, 0.0], radius: 2.0 })
        .expect("valid sampler")
}

/// Sets `L(X_i) = C w_i` on annulus samples, with `w_i = 1 / (|X_i|^{2-alpha} g_i)`
/// for `alpha < 2` and `1 / g_i` otherwise, zero elsewhere, and solves the
/// mass equation `(1/n) sum L(X_i) = 1` for `C`.
pub fn construct_inconsistent_solution(alpha: f64, batch: &SampleBatch, m: f64) -> Result<AlphaDemoResult> {
    let upper_bound = alpha_upper_bound(alpha)?;
    if batch.dim != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: batch.dim });
    }
    let n = batch.len();
    let mut weights = Vec::new();
    for (i, x) in batch.points().enumerate() {
        let r = x[0].hypot(x[1]);
        if x[0] >= 0.0 && x[1] >= 0.0 && (1.0..=2.0).contains(&r) {
            let g = batch.densities[i];
            let w = if alpha < 2.0 { 1.0 / (r.powf(2.0 - alpha) * g) } else { 1.0 / g };
            weights.push(w);
        }
    }
    if weights.is_empty() {
        return Err(Error::EmptyAnnulus);
    }
    let total: f64 = weights.iter().sum();
    let c0 = n as f64 / total;
    let mass: f64 = weights.iter().map(|w| c0 * w).sum::<f64>() / n as f64;
    // objective and mass share the annulus indicator, so they coincide
    let objective = mass;
    let interval = admissible_interval(alpha, m);
    let c0_admissible = c0 > interval.0 && c0 < interval.1;
    let mass_residual = (mass - 1.0).abs();
    Ok(AlphaDemoResult {
        alpha,
        n,
        seed: batch.seed,
        in_annulus: weights.len(),
        c0,
        interval,
        c0_admissible,
        mass_residual,
        objective,
        upper_bound,
        gap: objective - upper_bound,
        success: c0_admissible && mass_residual <= 1e-12,
    })
}

/// Draws `n` uniform points on the quarter disk and runs the construction.
pub fn run_counterexample(alpha: f64, n: usize, seed: u64) -> Result<AlphaDemoResult> {
    let batch = quarter_disk_sampler().draw(n, seed, 0)?;
    construct_inconsistent_solution(alpha, &batch, DEFAULT_M)
}
