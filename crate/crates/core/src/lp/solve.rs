use std::time::Instant;

use super::model::{check_certificate, LpModel, LpSolution, LpStatus, Orientation, SolveStats};
use super::simplex::{self, SimplexOutcome, SimplexStatus, StdLp};
use crate::error::Result;
use crate::problem::{DualCertificate, Relation};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OrientationChoice {
    /// Primal orientation first, the explicit dual as fallback.
    #[default]
    Auto,
    Primal,
    Dual,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub orientation: OrientationChoice,
    /// Geometric equilibration of variables, rows and objective.
    pub scale: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { orientation: OrientationChoice::Auto, scale: true }
    }
}

pub fn solve(model: &LpModel) -> Result<LpSolution> {
    solve_with(model, SolveOptions::default())
}

/// Solves `model` and checks the certificate on the unscaled data. If the
/// first orientation fails its certificate the other one is tried.
pub fn solve_with(model: &LpModel, opts: SolveOptions) -> Result<LpSolution> {
    model.validate()?;
    let start = Instant::now();
    let scaled = Scaled::new(model, opts.scale);
    let dual_ok = model.lower.iter().all(|&l| l == 0.0);
    let first = match opts.orientation {
        OrientationChoice::Dual if dual_ok => Orientation::Dual,
        OrientationChoice::Primal | OrientationChoice::Dual | OrientationChoice::Auto => Orientation::Primal,
    };
    let mut sol = run_oriented(model, &scaled, first);
    let retry = match sol.status {
        LpStatus::Optimal => !sol.certificate.is_some_and(|c| c.passed()),
        // a dual-side failure does not tell infeasible from unbounded
        LpStatus::Unbounded => first == Orientation::Dual,
        LpStatus::IterationLimit => true,
        LpStatus::Infeasible => false,
    };
    if retry {
        let other = match first {
            Orientation::Primal if dual_ok => Some(Orientation::Dual),
            Orientation::Dual => Some(Orientation::Primal),
            Orientation::Primal => None,
        };
        if let Some(o) = other {
            let alt = run_oriented(model, &scaled, o);
            let better = match (sol.status, alt.status) {
                (_, LpStatus::Optimal) => alt.certificate.is_some_and(|c| c.passed())
                    || sol.status != LpStatus::Optimal,
                (LpStatus::Optimal, _) => false,
                (_, LpStatus::IterationLimit) => false,
                _ => true,
            };
            let (a, b) = (alt.stats.iterations, alt.stats.refactorizations);
            let (a0, b0) = (sol.stats.iterations, sol.stats.refactorizations);
            if better {
                sol = alt;
            }
            sol.stats.iterations = a + a0;
            sol.stats.refactorizations = b + b0;
        }
    }
    sol.stats.seconds = start.elapsed().as_secs_f64();
    Ok(sol)
}

/// `v = s w`, rows multiplied by `r_i`, objective divided by `cs`.
struct Scaled {
    var_scale: f64,
    row_scale: Vec<f64>,
    obj_scale: f64,
    objective: Vec<f64>,
    vals: Vec<f64>,
    rhs: Vec<f64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Scaled {
    fn new(model: &LpModel, enabled: bool) -> Self {
        let m = model.row_count();
        if !enabled {
            return Self {
                var_scale: 1.0,
                row_scale: vec![1.0; m],
                obj_scale: 1.0,
                objective: model.objective.clone(),
                vals: model.vals.clone(),
                rhs: model.rhs.clone(),
                lower: model.lower.clone(),
                upper: model.upper.clone(),
            };
        }
        let s = model
            .upper
            .iter()
            .chain(&model.lower)
            .filter(|u| u.is_finite())
            .fold(0.0f64, |a, &u| a.max(u.abs()));
        let s = if s > 0.0 { s } else { 1.0 };
        let mut row_scale = vec![1.0; m];
        let mut vals = model.vals.clone();
        for i in 0..m {
            let r = model.row_start[i]..model.row_start[i + 1];
            let big = vals[r.clone()].iter().fold(0.0f64, |a, v| a.max(v.abs()));
            let ri = if i < model.moment_rows && big > 0.0 { 1.0 / (big * s) } else { 1.0 };
            row_scale[i] = ri;
            for a in &mut vals[r] {
                *a *= s * ri;
            }
        }
        let mut objective: Vec<f64> = model.objective.iter().map(|c| c * s).collect();
        let cs = objective.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let cs = if cs > 0.0 { cs } else { 1.0 };
        for c in &mut objective {
            *c /= cs;
        }
        // shape rows keep their original coefficients: s * (1/s) = 1
        for i in model.moment_rows..m {
            let r = model.row_start[i]..model.row_start[i + 1];
            row_scale[i] = 1.0 / s;
            vals[r.clone()].copy_from_slice(&model.vals[r]);
        }
        Self {
            var_scale: s,
            rhs: model.rhs.iter().zip(&row_scale).map(|(b, r)| b * r).collect(),
            row_scale,
            obj_scale: cs,
            objective,
            vals,
            lower: model.lower.iter().map(|l| l / s).collect(),
            upper: model.upper.iter().map(|u| u / s).collect(),
        }
    }
}

fn status_of(s: SimplexStatus) -> LpStatus {
    match s {
        SimplexStatus::Optimal => LpStatus::Optimal,
        SimplexStatus::Infeasible => LpStatus::Infeasible,
        SimplexStatus::Unbounded => LpStatus::Unbounded,
        SimplexStatus::IterationLimit => LpStatus::IterationLimit,
    }
}

fn run_oriented(model: &LpModel, sc: &Scaled, orientation: Orientation) -> LpSolution {
    let n = model.n_vars;
    let m = model.row_count();
    let (status, w, lam, farkas, out) = match orientation {
        Orientation::Primal => {
            let lp = primal_lp(model, sc);
            let out = simplex::run(&lp);
            let status = status_of(out.status);
            let w = out.x[..n].to_vec();
            let lam: Vec<f64> = out.y.iter().map(|y| -y).collect();
            let farkas = out.farkas.clone();
            (status, w, lam, farkas, out)
        }
        Orientation::Dual => {
            let lp = dual_lp(model, sc);
            let out = simplex::run(&lp);
            let (status, farkas) = match out.status {
                SimplexStatus::Optimal => (LpStatus::Optimal, None),
                // an improving dual ray certifies primal infeasibility
                SimplexStatus::Unbounded => {
                    (LpStatus::Infeasible, out.ray.as_ref().map(|r| r[..m].to_vec()))
                }
                // dual infeasible: primal unbounded or infeasible
                SimplexStatus::Infeasible => (LpStatus::Unbounded, None),
                SimplexStatus::IterationLimit => (LpStatus::IterationLimit, None),
            };
            let w = out.y.clone();
            let lam = out.x[..m].to_vec();
            (status, w, lam, farkas, out)
        }
    };
    let primal: Vec<f64> = w.iter().map(|w| w * sc.var_scale).collect();
    let row_duals: Vec<f64> =
        lam.iter().zip(&sc.row_scale).map(|(l, r)| l * r * sc.obj_scale).collect();
    let farkas = farkas.map(|f| f.iter().zip(&sc.row_scale).map(|(y, r)| y * r).collect());
    let certificate =
        (status == LpStatus::Optimal).then(|| check_certificate(model, &primal, &row_duals));
    let objective = match status {
        LpStatus::Optimal | LpStatus::IterationLimit => model.objective_value(&primal),
        LpStatus::Unbounded => f64::INFINITY,
        LpStatus::Infeasible => f64::NEG_INFINITY,
    };
    let moment = row_duals[..model.moment_rows].to_vec();
    let dual_objective = certificate.map_or(f64::NAN, |c| c.dual_objective);
    LpSolution {
        status,
        primal,
        objective,
        duals: DualCertificate { multipliers: moment, dual_objective },
        row_duals,
        stats: stats_of(&out, orientation),
        certificate,
        farkas,
    }
}

fn stats_of(out: &SimplexOutcome, orientation: Orientation) -> SolveStats {
    SolveStats {
        iterations: out.iterations,
        phase1_iterations: out.phase1_iterations,
        bland_iterations: out.bland_iterations,
        refactorizations: out.refactorizations,
        orientation,
        pivot_rule: if out.bland_iterations > 0 { "dantzig+bland" } else { "dantzig" }.into(),
        seconds: 0.0,
    }
}

/// `min -c.w` with row logicals `r_i <= b_i` (or `= b_i`).
fn primal_lp(model: &LpModel, sc: &Scaled) -> StdLp {
    let n = model.n_vars;
    let m = model.row_count();
    let mut counts = vec![0usize; n + 1];
    for &j in &model.col_idx {
        counts[j + 1] += 1;
    }
    for j in 0..n {
        counts[j + 1] += counts[j];
    }
    let col_start = counts.clone();
    let mut next = counts;
    let mut row_idx = vec![0; model.nnz()];
    let mut vals = vec![0.0; model.nnz()];
    for i in 0..m {
        for k in model.row_start[i]..model.row_start[i + 1] {
            let j = model.col_idx[k];
            row_idx[next[j]] = i;
            vals[next[j]] = sc.vals[k];
            next[j] += 1;
        }
    }
    let mut lo = sc.lower.clone();
    let mut hi = sc.upper.clone();
    for i in 0..m {
        lo.push(match model.relations[i] {
            Relation::LessEqual => f64::NEG_INFINITY,
            Relation::Equal => sc.rhs[i],
        });
        hi.push(sc.rhs[i]);
    }
    StdLp {
        m,
        n,
        col_start,
        row_idx,
        vals,
        cost: sc.objective.iter().map(|c| -c).collect(),
        lo,
        hi,
    }
}

/// With `l = 0` the dual is
///
/// ```text
///     min b.y + u.s   s.t.   A^T y + s >= c,   y_i >= 0 on inequality rows,   s >= 0
/// ```
///
/// whose rows are the primal variables. Its simplex multipliers are the
/// primal solution.
fn dual_lp(model: &LpModel, sc: &Scaled) -> StdLp {
    let n = model.n_vars;
    let m = model.row_count();
    let mut col_start = Vec::with_capacity(m + n + 1);
    let mut row_idx = Vec::with_capacity(model.nnz() + n);
    let mut vals = Vec::with_capacity(model.nnz() + n);
    let mut cost = Vec::with_capacity(m + n);
    let mut lo = Vec::with_capacity(m + 2 * n);
    let mut hi = Vec::with_capacity(m + 2 * n);
    col_start.push(0);
    for i in 0..m {
        for k in model.row_start[i]..model.row_start[i + 1] {
            row_idx.push(model.col_idx[k]);
            vals.push(sc.vals[k]);
        }
        col_start.push(row_idx.len());
        cost.push(sc.rhs[i]);
        lo.push(match model.relations[i] {
            Relation::LessEqual => 0.0,
            Relation::Equal => f64::NEG_INFINITY,
        });
        hi.push(f64::INFINITY);
    }
    for j in 0..n {
        if sc.upper[j].is_finite() {
            row_idx.push(j);
            vals.push(1.0);
            col_start.push(row_idx.len());
            cost.push(sc.upper[j]);
            lo.push(0.0);
            hi.push(f64::INFINITY);
        }
    }
    let cols = cost.len();
    for j in 0..n {
        lo.push(sc.objective[j]);
        hi.push(f64::INFINITY);
    }
    StdLp { m: n, n: cols, col_start, row_idx, vals, cost, lo, hi }
}
