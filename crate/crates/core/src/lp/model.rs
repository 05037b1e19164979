use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::{DualCertificate, Relation};

/// `max c.v` subject to sparse rows `a_i . v (<= | =) b_i` and
/// `lower <= v <= upper`. The first `moment_rows` rows are the moment
/// constraints in problem order; the rest are shape rows.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LpModel {
    pub n_vars: usize,
    pub objective: Vec<f64>,
    pub row_start: Vec<usize>,
    pub col_idx: Vec<usize>,
    pub vals: Vec<f64>,
    pub relations: Vec<Relation>,
    pub rhs: Vec<f64>,
    pub moment_rows: usize,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl LpModel {
    pub fn new(objective: Vec<f64>, lower: Vec<f64>, upper: Vec<f64>) -> Self {
        Self {
            n_vars: objective.len(),
            objective,
            row_start: vec![0],
            col_idx: Vec::new(),
            vals: Vec::new(),
            relations: Vec::new(),
            rhs: Vec::new(),
            moment_rows: 0,
            lower,
            upper,
        }
    }

    pub fn add_row(&mut self, idx: &[usize], vals: &[f64], relation: Relation, rhs: f64) {
        for (&j, &v) in idx.iter().zip(vals) {
            if v != 0.0 {
                self.col_idx.push(j);
                self.vals.push(v);
            }
        }
        self.row_start.push(self.col_idx.len());
        self.relations.push(relation);
        self.rhs.push(rhs);
    }

    pub fn row_count(&self) -> usize {
        self.rhs.len()
    }

    pub fn row(&self, i: usize) -> (&[usize], &[f64]) {
        let r = self.row_start[i]..self.row_start[i + 1];
        (&self.col_idx[r.clone()], &self.vals[r])
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn row_activity(&self, i: usize, v: &[f64]) -> f64 {
        let (idx, vals) = self.row(i);
        idx.iter().zip(vals).map(|(&j, &a)| a * v[j]).sum()
    }

    pub fn objective_value(&self, v: &[f64]) -> f64 {
        self.objective.iter().zip(v).map(|(c, x)| c * x).sum()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidModel(m));
        let n = self.n_vars;
        if self.objective.len() != n || self.lower.len() != n || self.upper.len() != n {
            return bad("objective and bounds must have one entry per variable".into());
        }
        let m = self.row_count();
        if self.row_start.len() != m + 1 || self.relations.len() != m || self.moment_rows > m {
            return bad("row arrays are inconsistent".into());
        }
        if let Some(&j) = self.col_idx.iter().find(|&&j| j >= n) {
            return bad(format!("row references variable {j} but there are {n}"));
        }
        for j in 0..n {
            if !(self.lower[j] <= self.upper[j]) || self.lower[j] == f64::INFINITY
                || self.upper[j] == f64::NEG_INFINITY
            {
                return bad(format!("variable {j} has empty bounds"));
            }
        }
        if self.objective.iter().chain(&self.vals).chain(&self.rhs).any(|v| !v.is_finite()) {
            return bad("non-finite coefficient".into());
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit,
}

/// Which LP the simplex actually ran on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Primal,
    Dual,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveStats {
    pub iterations: usize,
    pub phase1_iterations: usize,
    /// Pivots taken under Bland's rule after a degenerate streak.
    pub bland_iterations: usize,
    pub refactorizations: usize,
    pub orientation: Orientation,
    pub pivot_rule: String,
    pub seconds: f64,
}

/// Residuals of the optimality certificate, measured on the unscaled model.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    /// Largest row or bound violation relative to the row's magnitude.
    pub primal_residual: f64,
    /// Largest multiplier sign error or reduced cost that no bound absorbs.
    pub dual_residual: f64,
    /// `|primal - dual| / (1 + |primal|)`.
    pub relative_gap: f64,
    /// Largest `multiplier x slack` product over rows and bounds.
    pub complementarity: f64,
    pub dual_objective: f64,
}

pub const PRIMAL_TOL: f64 = 1e-8;
pub const DUAL_TOL: f64 = 1e-8;
pub const GAP_TOL: f64 = 1e-7;
pub const COMPLEMENTARITY_TOL: f64 = 1e-6;

impl CertificateReport {
    pub fn passed(&self) -> bool {
        self.primal_residual <= PRIMAL_TOL
            && self.dual_residual <= DUAL_TOL
            && self.relative_gap <= GAP_TOL
            && self.complementarity <= COMPLEMENTARITY_TOL
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LpSolution {
    pub status: LpStatus,
    pub primal: Vec<f64>,
    pub objective: f64,
    /// Multipliers of the moment rows with the dual objective.
    pub duals: DualCertificate,
    /// Multipliers of every row (moment rows first, then shape rows).
    pub row_duals: Vec<f64>,
    pub stats: SolveStats,
    pub certificate: Option<CertificateReport>,
    /// Row multipliers proving infeasibility, when one was found.
    pub farkas: Option<Vec<f64>>,
}

/// Checks `(v, y)` as a primal-dual pair for `model`.
///
/// The dual objective is `b.y + sum_j (u_j max(d_j, 0) + l_j min(d_j, 0))`
/// with `d = c - A^T y`, which bounds the primal optimum from above for any
/// sign-feasible `y`.
pub fn check_certificate(model: &LpModel, v: &[f64], y: &[f64]) -> CertificateReport {
    let n = model.n_vars;
    let mut d = model.objective.clone();
    let mut primal_residual: f64 = 0.0;
    let mut dual_residual: f64 = 0.0;
    let mut complementarity: f64 = 0.0;
    let mut dual_objective = 0.0;
    for i in 0..model.row_count() {
        let (idx, vals) = model.row(i);
        let mut act = 0.0;
        let mut scale = model.rhs[i].abs().max(1.0);
        for (&j, &a) in idx.iter().zip(vals) {
            act += a * v[j];
            scale = scale.max((a * v[j]).abs());
            d[j] -= a * y[i];
        }
        let slack = model.rhs[i] - act;
        match model.relations[i] {
            Relation::LessEqual => {
                primal_residual = primal_residual.max(-slack / scale);
                dual_residual = dual_residual.max(-y[i]);
                complementarity = complementarity.max((y[i] * slack).abs());
            }
            Relation::Equal => primal_residual = primal_residual.max(slack.abs() / scale),
        }
        dual_objective += model.rhs[i] * y[i];
    }
    for j in 0..n {
        let (l, u) = (model.lower[j], model.upper[j]);
        primal_residual = primal_residual.max(l - v[j]).max(v[j] - u);
        if d[j] > 0.0 {
            if u.is_finite() {
                dual_objective += u * d[j];
                complementarity = complementarity.max(d[j] * (u - v[j]));
            } else {
                dual_residual = dual_residual.max(d[j]);
            }
        } else if d[j] < 0.0 {
            if l.is_finite() {
                dual_objective += l * d[j];
                complementarity = complementarity.max(-d[j] * (v[j] - l));
            } else {
                dual_residual = dual_residual.max(-d[j]);
            }
        }
    }
    let primal = model.objective_value(v);
    CertificateReport {
        primal_residual,
        dual_residual,
        relative_gap: (primal - dual_objective).abs() / (1.0 + primal.abs()),
        complementarity,
        dual_objective,
    }
}
