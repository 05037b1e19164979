use super::model::{LpModel, LpStatus};
use super::solve::solve;
use crate::error::{Error, Result};
use crate::problem::{DualCertificate, ProblemSpec, Relation};
use crate::sampling::SampleBatch;
use crate::shape::DiscreteShapeSet;

/// Sample Lagrangian dual value at the given multipliers:
///
/// ```text
///     sum_j lambda_j mu_j + max_{v in shape set} sum_i v_i (c_i - sum_j lambda_j a_ji)
/// ```
///
/// Any sign-feasible multiplier vector gives an upper bound on the sample
/// optimum. Returns `+inf` when the inner maximum is unbounded.
pub fn evaluate_lagrangian_dual(
    problem: &ProblemSpec,
    batch: &SampleBatch,
    set: &DiscreteShapeSet,
    cert: &DualCertificate,
) -> Result<f64> {
    let model = super::assemble(problem, batch, set)?;
    lagrangian_dual_value(&model, &cert.multipliers)
}

/// [`evaluate_lagrangian_dual`] on an assembled model.
pub fn lagrangian_dual_value(model: &LpModel, lambda: &[f64]) -> Result<f64> {
    let k = model.moment_rows;
    if lambda.len() != k {
        return Err(Error::DimensionMismatch { expected: k, got: lambda.len() });
    }
    for (j, &l) in lambda.iter().enumerate() {
        if !l.is_finite() || (model.relations[j] == Relation::LessEqual && l < 0.0) {
            return Err(Error::SignViolation { index: j, value: l });
        }
    }
    let mut objective = model.objective.clone();
    let mut constant = 0.0;
    for (j, &l) in lambda.iter().enumerate() {
        constant += l * model.rhs[j];
        let (idx, vals) = model.row(j);
        for (&i, &a) in idx.iter().zip(vals) {
            objective[i] -= l * a;
        }
    }
    let mut inner = LpModel::new(objective, model.lower.clone(), model.upper.clone());
    for i in k..model.row_count() {
        let (idx, vals) = model.row(i);
        inner.add_row(idx, vals, model.relations[i], model.rhs[i]);
    }
    let sol = solve(&inner)?;
    match sol.status {
        LpStatus::Optimal => Ok(constant + sol.objective),
        LpStatus::Unbounded => Ok(f64::INFINITY),
        LpStatus::Infeasible => Err(Error::InvalidModel("shape constraints are infeasible".into())),
        LpStatus::IterationLimit => Err(Error::InvalidModel("iteration limit in the inner LP".into())),
    }
}
