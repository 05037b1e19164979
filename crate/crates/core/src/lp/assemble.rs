use super::model::LpModel;
use crate::error::{Error, Result};
use crate::par;
use crate::problem::{ProblemSpec, Relation};
use crate::sampling::SampleBatch;
use crate::shape::DiscreteShapeSet;

/// Builds the sample LP: objective and moment rows carry the weights
/// `phi(X_i) / (n g(X_i))`; shape rows and bounds come from `set`.
pub fn assemble(problem: &ProblemSpec, batch: &SampleBatch, set: &DiscreteShapeSet) -> Result<LpModel> {
    problem.ensure_valid()?;
    if batch.dim != problem.dimension {
        return Err(Error::DimensionMismatch { expected: problem.dimension, got: batch.dim });
    }
    if set.n != batch.len() {
        return Err(Error::IndexMismatch(format!(
            "shape set covers {} samples, batch has {}",
            set.n,
            batch.len()
        )));
    }
    if let Some(i) = batch.densities.iter().position(|&g| !(g > 0.0 && g.is_finite())) {
        return Err(Error::InvalidProblem(format!("sample {i} has density {}", batch.densities[i])));
    }
    let n = batch.len();
    let k = problem.constraints.len();
    // one row of k + 1 weighted function values per sample
    let values: Vec<Vec<f64>> = par::map_indexed(n, |i| {
        let x = batch.point(i);
        let w = 1.0 / (n as f64 * batch.densities[i]);
        std::iter::once(&problem.objective)
            .chain(problem.constraints.iter().map(|c| &c.function))
            .map(|f| f.eval(x) * w)
            .collect()
    });
    let mut objective = vec![0.0; set.variable_count()];
    for (i, row) in values.iter().enumerate() {
        objective[i] = row[0];
    }
    if let Some(i) = objective.iter().position(|c| !c.is_finite()) {
        return Err(Error::InvalidProblem(format!("objective is not finite at sample {i}")));
    }
    let mut model = LpModel::new(objective, set.lower.clone(), set.upper.clone());
    let mut idx = Vec::with_capacity(n);
    let mut vals = Vec::with_capacity(n);
    for (j, c) in problem.constraints.iter().enumerate() {
        idx.clear();
        vals.clear();
        for (i, row) in values.iter().enumerate() {
            let a = row[j + 1];
            if !a.is_finite() {
                return Err(Error::InvalidProblem(format!("constraint {j} is not finite at sample {i}")));
            }
            if a != 0.0 {
                idx.push(i);
                vals.push(a);
            }
        }
        model.add_row(&idx, &vals, c.relation, c.mu);
    }
    model.moment_rows = k;
    for p in &set.pairwise {
        model.add_row(&[p.lo, p.hi], &[1.0, -1.0], Relation::LessEqual, 0.0);
    }
    for r in &set.second_diff {
        model.add_row(&r.idx, &r.coeffs, Relation::LessEqual, 0.0);
    }
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::MomentFunction;
    use crate::problem::{Bound, Domain, MomentConstraint, ShapeKind, ShapeSpec};
    use crate::sampling::{Sampler, SamplerSpec};
    use crate::shape::discretize;

    fn unimodal_problem() -> ProblemSpec {
        let x = MomentFunction::coord(0);
        let inner = MomentFunction::interval(-1.0, 1.0);
        ProblemSpec {
            dimension: 1,
            objective: MomentFunction::product(vec![x.clone(), MomentFunction::interval(3.0, 5.0)]),
            constraints: vec![
                MomentConstraint::le(
                    MomentFunction::product(vec![MomentFunction::monomial(0, 2), inner.clone()]),
                    6.0,
                ),
                MomentConstraint::eq(MomentFunction::interval(-5.0, 5.0), 1.0),
                MomentConstraint::eq(inner.clone(), 0.25),
                MomentConstraint::eq(MomentFunction::product(vec![x, inner]), 0.0),
            ],
            shape: ShapeSpec::new(
                ShapeKind::Unimodal,
                Some(vec![0.0]),
                Domain::Interval { lo: -5.0, hi: 5.0 },
                Bound::Uniform { m: 1.0 },
            )
            .unwrap(),
        }
    }

    #[test]
    fn unimodal_five_samples_layout() {
        let p = unimodal_problem();
        let s = Sampler::new(SamplerSpec::UniformBox { lo: vec![-5.0], hi: vec![5.0] }).unwrap();
        let pts: Vec<Vec<f64>> = [-3.0, -0.5, 0.5, 2.0, 4.0].iter().map(|&x| vec![x]).collect();
        let b = SampleBatch::from_points(&s, &pts).unwrap();
        let set = discretize(&p.shape, &b).unwrap();
        let m = assemble(&p, &b, &set).unwrap();
        assert_eq!(m.n_vars, 5);
        assert_eq!(m.moment_rows, 4);
        // no sample sits on the mode, so the two chains give n - 2 rows
        assert_eq!(m.row_count() - m.moment_rows, 3);
        // objective weight x / (n g) = 4 / (5 * 0.1)
        assert!((m.objective[4] - 8.0).abs() < 1e-12);
        assert_eq!(m.objective[..4], [0.0; 4]);
        let (idx, vals) = m.row(1);
        assert_eq!(idx, &[0, 1, 2, 3, 4]);
        assert!(vals.iter().all(|v| (v - 2.0).abs() < 1e-12));
        assert_eq!(m.upper, vec![1.0; 5]);
    }

    #[test]
    fn mismatched_set_rejected() {
        let p = unimodal_problem();
        let s = Sampler::new(SamplerSpec::UniformBox { lo: vec![-5.0], hi: vec![5.0] }).unwrap();
        let b = SampleBatch::from_points(&s, &[vec![1.0], vec![2.0]]).unwrap();
        let b3 = SampleBatch::from_points(&s, &[vec![1.0], vec![2.0], vec![3.0]]).unwrap();
        let set = discretize(&p.shape, &b).unwrap();
        assert!(matches!(assemble(&p, &b3, &set), Err(Error::IndexMismatch(_))));
    }
}
