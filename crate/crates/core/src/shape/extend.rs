//! Extension of discrete solutions to full densities, and an auditor that
//! checks a density against its shape class at probe points.

use super::discretize::sorted_order;
use super::{BoundFunction, DiscreteShapeSet};
use crate::error::{Error, Result};
use crate::problem::{Domain, ShapeKind, ShapeSpec};
use crate::sampling::SampleBatch;

#[derive(Clone, Debug)]
enum Extension {
    /// Right-continuous steps down; zero past the last sample.
    NonIncreasing { xs: Vec<f64>, vs: Vec<f64> },
    /// Left-closed steps up; zero before the first sample.
    NonDecreasing { xs: Vec<f64>, vs: Vec<f64> },
    Unimodal {
        c: f64,
        left_xs: Vec<f64>,
        left_vs: Vec<f64>,
        right_xs: Vec<f64>,
        right_vs: Vec<f64>,
    },
    /// Piecewise linear through the domain ends and the samples.
    Convex { xs: Vec<f64>, vs: Vec<f64> },
    /// `min(u(x), min{v_i : X_i in the box between the mode and x})`.
    LowerSetMin {
        mode: Vec<f64>,
        points: Vec<Vec<f64>>,
        vs: Vec<f64>,
    },
}

/// A density on the whole domain built from discrete values; the proofs'
/// constructions, used here as feasibility witnesses.
#[derive(Clone, Debug)]
pub struct ExtendedDensity {
    ext: Extension,
    bound: BoundFunction,
    domain: Domain,
}

/// `y` lies in the box between `mode` and `x` (same orthant, no farther out).
fn in_lower_box(mode: &[f64], y: &[f64], x: &[f64]) -> bool {
    mode.iter().zip(y.iter().zip(x)).all(|(a, (yk, xk))| {
        if xk >= a {
            a <= yk && yk <= xk
        } else {
            xk <= yk && yk <= a
        }
    })
}

impl ExtendedDensity {
    pub fn evaluate(&self, x: &[f64]) -> f64 {
        if !self.domain.contains(x) {
            return 0.0;
        }
        match &self.ext {
            Extension::NonIncreasing { xs, vs } => {
                let k = xs.partition_point(|&s| s < x[0]);
                vs.get(k).copied().unwrap_or(0.0)
            }
            Extension::NonDecreasing { xs, vs } => {
                let k = xs.partition_point(|&s| s <= x[0]);
                if k == 0 {
                    0.0
                } else {
                    vs[k - 1]
                }
            }
            Extension::Unimodal { c, left_xs, left_vs, right_xs, right_vs } => {
                let t = x[0];
                if t < *c {
                    let k = left_xs.partition_point(|&s| s <= t);
                    if k == 0 {
                        0.0
                    } else {
                        left_vs[k - 1]
                    }
                } else if t > *c {
                    let k = right_xs.partition_point(|&s| s < t);
                    right_vs.get(k).copied().unwrap_or(0.0)
                } else {
                    let l = left_vs.last().copied().unwrap_or(0.0);
                    let r = right_vs.first().copied().unwrap_or(0.0);
                    l.max(r)
                }
            }
            Extension::Convex { xs, vs } => {
                let t = x[0];
                let k = xs.partition_point(|&s| s < t).clamp(1, xs.len() - 1);
                let (x0, x1) = (xs[k - 1], xs[k]);
                let w = (t - x0) / (x1 - x0);
                vs[k - 1] + w * (vs[k] - vs[k - 1])
            }
            Extension::LowerSetMin { mode, points, vs } => {
                let mut f = self.bound.at(x);
                for (p, v) in points.iter().zip(vs) {
                    if *v < f && in_lower_box(mode, p, x) {
                        f = *v;
                    }
                }
                f
            }
        }
    }

    pub fn bound_at(&self, x: &[f64]) -> f64 {
        if self.domain.contains(x) {
            self.bound.at(x)
        } else {
            0.0
        }
    }
}

/// Builds the extension of `v` (indexed like `set`) after checking that `v`
/// satisfies the discrete constraints to within `tol`.
pub fn extend_solution(
    shape: &ShapeSpec,
    batch: &SampleBatch,
    set: &DiscreteShapeSet,
    v: &[f64],
    tol: f64,
) -> Result<ExtendedDensity> {
    if set.n != batch.len() || v.len() != set.variable_count() {
        return Err(Error::IndexMismatch(format!(
            "batch has {} points, set has {} + {} variables, solution has {}",
            batch.len(),
            set.n,
            set.aux_count,
            v.len()
        )));
    }
    let violation = set.max_violation(v);
    if violation > tol {
        return Err(Error::ShapeViolation { violation });
    }
    let bound = BoundFunction::for_shape(shape)?;
    let ext = match shape.kind {
        ShapeKind::Orthounimodal => Extension::LowerSetMin {
            mode: shape.mode.clone().ok_or(Error::ModeOutsideDomain)?,
            points: batch.points().map(<[f64]>::to_vec).collect(),
            vs: v[..set.n].to_vec(),
        },
        kind => {
            let order = sorted_order(batch)?;
            let xs: Vec<f64> = order.iter().map(|&i| batch.point(i)[0]).collect();
            let vs: Vec<f64> = order.iter().map(|&i| v[i]).collect();
            match kind {
                ShapeKind::MonotoneNonincreasing => Extension::NonIncreasing { xs, vs },
                ShapeKind::MonotoneNondecreasing => Extension::NonDecreasing { xs, vs },
                ShapeKind::Unimodal => {
                    let c = shape.mode.as_ref().map(|m| m[0]).ok_or(Error::ModeOutsideDomain)?;
                    let split = |keep: &dyn Fn(f64) -> bool| -> (Vec<f64>, Vec<f64>) {
                        xs.iter().zip(&vs).filter(|(x, _)| keep(**x)).map(|(x, v)| (*x, *v)).unzip()
                    };
                    let (left_xs, left_vs) = split(&|x| x <= c);
                    let (right_xs, right_vs) = split(&|x| x >= c);
                    Extension::Unimodal { c, left_xs, left_vs, right_xs, right_vs }
                }
                ShapeKind::Convex => {
                    let mut all_x = vec![set.aux_points[0]];
                    all_x.extend(&xs);
                    all_x.push(set.aux_points[1]);
                    let mut all_v = vec![v[set.n]];
                    all_v.extend(&vs);
                    all_v.push(v[set.n + 1]);
                    Extension::Convex { xs: all_x, vs: all_v }
                }
                ShapeKind::Orthounimodal => unreachable!(),
            }
        }
    };
    Ok(ExtendedDensity {
        ext,
        bound,
        domain: shape.domain.clone(),
    })
}

/// Largest violation of the shape property or the bound by `f` over the
/// probes. Monotone and unimodal classes are checked along sorted probes,
/// convexity on consecutive triples and pairwise midpoints, and
/// orthounimodality on comparable probe pairs plus points pulled toward
/// the mode.
pub fn audit_density(shape: &ShapeSpec, f: &ExtendedDensity, probes: &[Vec<f64>]) -> f64 {
    let mut worst: f64 = 0.0;
    let values: Vec<f64> = probes.iter().map(|p| f.evaluate(p)).collect();
    for (p, &fx) in probes.iter().zip(&values) {
        worst = worst.max(-fx).max(fx - f.bound_at(p));
    }
    match shape.kind {
        ShapeKind::Orthounimodal => {
            let mode = shape.mode.as_deref().unwrap_or(&[]);
            for (i, x) in probes.iter().enumerate() {
                for (j, y) in probes.iter().enumerate() {
                    if i != j && in_lower_box(mode, y, x) {
                        worst = worst.max(values[i] - values[j]);
                    }
                }
                for t in 1..=3 {
                    let y: Vec<f64> = x
                        .iter()
                        .zip(mode)
                        .enumerate()
                        .map(|(k, (xk, a))| {
                            let s = ((k + i + t) % 5 + 1) as f64 / 6.0;
                            a + s * (xk - a)
                        })
                        .collect();
                    worst = worst.max(values[i] - f.evaluate(&y));
                }
            }
        }
        kind => {
            let mut pts: Vec<(f64, f64)> = probes.iter().map(|p| p[0]).zip(values).collect();
            pts.sort_by(|a, b| a.0.total_cmp(&b.0));
            match kind {
                ShapeKind::MonotoneNonincreasing => {
                    for w in pts.windows(2) {
                        worst = worst.max(w[1].1 - w[0].1);
                    }
                }
                ShapeKind::MonotoneNondecreasing => {
                    for w in pts.windows(2) {
                        worst = worst.max(w[0].1 - w[1].1);
                    }
                }
                ShapeKind::Unimodal => {
                    let c = shape.mode.as_ref().map(|m| m[0]).unwrap_or(0.0);
                    let fc = f.evaluate(&[c]);
                    for w in pts.windows(2) {
                        if w[1].0 <= c {
                            worst = worst.max(w[0].1 - w[1].1);
                        } else if w[0].0 >= c {
                            worst = worst.max(w[1].1 - w[0].1);
                        }
                    }
                    for p in &pts {
                        worst = worst.max(p.1 - fc);
                    }
                }
                ShapeKind::Convex => {
                    for w in pts.windows(3) {
                        let (h1, h2) = (w[1].0 - w[0].0, w[2].0 - w[1].0);
                        if h1 > 0.0 && h2 > 0.0 {
                            let chord = (h2 * w[0].1 + h1 * w[2].1) / (h1 + h2);
                            worst = worst.max(w[1].1 - chord);
                        }
                    }
                    let m = pts.len();
                    for k in 0..m {
                        let (a, b) = (pts[k], pts[(k * 7 + 3) % m]);
                        let mid = f.evaluate(&[0.5 * (a.0 + b.0)]);
                        worst = worst.max(mid - 0.5 * (a.1 + b.1));
                    }
                }
                ShapeKind::Orthounimodal => unreachable!(),
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::Bound;
    use crate::sampling::{Sampler, SamplerSpec};
    use crate::shape::discretize;

    fn setup_1d(kind: ShapeKind, mode: Option<f64>, xs: &[f64]) -> (ShapeSpec, SampleBatch, DiscreteShapeSet) {
        let shape = ShapeSpec::new(
            kind,
            mode.map(|c| vec![c]),
            Domain::Interval { lo: 0.0, hi: 1.0 },
            Bound::Uniform { m: 2.0 },
        )
        .unwrap();
        let s = Sampler::new(SamplerSpec::UniformBox { lo: vec![0.0], hi: vec![1.0] }).unwrap();
        let b = SampleBatch::from_points(&s, &xs.iter().map(|&x| vec![x]).collect::<Vec<_>>()).unwrap();
        let set = discretize(&shape, &b).unwrap();
        (shape, b, set)
    }

    #[test]
    fn monotone_step_function() {
        let (shape, b, set) = setup_1d(ShapeKind::MonotoneNonincreasing, None, &[0.2, 0.8]);
        let f = extend_solution(&shape, &b, &set, &[2.0, 1.0], 1e-12).unwrap();
        assert_eq!(f.evaluate(&[0.0]), 2.0);
        assert_eq!(f.evaluate(&[0.2]), 2.0);
        assert_eq!(f.evaluate(&[0.21]), 1.0);
        assert_eq!(f.evaluate(&[0.8]), 1.0);
        assert_eq!(f.evaluate(&[0.81]), 0.0);
        assert_eq!(f.evaluate(&[1.0]), 0.0);
    }

    #[test]
    fn unimodal_mode_takes_neighbour_max() {
        let (shape, b, set) = setup_1d(ShapeKind::Unimodal, Some(0.5), &[0.1, 0.4, 0.7]);
        let v = [0.5, 1.0, 1.5];
        let f = extend_solution(&shape, &b, &set, &v, 1e-12).unwrap();
        assert_eq!(f.evaluate(&[0.05]), 0.0);
        assert_eq!(f.evaluate(&[0.45]), 1.0);
        assert_eq!(f.evaluate(&[0.5]), 1.5);
        assert_eq!(f.evaluate(&[0.6]), 1.5);
        assert_eq!(f.evaluate(&[0.9]), 0.0);
        for (i, p) in b.points().enumerate() {
            assert_eq!(f.evaluate(p), v[i]);
        }
    }

    #[test]
    fn convex_interpolates() {
        let (shape, b, set) = setup_1d(ShapeKind::Convex, None, &[0.5]);
        let f = extend_solution(&shape, &b, &set, &[0.5, 1.5, 1.0], 1e-12).unwrap();
        assert_eq!(f.evaluate(&[0.5]), 0.5);
        assert!((f.evaluate(&[0.25]) - 1.0).abs() < 1e-15);
        assert!((f.evaluate(&[1.0]) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn violations_are_rejected() {
        let (shape, b, set) = setup_1d(ShapeKind::MonotoneNonincreasing, None, &[0.2, 0.8]);
        assert!(matches!(
            extend_solution(&shape, &b, &set, &[1.0, 2.0], 1e-9),
            Err(Error::ShapeViolation { .. })
        ));
        assert!(matches!(
            extend_solution(&shape, &b, &set, &[1.0], 1e-9),
            Err(Error::IndexMismatch(_))
        ));
    }

    #[test]
    fn orthounimodal_empty_lower_set_gets_bound() {
        let shape = ShapeSpec::new(
            ShapeKind::Orthounimodal,
            Some(vec![0.0, 0.0]),
            Domain::Box { lo: vec![0.0; 2], hi: vec![1.0; 2] },
            Bound::Uniform { m: 3.0 },
        )
        .unwrap();
        let s = Sampler::new(SamplerSpec::UniformBox { lo: vec![0.0; 2], hi: vec![1.0; 2] }).unwrap();
        let b = SampleBatch::from_points(&s, &[vec![0.5, 0.5], vec![0.7, 0.8]]).unwrap();
        let set = discretize(&shape, &b).unwrap();
        let f = extend_solution(&shape, &b, &set, &[2.0, 1.0], 1e-12).unwrap();
        assert_eq!(f.evaluate(&[0.1, 0.9]), 3.0);
        assert_eq!(f.evaluate(&[0.5, 0.5]), 2.0);
        assert_eq!(f.evaluate(&[0.6, 0.6]), 2.0);
        assert_eq!(f.evaluate(&[0.9, 0.9]), 1.0);
        let probes: Vec<Vec<f64>> =
            (0..100).map(|k| vec![(k % 10) as f64 / 9.5, (k / 10) as f64 / 9.5]).collect();
        assert!(audit_density(&shape, &f, &probes) <= 0.0);
    }
}
