use super::reduce::{
    dominance_pairs, transitive_reduce_dense, transitive_reduce_sparse, DominanceOrder,
    DENSE_CUTOFF,
};
use super::{BoundFunction, DiscreteShapeSet, PairwiseInequality, SecondDifferenceRow};
use crate::error::{Error, Result};
use crate::problem::{ShapeKind, ShapeSpec};
use crate::sampling::SampleBatch;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiscretizeOptions {
    /// Apply transitive reduction to orthounimodal dominance pairs.
    pub reduce: bool,
}

impl Default for DiscretizeOptions {
    fn default() -> Self {
        Self { reduce: true }
    }
}

/// Discrete shape constraints with transitive reduction on.
pub fn discretize(shape: &ShapeSpec, batch: &SampleBatch) -> Result<DiscreteShapeSet> {
    discretize_with(shape, batch, DiscretizeOptions::default())
}

pub fn discretize_with(
    shape: &ShapeSpec,
    batch: &SampleBatch,
    opts: DiscretizeOptions,
) -> Result<DiscreteShapeSet> {
    shape.check()?;
    if batch.dim != shape.dimension() {
        return Err(Error::DimensionMismatch {
            expected: shape.dimension(),
            got: batch.dim,
        });
    }
    if batch.is_empty() {
        return Err(Error::InvalidProblem("empty sample batch".into()));
    }
    if let Some(i) = batch.points().position(|p| !shape.domain.contains(p)) {
        return Err(Error::InvalidProblem(format!("sample {i} lies outside the shape domain")));
    }
    let bound = BoundFunction::for_shape(shape)?;
    let n = batch.len();
    let upper: Vec<f64> = batch.points().map(|p| bound.at(p)).collect();
    let mut set = DiscreteShapeSet {
        n,
        pairwise: Vec::new(),
        second_diff: Vec::new(),
        lower: vec![0.0; n],
        upper,
        aux_count: 0,
        aux_points: Vec::new(),
        naive_pair_count: 0,
    };
    match shape.kind {
        ShapeKind::Orthounimodal => {
            let mode = shape.mode.as_deref().ok_or(Error::ModeOutsideDomain)?;
            DominanceOrder::check_distinct(batch)?;
            let order = DominanceOrder::new(batch, mode)?;
            let adj = dominance_pairs(&order);
            set.naive_pair_count = adj.iter().map(Vec::len).sum();
            let kept = if !opts.reduce {
                adj
            } else if n < DENSE_CUTOFF {
                transitive_reduce_dense(&adj)
            } else {
                transitive_reduce_sparse(&adj)
            };
            set.pairwise = kept
                .iter()
                .enumerate()
                .flat_map(|(i, row)| row.iter().map(move |&j| PairwiseInequality { lo: i, hi: j }))
                .collect();
        }
        kind => {
            let order = sorted_order(batch)?;
            let x = |i: usize| batch.point(i)[0];
            match kind {
                ShapeKind::MonotoneNonincreasing => {
                    for w in order.windows(2) {
                        set.pairwise.push(PairwiseInequality { lo: w[1], hi: w[0] });
                    }
                }
                ShapeKind::MonotoneNondecreasing => {
                    for w in order.windows(2) {
                        set.pairwise.push(PairwiseInequality { lo: w[0], hi: w[1] });
                    }
                }
                ShapeKind::Unimodal => {
                    let c = shape.mode.as_ref().map(|m| m[0]).ok_or(Error::ModeOutsideDomain)?;
                    let left: Vec<usize> = order.iter().copied().filter(|&i| x(i) <= c).collect();
                    let right: Vec<usize> = order.iter().copied().filter(|&i| x(i) >= c).collect();
                    for w in left.windows(2) {
                        set.pairwise.push(PairwiseInequality { lo: w[0], hi: w[1] });
                    }
                    for w in right.windows(2) {
                        set.pairwise.push(PairwiseInequality { lo: w[1], hi: w[0] });
                    }
                }
                ShapeKind::Convex => {
                    let (a, b) = shape.domain.interval().ok_or(Error::ModeOutsideDomain)?;
                    let (ia, ib) = (n, n + 1);
                    if x(order[0]) <= a || x(order[n - 1]) >= b {
                        let i = if x(order[0]) <= a { order[0] } else { order[n - 1] };
                        return Err(Error::DuplicateCoordinate {
                            first: i,
                            second: if x(order[0]) <= a { ia } else { ib },
                            coord: 0,
                        });
                    }
                    let mut chain = Vec::with_capacity(n + 2);
                    chain.push((ia, a));
                    chain.extend(order.iter().map(|&i| (i, x(i))));
                    chain.push((ib, b));
                    for w in chain.windows(3) {
                        let row = SecondDifferenceRow::new(
                            [w[0].0, w[1].0, w[2].0],
                            w[1].1 - w[0].1,
                            w[2].1 - w[1].1,
                        );
                        set.second_diff.push(row);
                    }
                    set.aux_count = 2;
                    set.aux_points = vec![a, b];
                    set.lower.extend([0.0, 0.0]);
                    set.upper.extend([bound.at(&[a]), bound.at(&[b])]);
                }
                ShapeKind::Orthounimodal => unreachable!(),
            }
            set.naive_pair_count = set.pairwise.len();
        }
    }
    debug_assert!(set.check());
    Ok(set)
}

/// Sample indices in increasing order of the (single) coordinate; ties rejected.
pub(crate) fn sorted_order(batch: &SampleBatch) -> Result<Vec<usize>> {
    let mut order: Vec<usize> = (0..batch.len()).collect();
    order.sort_by(|&a, &b| batch.point(a)[0].total_cmp(&batch.point(b)[0]));
    for w in order.windows(2) {
        if batch.point(w[0])[0] == batch.point(w[1])[0] {
            return Err(Error::DuplicateCoordinate {
                first: w[0].min(w[1]),
                second: w[0].max(w[1]),
                coord: 0,
            });
        }
    }
    Ok(order)
}
