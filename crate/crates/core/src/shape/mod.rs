//! Discrete shape constraints over sampled density values.
//!
//! The decision variable at sample `i` is the density value `v_i = f(X_i)`.
//! A shape class becomes pairwise inequalities `v_lo <= v_hi`, second
//! difference rows for convexity, and per-variable bounds `0 <= v_i <= u_i`.

mod discretize;
mod extend;
mod reduce;

pub use discretize::{discretize, discretize_with, DiscretizeOptions};
pub use extend::{audit_density, extend_solution, ExtendedDensity};
pub use reduce::{
    dominance_pairs, transitive_reduce, transitive_reduce_dense, transitive_reduce_sparse,
    DominanceOrder, DENSE_CUTOFF,
};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::problem::{Bound, ShapeSpec};
use crate::sampling::Sampler;

/// `v_lo <= v_hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PairwiseInequality {
    pub lo: usize,
    pub hi: usize,
}

/// `coeffs . (v_idx[0], v_idx[1], v_idx[2]) <= 0`, the slope condition
/// `(v1 - v0)/h1 <= (v2 - v1)/h2` multiplied through by `h1 h2 / (h1 + h2)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SecondDifferenceRow {
    pub idx: [usize; 3],
    pub coeffs: [f64; 3],
}

impl SecondDifferenceRow {
    pub fn new(idx: [usize; 3], h1: f64, h2: f64) -> Self {
        let s = h1 + h2;
        Self {
            idx,
            coeffs: [-h2 / s, 1.0, -h1 / s],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscreteShapeSet {
    /// Number of sample variables; auxiliaries follow at `n..n + aux_count`.
    pub n: usize,
    pub pairwise: Vec<PairwiseInequality>,
    pub second_diff: Vec<SecondDifferenceRow>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub aux_count: usize,
    /// Locations of the auxiliary variables (the domain ends for convexity).
    pub aux_points: Vec<f64>,
    /// Pair count before transitive reduction (equal to `pairwise.len()` for
    /// one-dimensional chains and for unreduced sets).
    pub naive_pair_count: usize,
}

impl DiscreteShapeSet {
    pub fn variable_count(&self) -> usize {
        self.n + self.aux_count
    }

    pub fn row_count(&self) -> usize {
        self.pairwise.len() + self.second_diff.len()
    }

    /// Largest violation of any row or bound by `v`.
    pub fn max_violation(&self, v: &[f64]) -> f64 {
        let mut worst: f64 = 0.0;
        for p in &self.pairwise {
            worst = worst.max(v[p.lo] - v[p.hi]);
        }
        for r in &self.second_diff {
            let s: f64 = (0..3).map(|k| r.coeffs[k] * v[r.idx[k]]).sum();
            worst = worst.max(s);
        }
        for (i, x) in v.iter().enumerate() {
            worst = worst.max(self.lower[i] - x).max(x - self.upper[i]);
        }
        worst
    }

    /// Structural invariants: bounds ordered, indices in range, no self pairs.
    pub fn check(&self) -> bool {
        let m = self.variable_count();
        self.lower.len() == m
            && self.upper.len() == m
            && self.lower.iter().zip(&self.upper).all(|(l, u)| l <= u)
            && self.pairwise.iter().all(|p| p.lo != p.hi && p.lo < m && p.hi < m)
            && self.second_diff.iter().all(|r| r.idx.iter().all(|&i| i < m))
    }
}

/// `(M g0(x))^{1/(1-gamma)}`.
pub fn envelope_upper_bound(m: f64, gamma: f64, g0: f64) -> f64 {
    (m * g0).powf(1.0 / (1.0 - gamma))
}

/// Pointwise evaluator for a shape's bound `u(x)`.
#[derive(Clone, Debug)]
pub struct BoundFunction {
    m: f64,
    envelope: Option<(f64, Sampler)>,
}

impl BoundFunction {
    pub fn new(bound: &Bound) -> Result<Self> {
        Ok(match bound {
            Bound::Uniform { m } => Self { m: *m, envelope: None },
            Bound::Envelope { m, gamma, reference } => Self {
                m: *m,
                envelope: Some((*gamma, Sampler::new(reference.clone())?)),
            },
        })
    }

    pub fn for_shape(shape: &ShapeSpec) -> Result<Self> {
        Self::new(&shape.bound)
    }

    /// `u(x)`; zero outside the reference support.
    pub fn at(&self, x: &[f64]) -> f64 {
        match &self.envelope {
            None => self.m,
            Some((gamma, g0)) => match g0.density(x) {
                Ok(g) => envelope_upper_bound(self.m, *gamma, g),
                Err(_) => 0.0,
            },
        }
    }

    pub fn is_envelope(&self) -> bool {
        self.envelope.is_some()
    }
}
