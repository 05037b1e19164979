//! Dominance pairs and their transitive reduction.
//!
//! An edge `(i, j)` means point `i` dominates point `j` in the away-from-mode
//! order, so an orthounimodal density must satisfy `v_i <= v_j`. Redundant
//! edges are those implied by a path of length two; for a strict partial
//! order removing exactly those yields the unique transitive reduction.

use crate::error::{Error, Result};
use crate::par;
use crate::sampling::SampleBatch;

/// Below this many points the boolean square is computed on dense bitsets.
pub const DENSE_CUTOFF: usize = 512;

/// Points mapped into the away-from-mode coordinates `|x_k - a_k|`, tagged
/// by the orthant they occupy relative to the mode.
#[derive(Clone, Debug)]
pub struct DominanceOrder {
    n: usize,
    d: usize,
    dist: Vec<f64>,
    orthant: Vec<u64>,
}

impl DominanceOrder {
    pub fn new(batch: &SampleBatch, mode: &[f64]) -> Result<Self> {
        let d = batch.dim;
        if mode.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: mode.len() });
        }
        if d > 64 {
            return Err(Error::InvalidProblem("orthounimodal dimension is limited to 64".into()));
        }
        let n = batch.len();
        let mut dist = Vec::with_capacity(n * d);
        let mut orthant = Vec::with_capacity(n);
        for p in batch.points() {
            let mut sig = 0u64;
            for k in 0..d {
                let t = p[k] - mode[k];
                if t < 0.0 {
                    sig |= 1 << k;
                }
                dist.push(t.abs());
            }
            orthant.push(sig);
        }
        Ok(Self { n, d, dist, orthant })
    }

    /// Points given directly in away-from-mode coordinates, all in one orthant.
    pub fn from_distances(d: usize, dist: Vec<f64>) -> Self {
        let n = dist.len().checked_div(d).unwrap_or(0);
        Self { n, d, dist, orthant: vec![0; n] }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    fn row(&self, i: usize) -> &[f64] {
        &self.dist[i * self.d..(i + 1) * self.d]
    }

    /// `i` dominates `j`: same orthant and at least as far from the mode in
    /// every coordinate, and not the same point.
    pub fn dominates(&self, i: usize, j: usize) -> bool {
        i != j
            && self.orthant[i] == self.orthant[j]
            && self.row(i).iter().zip(self.row(j)).all(|(a, b)| a >= b)
            && self.row(i) != self.row(j)
    }

    /// Rejects ties in any coordinate, which would make the order depend on
    /// tie-breaking.
    pub fn check_distinct(batch: &SampleBatch) -> Result<()> {
        let n = batch.len();
        let mut idx: Vec<usize> = (0..n).collect();
        for k in 0..batch.dim {
            idx.sort_by(|&a, &b| batch.point(a)[k].total_cmp(&batch.point(b)[k]));
            for w in idx.windows(2) {
                if batch.point(w[0])[k] == batch.point(w[1])[k] {
                    let (first, second) = (w[0].min(w[1]), w[0].max(w[1]));
                    return Err(Error::DuplicateCoordinate { first, second, coord: k });
                }
            }
        }
        Ok(())
    }
}

/// Every dominating pair, as out-neighbour lists sorted by target index.
pub fn dominance_pairs(order: &DominanceOrder) -> Vec<Vec<usize>> {
    let n = order.len();
    if order.dimension() == 0 {
        return vec![Vec::new(); n];
    }
    // Candidates for `j` under `i` must have a smaller first distance.
    let mut by_first: Vec<usize> = (0..n).collect();
    by_first.sort_by(|&a, &b| order.row(a)[0].total_cmp(&order.row(b)[0]).then(a.cmp(&b)));
    let mut rank = vec![0usize; n];
    for (r, &i) in by_first.iter().enumerate() {
        rank[i] = r;
    }
    par::map_indexed(n, |i| {
        let mut out: Vec<usize> = by_first[..rank[i]]
            .iter()
            .copied()
            .filter(|&j| order.dominates(i, j))
            .collect();
        out.sort_unstable();
        out
    })
}

/// Flattens adjacency lists into `(from, to)` pairs in lexicographic order.
pub fn flatten(adj: &[Vec<usize>]) -> Vec<(usize, usize)> {
    adj.iter()
        .enumerate()
        .flat_map(|(i, row)| row.iter().map(move |&j| (i, j)))
        .collect()
}

fn adjacency(n: usize, pairs: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(i, j) in pairs {
        adj[i].push(j);
    }
    for row in &mut adj {
        row.sort_unstable();
        row.dedup();
    }
    adj
}

/// Keeps the pairs `(i, j)` with `A_ij = 1` and `(A^2)_ij = 0`.
///
/// Chooses the dense bitset product below [`DENSE_CUTOFF`] points and the
/// sparse row-list product above it. Output is sorted lexicographically.
pub fn transitive_reduce(n: usize, pairs: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let adj = adjacency(n, pairs);
    let reduced = if n < DENSE_CUTOFF {
        transitive_reduce_dense(&adj)
    } else {
        transitive_reduce_sparse(&adj)
    };
    flatten(&reduced)
}

/// Sparse boolean square: for each row, stamp every two-step target, then
/// drop the direct edges that were stamped.
pub fn transitive_reduce_sparse(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    const CHUNK: usize = 64;
    let n = adj.len();
    let chunks = par::map_indexed(n.div_ceil(CHUNK), |c| {
        let mut stamp = vec![usize::MAX; n];
        let lo = c * CHUNK;
        let hi = (lo + CHUNK).min(n);
        (lo..hi)
            .map(|i| {
                for &j in &adj[i] {
                    for &k in &adj[j] {
                        stamp[k] = i;
                    }
                }
                adj[i].iter().copied().filter(|&j| stamp[j] != i).collect::<Vec<_>>()
            })
            .collect::<Vec<_>>()
    });
    chunks.into_iter().flatten().collect()
}

/// Dense boolean square on 64-bit words.
pub fn transitive_reduce_dense(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let words = n.div_ceil(64);
    let mut bits = vec![0u64; n * words];
    for (i, row) in adj.iter().enumerate() {
        for &j in row {
            bits[i * words + j / 64] |= 1 << (j % 64);
        }
    }
    let bits = &bits;
    par::map_indexed(n, |i| {
        let mut two = vec![0u64; words];
        for &j in &adj[i] {
            for (w, b) in two.iter_mut().zip(&bits[j * words..(j + 1) * words]) {
                *w |= b;
            }
        }
        adj[i]
            .iter()
            .copied()
            .filter(|&j| two[j / 64] & (1 << (j % 64)) == 0)
            .collect()
    })
}
