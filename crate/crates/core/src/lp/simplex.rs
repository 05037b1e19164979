//! Bounded-variable primal revised simplex on the computational form
//!
//! ```text
//!     min c.x   s.t.   A x - r = 0,   lo <= (x, r) <= hi
//! ```
//!
//! Structural variables are `0..n`, the logical of row `i` is `n + i`
//! (column `-e_i`). Phase 1 minimizes the sum of bound infeasibilities of the
//! basic variables and only steps to the first breakpoint; phase 2 uses
//! Dantzig pricing with a two-pass Harris ratio test and bound flips. A run
//! of degenerate pivots switches to Bland's rule until progress resumes.
//!
//! Bounds are relaxed outward by tiny random amounts for the main solve and
//! restored for a final clean-up pass. The basis is refactored every 100
//! pivots, or earlier when the eta file grows too large.

use super::lu::LuFactor;

pub(crate) const FEAS_TOL: f64 = 1e-9;
pub(crate) const OPT_TOL: f64 = 1e-9;
const PIVOT_TOL: f64 = 1e-9;
const REFACTOR_EVERY: usize = 100;
/// Refactor early once the eta file outgrows the factor by this ratio.
const ETA_FILL: f64 = 10.0;
const DEGENERATE_STREAK: usize = 1000;
const DEGENERATE_STEP: f64 = 1e-12;
/// Relative size of the anti-degeneracy bound shifts.
const PERTURBATION: f64 = 1e-7;

/// Sparse LP in computational form.
#[derive(Clone, Debug)]
pub(crate) struct StdLp {
    pub m: usize,
    pub n: usize,
    pub col_start: Vec<usize>,
    pub row_idx: Vec<usize>,
    pub vals: Vec<f64>,
    pub cost: Vec<f64>,
    /// Bounds for all `n + m` variables.
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum SimplexStatus {
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit,
}

#[derive(Clone, Debug)]
pub(crate) struct SimplexOutcome {
    pub status: SimplexStatus,
    /// Values of all `n + m` variables.
    pub x: Vec<f64>,
    /// Row multipliers `y = B^{-T} c_B`.
    pub y: Vec<f64>,
    pub iterations: usize,
    pub phase1_iterations: usize,
    pub bland_iterations: usize,
    pub refactorizations: usize,
    /// Unbounded ray over all `n + m` variables.
    pub ray: Option<Vec<f64>>,
    /// Phase-1 multipliers when infeasibility was proven.
    pub farkas: Option<Vec<f64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum State {
    Basic,
    Lower,
    Upper,
    /// Free nonbasic variable held at zero.
    Zero,
}

struct Simplex<'a> {
    lp: &'a StdLp,
    basis: Vec<usize>,
    state: Vec<State>,
    x: Vec<f64>,
    lu: LuFactor,
    refactorizations: usize,
    /// Working bounds; relaxed while `perturbed` is set.
    lo: Vec<f64>,
    hi: Vec<f64>,
    perturbed: bool,
}

impl StdLp {
    fn column(&self, j: usize) -> (&[usize], &[f64]) {
        let r = self.col_start[j]..self.col_start[j + 1];
        (&self.row_idx[r.clone()], &self.vals[r])
    }

    fn dot_column(&self, j: usize, y: &[f64]) -> f64 {
        if j < self.n {
            let mut s = 0.0;
            for k in self.col_start[j]..self.col_start[j + 1] {
                s += self.vals[k] * y[self.row_idx[k]];
            }
            s
        } else {
            -y[j - self.n]
        }
    }

    /// Adds `scale * column(j)` into a row-indexed vector.
    fn scatter_column(&self, j: usize, scale: f64, out: &mut [f64]) {
        if j < self.n {
            for k in self.col_start[j]..self.col_start[j + 1] {
                out[self.row_idx[k]] += scale * self.vals[k];
            }
        } else {
            out[j - self.n] -= scale;
        }
    }

    fn cost_of(&self, j: usize) -> f64 {
        if j < self.n {
            self.cost[j]
        } else {
            0.0
        }
    }
}

impl<'a> Simplex<'a> {
    fn new(lp: &'a StdLp) -> Self {
        let total = lp.n + lp.m;
        let mut state = vec![State::Lower; total];
        let mut x = vec![0.0; total];
        for j in 0..lp.n {
            let (s, v) = nonbasic_start(lp.lo[j], lp.hi[j]);
            state[j] = s;
            x[j] = v;
        }
        let basis: Vec<usize> = (lp.n..total).collect();
        for &j in &basis {
            state[j] = State::Basic;
        }
        let mut me = Self {
            lp,
            basis,
            state,
            x,
            lu: LuFactor::default(),
            refactorizations: 0,
            lo: lp.lo.clone(),
            hi: lp.hi.clone(),
            perturbed: false,
        };
        me.crash();
        me.perturb();
        me.refactor();
        me
    }

    /// Relaxes every finite, non-fixed bound outward by a small
    /// deterministic pseudo-random amount so that degenerate vertices split.
    fn perturb(&mut self) {
        let lp = self.lp;
        let mut h: u64 = 0x9e37_79b9_7f4a_7c15;
        for j in 0..lp.n + lp.m {
            if lp.lo[j] == lp.hi[j] {
                continue;
            }
            for side in 0..2 {
                h ^= h << 13;
                h ^= h >> 7;
                h ^= h << 17;
                let xi = 0.5 + 0.5 * (h >> 11) as f64 / (1u64 << 53) as f64;
                if side == 0 && lp.lo[j].is_finite() {
                    self.lo[j] = lp.lo[j] - PERTURBATION * (1.0 + lp.lo[j].abs()) * xi;
                } else if side == 1 && lp.hi[j].is_finite() {
                    self.hi[j] = lp.hi[j] + PERTURBATION * (1.0 + lp.hi[j].abs()) * xi;
                }
            }
            self.snap_nonbasic(j);
        }
        self.perturbed = true;
    }

    /// Restores the original bounds; basic values are recomputed.
    fn unperturb(&mut self) {
        self.lo.copy_from_slice(&self.lp.lo);
        self.hi.copy_from_slice(&self.lp.hi);
        for j in 0..self.lp.n + self.lp.m {
            self.snap_nonbasic(j);
        }
        self.perturbed = false;
        self.refactor();
    }

    fn snap_nonbasic(&mut self, j: usize) {
        match self.state[j] {
            State::Lower => self.x[j] = self.lo[j],
            State::Upper => self.x[j] = self.hi[j],
            State::Zero | State::Basic => {}
        }
    }

    /// Swaps singleton structural columns into the basis for rows whose
    /// logical would start outside its bounds.
    fn crash(&mut self) {
        let lp = self.lp;
        let mut activity = vec![0.0; lp.m];
        for j in 0..lp.n {
            if self.x[j] != 0.0 {
                lp.scatter_column(j, self.x[j], &mut activity);
            }
        }
        for j in 0..lp.n {
            let r = lp.col_start[j]..lp.col_start[j + 1];
            if r.len() != 1 {
                continue;
            }
            let i = lp.row_idx[r.start];
            let a = lp.vals[r.start];
            let logical = lp.n + i;
            if self.basis[i] != logical || a == 0.0 {
                continue;
            }
            let act = activity[i];
            let target = if act < lp.lo[logical] - FEAS_TOL {
                lp.lo[logical]
            } else if act > lp.hi[logical] + FEAS_TOL {
                lp.hi[logical]
            } else {
                continue;
            };
            let xj = self.x[j] + (target - act) / a;
            if xj < lp.lo[j] - FEAS_TOL || xj > lp.hi[j] + FEAS_TOL {
                continue;
            }
            self.basis[i] = j;
            self.state[j] = State::Basic;
            self.x[j] = xj;
            activity[i] = target;
            let (s, v) = if target == lp.lo[logical] {
                (State::Lower, lp.lo[logical])
            } else {
                (State::Upper, lp.hi[logical])
            };
            self.state[logical] = s;
            self.x[logical] = v;
        }
    }

    fn basis_column(&self, t: usize) -> (Vec<usize>, Vec<f64>) {
        let j = self.basis[t];
        if j < self.lp.n {
            let (i, v) = self.lp.column(j);
            (i.to_vec(), v.to_vec())
        } else {
            (vec![j - self.lp.n], vec![-1.0])
        }
    }

    /// Fresh LU of the basis, repairing singularity with logicals, then
    /// recomputes the basic values from the nonbasic ones.
    fn refactor(&mut self) {
        self.refactorizations += 1;

        loop {
            let cols: Vec<(Vec<usize>, Vec<f64>)> =
                (0..self.lp.m).map(|t| self.basis_column(t)).collect();
            match LuFactor::factor(self.lp.m, |t| (&cols[t].0[..], &cols[t].1[..])) {
                Ok(f) => {
                    self.lu = f;
                    break;
                }
                Err(sing) => {
                    for (&i, &t) in sing.rows.iter().zip(&sing.positions) {
                        let out = self.basis[t];
                        let (s, v) = nonbasic_near(self.lo[out], self.hi[out], self.x[out]);
                        self.state[out] = s;
                        self.x[out] = v;
                        let logical = self.lp.n + i;
                        self.basis[t] = logical;
                        self.state[logical] = State::Basic;
                    }
                }
            }
        }
        self.recompute_basics();
    }

    fn recompute_basics(&mut self) {
        let lp = self.lp;
        let mut rhs = vec![0.0; lp.m];
        for j in 0..lp.n + lp.m {
            if self.state[j] != State::Basic && self.x[j] != 0.0 {
                lp.scatter_column(j, -self.x[j], &mut rhs);
            }
        }
        let xb = self.lu.ftran(&mut rhs);
        for (t, &j) in self.basis.iter().enumerate() {
            self.x[j] = xb[t];
        }
    }

    fn infeasibility(&self, j: usize) -> f64 {
        let v = self.x[j];
        if v < self.lo[j] - FEAS_TOL {
            v - self.lo[j]
        } else if v > self.hi[j] + FEAS_TOL {
            v - self.hi[j]
        } else {
            0.0
        }
    }

    /// Basic cost vector: phase-1 signs if any basic variable is out of
    /// bounds, otherwise the true costs.
    fn basic_costs(&self) -> (bool, Vec<f64>) {
        let mut phase1 = false;
        let mut cb = vec![0.0; self.lp.m];
        for (t, &j) in self.basis.iter().enumerate() {
            let inf = self.infeasibility(j);
            if inf != 0.0 {
                phase1 = true;
                cb[t] = inf.signum();
            }
        }
        if !phase1 {
            for (t, &j) in self.basis.iter().enumerate() {
                cb[t] = self.lp.cost_of(j);
            }
        }
        (phase1, cb)
    }

    fn reduced_cost(&self, j: usize, y: &[f64], phase1: bool) -> f64 {
        let c = if phase1 { 0.0 } else { self.lp.cost_of(j) };
        c - self.lp.dot_column(j, y)
    }

    /// Entering variable and direction (+1 increase, -1 decrease): the
    /// largest reduced cost under Dantzig, the smallest index under Bland.
    fn price(&self, y: &[f64], phase1: bool, bland: bool) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64)> = None;
        let mut best_score = 0.0;
        for j in 0..self.lp.n + self.lp.m {
            let s = self.state[j];
            if s == State::Basic || self.lo[j] == self.hi[j] {
                continue;
            }
            let d = self.reduced_cost(j, y, phase1);
            let eligible = match s {
                State::Lower => d < -OPT_TOL,
                State::Upper => d > OPT_TOL,
                State::Zero => d.abs() > OPT_TOL,
                State::Basic => false,
            };
            if !eligible {
                continue;
            }
            if bland {
                return Some((j, -d.signum()));
            }
            if d.abs() > best_score {
                best_score = d.abs();
                best = Some((j, -d.signum()));
            }
        }
        best
    }

    fn run(mut self, max_iter: usize) -> SimplexOutcome {
        let lp = self.lp;
        let mut iterations = 0;
        let mut phase1_iterations = 0;
        let mut bland_iterations = 0;
        let mut degenerate = 0;
        let mut bland = false;
        let mut verified_rounds = 0;

        loop {
            if self.lu.eta_count() >= REFACTOR_EVERY || self.lu.etas_outweigh(ETA_FILL) {
                self.refactor();
            }
            let (phase1, mut cb) = self.basic_costs();
            let y = self.lu.btran(&mut cb);
            let entering = self.price(&y, phase1, bland);

            let Some((q, dir)) = entering else {
                // candidate optimum (or proof of infeasibility): verify on a fresh factor
                if self.lu.eta_count() > 0 && verified_rounds < 3 {
                    verified_rounds += 1;
                    self.refactor();
                    continue;
                }
                if self.perturbed {
                    self.unperturb();
                    verified_rounds = 0;
                    continue;
                }
                let (phase1, mut cb) = self.basic_costs();
                let y = self.lu.btran(&mut cb);
                let status = if phase1 { SimplexStatus::Infeasible } else { SimplexStatus::Optimal };
                return SimplexOutcome {
                    status,
                    farkas: phase1.then(|| y.clone()),
                    x: self.x,
                    y,
                    iterations,
                    phase1_iterations,
                    bland_iterations,
                    refactorizations: self.refactorizations,
                    ray: None,
                };
            };

            if iterations >= max_iter {
                return SimplexOutcome {
                    status: SimplexStatus::IterationLimit,
                    x: self.x,
                    y,
                    iterations,
                    phase1_iterations,
                    bland_iterations,
                    refactorizations: self.refactorizations,
                    ray: None,
                    farkas: None,
                };
            }
            iterations += 1;
            if phase1 {
                phase1_iterations += 1;
            }
            if bland {
                bland_iterations += 1;
            }

            let mut col = vec![0.0; lp.m];
            lp.scatter_column(q, 1.0, &mut col);
            let alpha = self.lu.ftran(&mut col);
            let step = self.ratio_test(q, dir, &alpha, phase1, bland);
            match step {
                Step::Unbounded => {
                    if self.perturbed {
                        self.unperturb();
                        continue;
                    }
                    if self.lu.eta_count() > 0 {
                        self.refactor();
                        continue;
                    }
                    let mut ray = vec![0.0; lp.n + lp.m];
                    ray[q] = dir;
                    for (t, &j) in self.basis.iter().enumerate() {
                        ray[j] = -dir * alpha[t];
                    }
                    return SimplexOutcome {
                        status: SimplexStatus::Unbounded,
                        x: self.x,
                        y,
                        iterations,
                        phase1_iterations,
                        bland_iterations,
                        refactorizations: self.refactorizations,
                        ray: Some(ray),
                        farkas: None,
                    };
                }
                Step::Flip(theta) => {
                    self.advance(q, dir, theta, &alpha);
                    self.state[q] = if dir > 0.0 { State::Upper } else { State::Lower };
                    self.x[q] = if dir > 0.0 { self.hi[q] } else { self.lo[q] };
                    degenerate = 0;
                    bland = false;
                }
                Step::Pivot { pos, theta, to_upper } => {
                    self.advance(q, dir, theta, &alpha);
                    let out = self.basis[pos];
                    if to_upper {
                        self.state[out] = State::Upper;
                        self.x[out] = self.hi[out];
                    } else {
                        self.state[out] = State::Lower;
                        self.x[out] = self.lo[out];
                    }
                    self.basis[pos] = q;
                    self.state[q] = State::Basic;
                    self.lu.update(pos, &alpha);
                    if theta <= DEGENERATE_STEP {
                        degenerate += 1;
                        if degenerate >= DEGENERATE_STREAK {
                            bland = true;
                        }
                    } else {
                        degenerate = 0;
                        bland = false;
                    }
                }
            }
            verified_rounds = 0;
        }
    }

    fn advance(&mut self, q: usize, dir: f64, theta: f64, alpha: &[f64]) {
        if theta == 0.0 {
            return;
        }
        self.x[q] += dir * theta;
        for (t, &j) in self.basis.iter().enumerate() {
            if alpha[t] != 0.0 {
                self.x[j] -= dir * theta * alpha[t];
            }
        }
    }

    fn ratio_test(&self, q: usize, dir: f64, alpha: &[f64], phase1: bool, bland: bool) -> Step {
        let flip = self.hi[q] - self.lo[q];
        let tol = if bland { 0.0 } else { FEAS_TOL };

        // pass 1: relaxed bound
        let mut theta_max = f64::INFINITY;
        let mut limits: Vec<(usize, f64, bool)> = Vec::new();
        for (t, &j) in self.basis.iter().enumerate() {
            let a = alpha[t];
            if a.abs() <= PIVOT_TOL {
                continue;
            }
            let rate = -dir * a;
            let v = self.x[j];
            let (lo, hi) = (self.lo[j], self.hi[j]);
            let below = v < lo - FEAS_TOL;
            let above = v > hi + FEAS_TOL;
            let (exact, relaxed, to_upper) = if phase1 && below {
                if rate > 0.0 {
                    ((lo - v) / rate, (lo - v + tol) / rate, false)
                } else {
                    continue;
                }
            } else if phase1 && above {
                if rate < 0.0 {
                    ((v - hi) / -rate, (v - hi + tol) / -rate, true)
                } else {
                    continue;
                }
            } else if rate < 0.0 {
                if lo == f64::NEG_INFINITY {
                    continue;
                }
                (((v - lo) / -rate).max(0.0), (v - lo + tol) / -rate, false)
            } else {
                if hi == f64::INFINITY {
                    continue;
                }
                (((hi - v) / rate).max(0.0), (hi - v + tol) / rate, true)
            };
            // never relax below the exact step (slightly infeasible basics under Bland)
            theta_max = theta_max.min(relaxed.max(exact));
            limits.push((t, exact, to_upper));
        }

        if flip <= theta_max && flip.is_finite() {
            return Step::Flip(flip);
        }
        if theta_max == f64::INFINITY {
            return Step::Unbounded;
        }

        // pass 2: largest pivot among the blocking candidates
        let mut choice: Option<(usize, f64, bool)> = None;
        for &(t, exact, to_upper) in &limits {
            if exact > theta_max {
                continue;
            }
            choice = match choice {
                None => Some((t, exact, to_upper)),
                Some(c) => {
                    let better = if bland {
                        exact < c.1 || (exact == c.1 && self.basis[t] < self.basis[c.0])
                    } else {
                        alpha[t].abs() > alpha[c.0].abs()
                    };
                    if better {
                        Some((t, exact, to_upper))
                    } else {
                        Some(c)
                    }
                }
            };
        }
        let (pos, theta, to_upper) = choice.unwrap_or_else(|| {
            // only reachable through NaN data; fall back to the smallest step
            limits
                .iter()
                .copied()
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .expect("blocking candidates exist when theta_max is finite")
        });
        Step::Pivot { pos, theta, to_upper }
    }
}

enum Step {
    Unbounded,
    Flip(f64),
    Pivot { pos: usize, theta: f64, to_upper: bool },
}

fn nonbasic_start(lo: f64, hi: f64) -> (State, f64) {
    if lo.is_finite() {
        (State::Lower, lo)
    } else if hi.is_finite() {
        (State::Upper, hi)
    } else {
        (State::Zero, 0.0)
    }
}

fn nonbasic_near(lo: f64, hi: f64, v: f64) -> (State, f64) {
    match (lo.is_finite(), hi.is_finite()) {
        (true, true) => {
            if (v - lo).abs() <= (hi - v).abs() {
                (State::Lower, lo)
            } else {
                (State::Upper, hi)
            }
        }
        (true, false) => (State::Lower, lo),
        (false, true) => (State::Upper, hi),
        (false, false) => (State::Zero, 0.0),
    }
}

/// Runs the simplex with the iteration cap `50 (m + n)`.
pub(crate) fn run(lp: &StdLp) -> SimplexOutcome {
    let max_iter = 50 * (lp.m + lp.n).max(1);
    Simplex::new(lp).run(max_iter)
}
