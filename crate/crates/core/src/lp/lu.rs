//! Sparse LU factorization of simplex bases with product-form updates.
//!
//! Right-looking Markowitz elimination with row-wise threshold pivoting.
//! Values live in row lists; column patterns are kept with lazy deletion.
//! The factor is stored as a sequence of elimination steps: step `k` pivots
//! on row `piv_row[k]`, basis position `piv_col[k]`, records the row
//! operations it applied (the `L` part) and the pivot row at that moment
//! (the `U` part). Basis changes append eta columns until the next
//! refactorization.

const THRESHOLD: f64 = 0.1;
const ABS_PIVOT_TOL: f64 = 1e-11;
const DROP_TOL: f64 = 1e-14;
const SEARCH_LIMIT: usize = 4;

#[derive(Clone, Debug)]
struct Eta {
    pos: usize,
    pivot: f64,
    idx: Vec<usize>,
    val: Vec<f64>,
}

#[derive(Clone, Debug, Default)]
pub(crate) struct LuFactor {
    m: usize,
    piv_row: Vec<usize>,
    piv_col: Vec<usize>,
    l_start: Vec<usize>,
    l_idx: Vec<usize>,
    l_val: Vec<f64>,
    u_start: Vec<usize>,
    u_idx: Vec<usize>,
    u_val: Vec<f64>,
    u_diag: Vec<f64>,
    etas: Vec<Eta>,
    eta_nnz: usize,
}

/// Rows and basis positions left without a pivot.
#[derive(Clone, Debug)]
pub(crate) struct Singular {
    pub rows: Vec<usize>,
    pub positions: Vec<usize>,
}

/// Doubly linked lists of indices bucketed by their current count.
struct Buckets {
    head: Vec<usize>,
    next: Vec<usize>,
    prev: Vec<usize>,
    count: Vec<usize>,
}

const NIL: usize = usize::MAX;

impl Buckets {
    fn new(len: usize, max_count: usize) -> Self {
        Self {
            head: vec![NIL; max_count + 2],
            next: vec![NIL; len],
            prev: vec![NIL; len],
            count: vec![0; len],
        }
    }

    fn insert(&mut self, i: usize, c: usize) {
        let c = c.min(self.head.len() - 1);
        self.count[i] = c;
        self.prev[i] = NIL;
        self.next[i] = self.head[c];
        if self.head[c] != NIL {
            self.prev[self.head[c]] = i;
        }
        self.head[c] = i;
    }

    fn remove(&mut self, i: usize) {
        let c = self.count[i];
        if self.prev[i] != NIL {
            self.next[self.prev[i]] = self.next[i];
        } else {
            self.head[c] = self.next[i];
        }
        if self.next[i] != NIL {
            self.prev[self.next[i]] = self.prev[i];
        }
        self.next[i] = NIL;
        self.prev[i] = NIL;
    }

    fn update(&mut self, i: usize, c: usize) {
        self.remove(i);
        self.insert(i, c);
    }
}

impl LuFactor {
    /// Factors the `m x m` matrix whose column `t` is `column(t)` given as
    /// `(row indices, values)`.
    pub(crate) fn factor<'a, F>(m: usize, column: F) -> Result<Self, Singular>
    where
        F: Fn(usize) -> (&'a [usize], &'a [f64]),
    {
        let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); m];
        let mut cols: Vec<Vec<usize>> = vec![Vec::new(); m];
        for t in 0..m {
            let (idx, val) = column(t);
            for (&i, &v) in idx.iter().zip(val) {
                if v != 0.0 {
                    rows[i].push((t, v));
                    cols[t].push(i);
                }
            }
        }
        let mut col_count: Vec<usize> = cols.iter().map(Vec::len).collect();
        let mut row_active = vec![true; m];
        let mut col_active = vec![true; m];
        let mut rb = Buckets::new(m, m);
        let mut cb = Buckets::new(m, m);
        for i in 0..m {
            rb.insert(i, rows[i].len());
        }
        for t in 0..m {
            cb.insert(t, col_count[t]);
        }

        let mut f = LuFactor {
            m,
            l_start: vec![0],
            u_start: vec![0],
            ..Default::default()
        };
        let mut mark = vec![usize::MAX; m];
        let mut pivot_vals = vec![0.0; m];
        let mut hit = vec![0usize; m];
        let mut stamp = 0usize;

        for _ in 0..m {
            let Some((p, q)) = Self::search(&rows, &cols, &col_count, &row_active, &rb, &cb, m) else {
                let rows_left = (0..m).filter(|&i| row_active[i]).collect();
                let pos_left = (0..m).filter(|&t| col_active[t]).collect();
                return Err(Singular { rows: rows_left, positions: pos_left });
            };
            let piv = rows[p].iter().find(|e| e.0 == q).map(|e| e.1).unwrap_or(0.0);

            // U row and scatter of the pivot row
            f.piv_row.push(p);
            f.piv_col.push(q);
            f.u_diag.push(piv);
            for &(j, v) in &rows[p] {
                if j != q {
                    f.u_idx.push(j);
                    f.u_val.push(v);
                    mark[j] = p;
                    pivot_vals[j] = v;
                }
            }
            f.u_start.push(f.u_idx.len());

            // retire pivot row and column
            row_active[p] = false;
            col_active[q] = false;
            rb.remove(p);
            cb.remove(q);
            for &(j, _) in &rows[p] {
                if j != q {
                    col_count[j] -= 1;
                }
            }

            // eliminate column q from the other active rows
            let prow = std::mem::take(&mut rows[p]);
            let targets: Vec<usize> = cols[q].iter().copied().filter(|&i| row_active[i]).collect();
            for i in targets {
                let Some(k) = rows[i].iter().position(|e| e.0 == q) else { continue };
                let a_iq = rows[i].swap_remove(k).1;
                let l = a_iq / piv;
                f.l_idx.push(i);
                f.l_val.push(l);
                stamp += 1;
                for e in rows[i].iter_mut() {
                    if mark[e.0] == p {
                        e.1 -= l * pivot_vals[e.0];
                        hit[e.0] = stamp;
                    }
                }
                for &(j, v) in &prow {
                    if j != q && hit[j] != stamp {
                        rows[i].push((j, -l * v));
                        cols[j].push(i);
                        col_count[j] += 1;
                    }
                }
                rb.update(i, rows[i].len());
            }
            f.l_start.push(f.l_idx.len());
            for &(j, _) in &prow {
                if j != q {
                    cb.update(j, col_count[j]);
                }
            }
        }
        Ok(f)
    }

    #[allow(clippy::too_many_arguments)]
    fn search(
        rows: &[Vec<(usize, f64)>],
        cols: &[Vec<usize>],
        col_count: &[usize],
        row_active: &[bool],
        rb: &Buckets,
        cb: &Buckets,
        m: usize,
    ) -> Option<(usize, usize)> {
        let row_max = |i: usize| rows[i].iter().fold(0.0f64, |a, e| a.max(e.1.abs()));
        let acceptable = |v: f64, rmax: f64| v.abs() >= THRESHOLD * rmax && v.abs() > ABS_PIVOT_TOL;
        let mut best: Option<(usize, usize)> = None;
        let mut best_cost = usize::MAX;
        let mut searched = 0;
        for cnt in 1..=m {
            // columns with `cnt` active entries
            let mut t = cb.head.get(cnt).copied().unwrap_or(NIL);
            while t != NIL {
                for &i in &cols[t] {
                    if !row_active[i] {
                        continue;
                    }
                    if let Some(&(_, v)) = rows[i].iter().find(|e| e.0 == t) {
                        if acceptable(v, row_max(i)) {
                            let cost = (rows[i].len() - 1) * (cnt - 1);
                            if cost < best_cost {
                                best_cost = cost;
                                best = Some((i, t));
                            }
                        }
                    }
                }
                searched += 1;
                if best.is_some() && (best_cost <= (cnt - 1) * (cnt - 1) || searched >= SEARCH_LIMIT) {
                    return best;
                }
                t = cb.next[t];
            }
            // rows with `cnt` entries
            let mut i = rb.head.get(cnt).copied().unwrap_or(NIL);
            while i != NIL {
                let rmax = row_max(i);
                for &(t, v) in &rows[i] {
                    if acceptable(v, rmax) {
                        let cost = (cnt - 1) * (col_count[t] - 1);
                        if cost < best_cost {
                            best_cost = cost;
                            best = Some((i, t));
                        }
                    }
                }
                searched += 1;
                if best.is_some() && (best_cost <= (cnt - 1) * cnt || searched >= SEARCH_LIMIT) {
                    return best;
                }
                i = rb.next[i];
            }
        }
        best
    }

    /// True once the eta file costs more per solve than `ratio` fresh factors.
    pub(crate) fn etas_outweigh(&self, ratio: f64) -> bool {
        self.eta_nnz as f64 > ratio * (self.m + self.l_idx.len() + self.u_idx.len()) as f64
    }

    pub(crate) fn eta_count(&self) -> usize {
        self.etas.len()
    }

    /// Solves `B x = b`; `b` is indexed by row, the result by basis position.
    pub(crate) fn ftran(&self, b: &mut [f64]) -> Vec<f64> {
        let m = self.m;
        for k in 0..m {
            let bp = b[self.piv_row[k]];
            if bp != 0.0 {
                for e in self.l_start[k]..self.l_start[k + 1] {
                    b[self.l_idx[e]] -= self.l_val[e] * bp;
                }
            }
        }
        let mut x = vec![0.0; m];
        for k in (0..m).rev() {
            let mut s = b[self.piv_row[k]];
            for e in self.u_start[k]..self.u_start[k + 1] {
                s -= self.u_val[e] * x[self.u_idx[e]];
            }
            x[self.piv_col[k]] = s / self.u_diag[k];
        }
        for eta in &self.etas {
            let xr = x[eta.pos] / eta.pivot;
            if xr != 0.0 {
                for (&i, &a) in eta.idx.iter().zip(&eta.val) {
                    x[i] -= a * xr;
                }
            }
            x[eta.pos] = xr;
        }
        x
    }

    /// Solves `B^T y = c`; `c` is indexed by basis position, the result by row.
    pub(crate) fn btran(&self, c: &mut [f64]) -> Vec<f64> {
        let m = self.m;
        for eta in self.etas.iter().rev() {
            let mut s = c[eta.pos];
            for (&i, &a) in eta.idx.iter().zip(&eta.val) {
                s -= a * c[i];
            }
            c[eta.pos] = s / eta.pivot;
        }
        let mut z = vec![0.0; m];
        for k in 0..m {
            let zp = c[self.piv_col[k]] / self.u_diag[k];
            z[self.piv_row[k]] = zp;
            if zp != 0.0 {
                for e in self.u_start[k]..self.u_start[k + 1] {
                    c[self.u_idx[e]] -= self.u_val[e] * zp;
                }
            }
        }
        for k in (0..m).rev() {
            let mut s = 0.0;
            for e in self.l_start[k]..self.l_start[k + 1] {
                s += self.l_val[e] * z[self.l_idx[e]];
            }
            z[self.piv_row[k]] -= s;
        }
        z
    }

    /// Records the replacement of basis position `pos` by a column whose
    /// FTRAN image is `alpha`.
    pub(crate) fn update(&mut self, pos: usize, alpha: &[f64]) {
        let mut idx = Vec::new();
        let mut val = Vec::new();
        for (i, &a) in alpha.iter().enumerate() {
            if i != pos && a.abs() > DROP_TOL {
                idx.push(i);
                val.push(a);
            }
        }
        self.eta_nnz += idx.len();
        self.etas.push(Eta { pos, pivot: alpha[pos], idx, val });
    }
}
