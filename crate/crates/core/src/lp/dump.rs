//! Plain-text LP dump.
//!
//! ```text
//! IWSAA-LP 1
//! VARS <n> ROWS <m> MOMENT <k>
//! OBJ <c_0> ... <c_{n-1}>
//! LO <l_0> ...
//! UP <u_0> ...
//! ROW <le|eq> <rhs> <nnz> <j> <a> <j> <a> ...
//! END
//! ```
//!
//! Floats use the shortest representation that round-trips; infinities are
//! written `inf` / `-inf`.

use std::io::{BufRead, Write};

use super::model::LpModel;
use crate::error::{Error, Result};
use crate::problem::Relation;

const MAGIC: &str = "IWSAA-LP 1";

pub fn write_lp<W: Write>(model: &LpModel, mut w: W) -> Result<()> {
    let list = |xs: &[f64]| xs.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(" ");
    writeln!(w, "{MAGIC}")?;
    writeln!(w, "VARS {} ROWS {} MOMENT {}", model.n_vars, model.row_count(), model.moment_rows)?;
    writeln!(w, "OBJ {}", list(&model.objective))?;
    writeln!(w, "LO {}", list(&model.lower))?;
    writeln!(w, "UP {}", list(&model.upper))?;
    for i in 0..model.row_count() {
        let (idx, vals) = model.row(i);
        let rel = match model.relations[i] {
            Relation::LessEqual => "le",
            Relation::Equal => "eq",
        };
        write!(w, "ROW {rel} {:?} {}", model.rhs[i], idx.len())?;
        for (j, a) in idx.iter().zip(vals) {
            write!(w, " {j} {a:?}")?;
        }
        writeln!(w)?;
    }
    writeln!(w, "END")?;
    Ok(())
}

pub fn read_lp<R: BufRead>(r: R) -> Result<LpModel> {
    let bad = |m: &str| Error::InvalidModel(format!("LP dump: {m}"));
    let mut lines = r.lines();
    let mut next = || -> Result<String> { lines.next().ok_or_else(|| bad("truncated"))?.map_err(Error::from) };
    if next()?.trim() != MAGIC {
        return Err(bad("missing header"));
    }
    let head = next()?;
    let t: Vec<&str> = head.split_whitespace().collect();
    if t.len() != 6 || t[0] != "VARS" || t[2] != "ROWS" || t[4] != "MOMENT" {
        return Err(bad("bad size line"));
    }
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad("bad integer"));
    let (n, m, k) = (num(t[1])?, num(t[3])?, num(t[5])?);
    let float = |s: &str| s.parse::<f64>().map_err(|_| bad("bad number"));
    let mut vector = |tag: &str| -> Result<Vec<f64>> {
        let line = next()?;
        let mut it = line.split_whitespace();
        if it.next() != Some(tag) {
            return Err(bad(&format!("expected {tag}")));
        }
        let v = it.map(float).collect::<Result<Vec<_>>>()?;
        if v.len() != n {
            return Err(bad(&format!("{tag} has {} entries, expected {n}", v.len())));
        }
        Ok(v)
    };
    let objective = vector("OBJ")?;
    let lower = vector("LO")?;
    let upper = vector("UP")?;
    let mut model = LpModel::new(objective, lower, upper);
    model.moment_rows = k;
    let mut idx = Vec::new();
    let mut vals = Vec::new();
    for _ in 0..m {
        let line = next()?;
        let t: Vec<&str> = line.split_whitespace().collect();
        if t.len() < 4 || t[0] != "ROW" {
            return Err(bad("bad row"));
        }
        let rel = match t[1] {
            "le" => Relation::LessEqual,
            "eq" => Relation::Equal,
            _ => return Err(bad("bad relation")),
        };
        let nnz = num(t[3])?;
        if t.len() != 4 + 2 * nnz {
            return Err(bad("row length mismatch"));
        }
        idx.clear();
        vals.clear();
        for p in t[4..].chunks(2) {
            idx.push(num(p[0])?);
            vals.push(float(p[1])?);
        }
        model.add_row(&idx, &vals, rel, float(t[2])?);
    }
    if next()?.trim() != "END" {
        return Err(bad("missing END"));
    }
    model.validate()?;
    Ok(model)
}
