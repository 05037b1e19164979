//! Data-driven two-sided moment bounds: normal confidence intervals for the
//! region probability, DKW bands for conditional CDFs, Bonferroni splitting.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::MomentFunction;
use crate::problem::MomentConstraint;
use crate::special::normal_quantile;

/// Smallest sample accepted by [`normal_ci`].
pub const MIN_CI_TOTAL: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundSource {
    NormalCi,
    KsBand,
}

/// Statistic whose conditional CDF a bound refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "stat", rename_all = "snake_case")]
pub enum Statistic {
    /// Probability of the conditioning region itself.
    Mass,
    Coord { k: usize },
    Min,
    Max,
}

impl Statistic {
    pub fn eval(self, x: &[f64]) -> f64 {
        match self {
            Statistic::Mass => 1.0,
            Statistic::Coord { k } => x[k],
            Statistic::Min => x.iter().copied().fold(f64::INFINITY, f64::min),
            Statistic::Max => x.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        }
    }

    fn function(self) -> Option<MomentFunction> {
        match self {
            Statistic::Mass => None,
            Statistic::Coord { k } => Some(MomentFunction::coord(k)),
            Statistic::Min => Some(MomentFunction::MinCoord),
            Statistic::Max => Some(MomentFunction::MaxCoord),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CalibratedBound {
    pub lower: f64,
    pub upper: f64,
    /// Per-constraint confidence level.
    pub level: f64,
    pub source: BoundSource,
    pub statistic: Statistic,
    /// Grid probability `p` and threshold `q(p)` for band-derived bounds.
    pub grid: Option<f64>,
    pub threshold: Option<f64>,
}

fn check_level(level: f64) -> Result<()> {
    if level > 0.0 && level < 1.0 {
        Ok(())
    } else {
        Err(Error::Calibration(format!("confidence level {level} must lie in (0, 1)")))
    }
}

/// `p +- z sqrt(p (1 - p) / total)` clipped to `[0, 1]`.
pub fn normal_ci(hits: usize, total: usize, level: f64) -> Result<CalibratedBound> {
    check_level(level)?;
    if total == 0 || hits > total {
        return Err(Error::Calibration(format!("invalid counts {hits} of {total}")));
    }
    if total < MIN_CI_TOTAL {
        return Err(Error::Calibration(format!(
            "normal interval needs at least {MIN_CI_TOTAL} records, got {total}"
        )));
    }
    let p = hits as f64 / total as f64;
    let z = normal_quantile(1.0 - (1.0 - level) / 2.0);
    let h = z * (p * (1.0 - p) / total as f64).sqrt();
    Ok(CalibratedBound {
        lower: (p - h).clamp(0.0, 1.0),
        upper: (p + h).clamp(0.0, 1.0),
        level,
        source: BoundSource::NormalCi,
        statistic: Statistic::Mass,
        grid: None,
        threshold: None,
    })
}

/// DKW halfwidth `sqrt(ln(2 / delta) / (2 m))`, `delta = 1 - level`.
pub fn ks_band(m: usize, level: f64) -> Result<f64> {
    check_level(level)?;
    if m == 0 {
        return Err(Error::Calibration("band needs at least one observation".into()));
    }
    Ok(((2.0 / (1.0 - level)).ln() / (2.0 * m as f64)).sqrt())
}

/// Type-1 (left-continuous inverse) empirical quantile of sorted data:
/// the smallest `x_(i)` with `i / m >= p`.
pub fn empirical_quantile(sorted: &[f64], p: f64) -> f64 {
    let m = sorted.len();
    let i = ((p * m as f64).ceil() as usize).clamp(1, m);
    sorted[i - 1]
}

/// Fraction of sorted data `<= x`.
pub fn empirical_cdf(sorted: &[f64], x: f64) -> f64 {
    sorted.partition_point(|&v| v <= x) as f64 / sorted.len() as f64
}

/// Calibration of an orthant region `[lo, inf)^d`: the region probability and
/// the conditional CDFs of every coordinate, the minimum and the maximum at
/// their empirical grid quantiles.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Calibration {
    pub region_lo: Vec<f64>,
    pub alpha: f64,
    /// Number of Bonferroni groups (region probability plus one per statistic).
    pub groups: usize,
    pub level: f64,
    pub records: usize,
    pub conditional_records: usize,
    pub band_halfwidth: f64,
    pub bounds: Vec<CalibratedBound>,
}

/// Per-constraint level `1 - alpha / k`.
pub fn bonferroni_level(alpha: f64, k: usize) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Calibration(format!("alpha {alpha} must lie in (0, 1)")));
    }
    if k == 0 {
        return Err(Error::Calibration("at least one constraint group is required".into()));
    }
    Ok(1.0 - alpha / k as f64)
}

/// Deciles `j / 10`, `j = 1..9`.
pub fn decile_grid() -> Vec<f64> {
    (1..10).map(|j| j as f64 / 10.0).collect()
}

/// Builds the bounds: (i) level `1 - alpha / k` with `k = d + 3` unless given;
/// (ii) a normal interval for the region probability; (iii) DKW bands of each
/// conditional CDF at the empirical grid quantiles; (iv) band endpoints times
/// the interval endpoints (lower with lower, upper with upper), clipped.
pub fn calibrate_interval_constraints(
    data: &[Vec<f64>],
    region_lo: &[f64],
    grid: &[f64],
    alpha: f64,
    k: Option<usize>,
) -> Result<Calibration> {
    let d = region_lo.len();
    if let Some(r) = data.iter().position(|x| x.len() != d) {
        return Err(Error::Calibration(format!("record {r} does not have {d} columns")));
    }
    let stats: Vec<Statistic> = (0..d)
        .map(|k| Statistic::Coord { k })
        .chain([Statistic::Min, Statistic::Max])
        .collect();
    let groups = k.unwrap_or(stats.len() + 1);
    let level = bonferroni_level(alpha, groups)?;
    let inside: Vec<&Vec<f64>> =
        data.iter().filter(|x| x.iter().zip(region_lo).all(|(v, l)| v >= l)).collect();
    if inside.is_empty() {
        return Err(Error::Calibration("no record falls in the conditioning region".into()));
    }
    let mass = normal_ci(inside.len(), data.len(), level)?;
    let eps = ks_band(inside.len(), level)?;
    let mut bounds = vec![mass.clone()];
    for &s in &stats {
        let mut v: Vec<f64> = inside.iter().map(|x| s.eval(x)).collect();
        v.sort_by(f64::total_cmp);
        for &p in grid {
            let q = empirical_quantile(&v, p);
            let f = empirical_cdf(&v, q);
            let lc = (f - eps).clamp(0.0, 1.0);
            let uc = (f + eps).clamp(0.0, 1.0);
            bounds.push(CalibratedBound {
                lower: (lc * mass.lower).clamp(0.0, 1.0),
                upper: (uc * mass.upper).clamp(0.0, 1.0),
                level,
                source: BoundSource::KsBand,
                statistic: s,
                grid: Some(p),
                threshold: Some(q),
            });
        }
    }
    Ok(Calibration {
        region_lo: region_lo.to_vec(),
        alpha,
        groups,
        level,
        records: data.len(),
        conditional_records: inside.len(),
        band_halfwidth: eps,
        bounds,
    })
}

impl Calibration {
    /// The region indicator `1{x >= lo}`.
    pub fn region(&self) -> MomentFunction {
        MomentFunction::indicator_box(self.region_lo.clone(), vec![f64::INFINITY; self.region_lo.len()])
    }

    /// Each bound as the pair `E[phi] <= u`, `E[-phi] <= -l`, where `phi` is
    /// the region indicator times `1{lo_min <= stat <= q}`.
    pub fn constraints(&self) -> Vec<MomentConstraint> {
        let region = self.region();
        let floor = self.region_lo.iter().copied().fold(f64::INFINITY, f64::min);
        let ceil = self.region_lo.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mut out = Vec::with_capacity(2 * self.bounds.len());
        for b in &self.bounds {
            let phi = match (b.statistic.function(), b.threshold) {
                (Some(f), Some(q)) => {
                    let start = match b.statistic {
                        Statistic::Coord { k } => self.region_lo[k],
                        Statistic::Max => ceil,
                        _ => floor,
                    };
                    MomentFunction::product(vec![region.clone(), MomentFunction::in_range(f, start, q)])
                }
                _ => region.clone(),
            };
            out.extend(MomentConstraint::two_sided(phi, b.lower, b.upper));
        }
        out
    }
}

/// Reads raw observations: one record per row, no header, `d` numeric columns.
pub fn read_observations(path: &std::path::Path) -> Result<Vec<Vec<f64>>> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(false).from_path(path)?;
    let mut out = Vec::new();
    for row in rdr.records() {
        let row = row?;
        let rec = row
            .iter()
            .map(|s| s.trim().parse::<f64>().map_err(|_| Error::Calibration(format!("bad number {s:?}"))))
            .collect::<Result<Vec<f64>>>()?;
        out.push(rec);
    }
    Ok(out)
}

pub fn write_observations(path: &std::path::Path, data: &[Vec<f64>]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_path(path)?;
    for r in data {
        w.write_record(r.iter().map(|v| format!("{v:?}")))?;
    }
    w.flush()?;
    Ok(())
}
