//! Moment functions: a small closed expression language over points in R^d.
//!
//! Objectives and moment constraints are written as expression trees so that
//! problem files stay plain data. There are no division nodes and every
//! indicator evaluates to exactly `0.0` or `1.0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::serde_ext;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum MomentFunction {
    Const {
        value: f64,
    },
    /// `x_k`
    Coord {
        k: usize,
    },
    /// `x_k^p`
    Monomial {
        k: usize,
        p: u32,
    },
    /// `c . x + offset`
    Linear {
        coeffs: Vec<f64>,
        #[serde(default)]
        offset: f64,
    },
    /// `1{lo <= x <= hi}` componentwise; bounds may be infinite.
    Box {
        #[serde(with = "serde_ext::vector")]
        lo: Vec<f64>,
        #[serde(with = "serde_ext::vector")]
        hi: Vec<f64>,
    },
    /// `1{x >= center, |x - center| <= radius}`
    BallSector {
        center: Vec<f64>,
        radius: f64,
    },
    /// `1{normal . x <= offset}`
    Halfspace {
        normal: Vec<f64>,
        offset: f64,
    },
    /// `exp(c . x)`
    Exp {
        coeffs: Vec<f64>,
    },
    MinCoord,
    MaxCoord,
    /// `1{lo <= arg(x) <= hi}`
    InRange {
        arg: std::boxed::Box<MomentFunction>,
        #[serde(with = "serde_ext::scalar")]
        lo: f64,
        #[serde(with = "serde_ext::scalar")]
        hi: f64,
    },
    Sum {
        terms: Vec<MomentFunction>,
    },
    Product {
        factors: Vec<MomentFunction>,
    },
    /// `arg(x)^exponent`
    Pow {
        arg: std::boxed::Box<MomentFunction>,
        exponent: u32,
    },
}

fn indicator(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

fn dot(c: &[f64], x: &[f64]) -> f64 {
    c.iter().zip(x).map(|(a, b)| a * b).sum()
}

impl MomentFunction {
    pub fn constant(value: f64) -> Self {
        MomentFunction::Const { value }
    }

    pub fn coord(k: usize) -> Self {
        MomentFunction::Coord { k }
    }

    pub fn monomial(k: usize, p: u32) -> Self {
        MomentFunction::Monomial { k, p }
    }

    pub fn indicator_box(lo: Vec<f64>, hi: Vec<f64>) -> Self {
        MomentFunction::Box { lo, hi }
    }

    pub fn interval(lo: f64, hi: f64) -> Self {
        MomentFunction::Box {
            lo: vec![lo],
            hi: vec![hi],
        }
    }

    pub fn ball_sector(center: Vec<f64>, radius: f64) -> Self {
        MomentFunction::BallSector { center, radius }
    }

    pub fn in_range(arg: MomentFunction, lo: f64, hi: f64) -> Self {
        MomentFunction::InRange {
            arg: std::boxed::Box::new(arg),
            lo,
            hi,
        }
    }

    pub fn product(factors: Vec<MomentFunction>) -> Self {
        MomentFunction::Product { factors }
    }

    pub fn sum(terms: Vec<MomentFunction>) -> Self {
        MomentFunction::Sum { terms }
    }

    /// `self * c`
    pub fn scaled(self, c: f64) -> Self {
        MomentFunction::Product {
            factors: vec![MomentFunction::constant(c), self],
        }
    }

    /// Smallest point dimension the expression can be evaluated on.
    pub fn min_dimension(&self) -> usize {
        use MomentFunction::*;
        match self {
            Const { .. } | MinCoord | MaxCoord => 0,
            Coord { k } | Monomial { k, .. } => k + 1,
            Linear { coeffs, .. } | Exp { coeffs } => coeffs.len(),
            Box { lo, .. } => lo.len(),
            BallSector { center, .. } => center.len(),
            Halfspace { normal, .. } => normal.len(),
            InRange { arg, .. } | Pow { arg, .. } => arg.min_dimension(),
            Sum { terms } => terms.iter().map(|t| t.min_dimension()).max().unwrap_or(0),
            Product { factors } => factors.iter().map(|t| t.min_dimension()).max().unwrap_or(0),
        }
    }

    /// Structural check that every node is well formed for dimension `d`.
    pub fn check(&self, d: usize) -> Result<()> {
        use MomentFunction::*;
        let fixed = |len: usize, what: &str| -> Result<()> {
            if len != d {
                Err(Error::InvalidProblem(format!(
                    "{what} node has length {len}, problem dimension is {d}"
                )))
            } else {
                Ok(())
            }
        };
        match self {
            Const { value } if !value.is_finite() => {
                Err(Error::InvalidProblem("non-finite constant".into()))
            }
            Const { .. } | MinCoord | MaxCoord => Ok(()),
            Coord { k } | Monomial { k, .. } => {
                if *k < d {
                    Ok(())
                } else {
                    Err(Error::InvalidProblem(format!("coordinate {k} out of range for d = {d}")))
                }
            }
            Linear { coeffs, .. } => fixed(coeffs.len(), "linear"),
            Exp { coeffs } => fixed(coeffs.len(), "exp"),
            Box { lo, hi } => {
                fixed(lo.len(), "box")?;
                fixed(hi.len(), "box")
            }
            BallSector { center, radius } => {
                if !(*radius > 0.0) {
                    return Err(Error::InvalidProblem("ball sector radius must be positive".into()));
                }
                fixed(center.len(), "ball_sector")
            }
            Halfspace { normal, .. } => fixed(normal.len(), "halfspace"),
            InRange { arg, .. } | Pow { arg, .. } => arg.check(d),
            Sum { terms } => terms.iter().try_for_each(|t| t.check(d)),
            Product { factors } => factors.iter().try_for_each(|t| t.check(d)),
        }
    }

    /// Evaluates at `x`, checking the point dimension against `d`.
    pub fn evaluate(&self, x: &[f64], d: usize) -> Result<f64> {
        if x.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: x.len(),
            });
        }
        if self.min_dimension() > d {
            return Err(Error::DimensionMismatch {
                expected: self.min_dimension(),
                got: d,
            });
        }
        Ok(self.eval(x))
    }

    /// Unchecked evaluation; callers guarantee `x` has the right length.
    pub fn eval(&self, x: &[f64]) -> f64 {
        use MomentFunction::*;
        match self {
            Const { value } => *value,
            Coord { k } => x[*k],
            Monomial { k, p } => x[*k].powi(*p as i32),
            Linear { coeffs, offset } => dot(coeffs, x) + offset,
            Box { lo, hi } => indicator(
                x.iter()
                    .zip(lo.iter().zip(hi))
                    .all(|(v, (l, h))| *l <= *v && *v <= *h),
            ),
            BallSector { center, radius } => {
                let mut r2 = 0.0;
                for (v, c) in x.iter().zip(center) {
                    if v < c {
                        return 0.0;
                    }
                    r2 += (v - c) * (v - c);
                }
                indicator(r2 <= radius * radius)
            }
            Halfspace { normal, offset } => indicator(dot(normal, x) <= *offset),
            Exp { coeffs } => dot(coeffs, x).exp(),
            MinCoord => x.iter().copied().fold(f64::INFINITY, f64::min),
            MaxCoord => x.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            InRange { arg, lo, hi } => {
                let v = arg.eval(x);
                indicator(*lo <= v && v <= *hi)
            }
            Sum { terms } => terms.iter().map(|t| t.eval(x)).sum(),
            Product { factors } => {
                let mut acc = 1.0;
                for f in factors {
                    acc *= f.eval(x);
                    if acc == 0.0 {
                        break;
                    }
                }
                acc
            }
            Pow { arg, exponent } => arg.eval(x).powi(*exponent as i32),
        }
    }
}
