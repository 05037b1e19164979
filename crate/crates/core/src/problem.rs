//! Problem specifications: objective, moment constraints, and shape class.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::MomentFunction;
use crate::sampling::SamplerSpec;
use crate::serde_ext;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "le")]
    LessEqual,
    #[serde(rename = "eq")]
    Equal,
}

/// `E_f[phi(X)] (<= | =) mu`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentConstraint {
    #[serde(rename = "fn")]
    pub function: MomentFunction,
    #[serde(rename = "rel")]
    pub relation: Relation,
    pub mu: f64,
}

impl MomentConstraint {
    pub fn le(function: MomentFunction, mu: f64) -> Self {
        Self { function, relation: Relation::LessEqual, mu }
    }

    pub fn eq(function: MomentFunction, mu: f64) -> Self {
        Self { function, relation: Relation::Equal, mu }
    }

    /// `lo <= E[phi] <= hi` as the pair `E[phi] <= hi`, `E[-phi] <= -lo`.
    pub fn two_sided(function: MomentFunction, lo: f64, hi: f64) -> [Self; 2] {
        [
            Self::le(function.clone(), hi),
            Self::le(function.scaled(-1.0), -lo),
        ]
    }
}

/// Support of the unknown density.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Domain {
    /// `[lo, hi]` in one dimension; either end may be infinite.
    Interval {
        #[serde(with = "serde_ext::scalar")]
        lo: f64,
        #[serde(with = "serde_ext::scalar")]
        hi: f64,
    },
    /// Hyperrectangle `[lo, hi]`; `hi` may be infinite (orthant `[lo, inf)`).
    Box {
        #[serde(with = "serde_ext::vector")]
        lo: Vec<f64>,
        #[serde(with = "serde_ext::vector")]
        hi: Vec<f64>,
    },
    /// `{x >= center, |x - center| <= radius}`
    BallSector { center: Vec<f64>, radius: f64 },
}

impl Domain {
    pub fn dimension(&self) -> usize {
        match self {
            Domain::Interval { .. } => 1,
            Domain::Box { lo, .. } => lo.len(),
            Domain::BallSector { center, .. } => center.len(),
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        self.indicator().eval(x) == 1.0
    }

    pub fn is_bounded(&self) -> bool {
        match self {
            Domain::Interval { lo, hi } => lo.is_finite() && hi.is_finite(),
            Domain::Box { lo, hi } => lo.iter().chain(hi).all(|v| v.is_finite()),
            Domain::BallSector { .. } => true,
        }
    }

    /// The total-mass indicator `1{x in domain}`.
    pub fn indicator(&self) -> MomentFunction {
        match self {
            Domain::Interval { lo, hi } => MomentFunction::interval(*lo, *hi),
            Domain::Box { lo, hi } => MomentFunction::indicator_box(lo.clone(), hi.clone()),
            Domain::BallSector { center, radius } => {
                MomentFunction::ball_sector(center.clone(), *radius)
            }
        }
    }

    /// Lower end of a one-dimensional interval domain.
    pub fn interval(&self) -> Option<(f64, f64)> {
        match self {
            Domain::Interval { lo, hi } => Some((*lo, *hi)),
            Domain::Box { lo, hi } if lo.len() == 1 => Some((lo[0], hi[0])),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShapeKind {
    MonotoneNonincreasing,
    MonotoneNondecreasing,
    Convex,
    Unimodal,
    Orthounimodal,
}

impl ShapeKind {
    pub fn is_one_dimensional(self) -> bool {
        !matches!(self, ShapeKind::Orthounimodal)
    }
}

/// Pointwise cap on the density.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Bound {
    /// `f <= M`
    Uniform {
        #[serde(rename = "M")]
        m: f64,
    },
    /// `f <= (M g0)^{1/(1-gamma)}` with `g0` a reference density of matching shape.
    Envelope {
        #[serde(rename = "M")]
        m: f64,
        gamma: f64,
        reference: SamplerSpec,
    },
}

impl Bound {
    pub fn m(&self) -> f64 {
        match self {
            Bound::Uniform { m } | Bound::Envelope { m, .. } => *m,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShapeSpec {
    pub kind: ShapeKind,
    /// Unimodal mode `c` (length 1) or orthounimodal mode `a`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Vec<f64>>,
    pub domain: Domain,
    pub bound: Bound,
}

impl ShapeSpec {
    pub fn new(kind: ShapeKind, mode: Option<Vec<f64>>, domain: Domain, bound: Bound) -> Result<Self> {
        let s = Self { kind, mode, domain, bound };
        s.check()?;
        Ok(s)
    }

    pub fn dimension(&self) -> usize {
        self.domain.dimension()
    }

    /// Structural validity of the shape block.
    pub fn check(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidProblem(m.to_string()));
        if !(self.bound.m() > 0.0) || !self.bound.m().is_finite() {
            return bad("bound M must be positive and finite");
        }
        if let Bound::Envelope { gamma, reference, .. } = &self.bound {
            if !(*gamma > 0.0 && *gamma < 1.0) {
                return bad("envelope gamma must lie in (0, 1)");
            }
            if reference.dimension() != self.dimension() {
                return bad("envelope reference sampler has the wrong dimension");
            }
        }
        let d = self.dimension();
        match self.kind {
            ShapeKind::MonotoneNonincreasing
            | ShapeKind::MonotoneNondecreasing
            | ShapeKind::Convex
            | ShapeKind::Unimodal => {
                let Some((lo, hi)) = self.domain.interval() else {
                    return bad("one-dimensional shapes need an interval domain");
                };
                if !(lo < hi) {
                    return bad("interval domain needs lo < hi");
                }
                match self.kind {
                    ShapeKind::MonotoneNonincreasing if !lo.is_finite() => {
                        return bad("non-increasing densities need a finite left end");
                    }
                    ShapeKind::MonotoneNondecreasing | ShapeKind::Convex
                        if !(lo.is_finite() && hi.is_finite()) =>
                    {
                        return bad("this shape is only supported on a bounded interval");
                    }
                    _ => {}
                }
                if matches!(self.kind, ShapeKind::Convex | ShapeKind::MonotoneNondecreasing)
                    && matches!(self.bound, Bound::Envelope { .. })
                {
                    return bad("envelope bounds are not supported for this shape");
                }
                if !self.domain.is_bounded() && !matches!(self.bound, Bound::Envelope { .. }) {
                    return bad("unbounded domains need an envelope bound");
                }
                if self.kind == ShapeKind::Unimodal {
                    match &self.mode {
                        Some(c) if c.len() == 1 => {
                            if !(lo <= c[0] && c[0] <= hi) {
                                return Err(Error::ModeOutsideDomain);
                            }
                        }
                        _ => return bad("unimodal shape needs a scalar mode"),
                    }
                }
            }
            ShapeKind::Orthounimodal => {
                if d < 2 {
                    return bad("orthounimodality needs dimension >= 2");
                }
                let Some(a) = &self.mode else {
                    return bad("orthounimodal shape needs a mode");
                };
                if a.len() != d {
                    return bad("mode has the wrong dimension");
                }
                let inside = match &self.domain {
                    Domain::Box { lo, hi } => {
                        a.iter().zip(lo.iter().zip(hi)).all(|(v, (l, h))| l <= v && v <= h)
                    }
                    Domain::BallSector { center, .. } => center == a,
                    Domain::Interval { .. } => false,
                };
                if !inside {
                    return Err(Error::ModeOutsideDomain);
                }
                if !self.domain.is_bounded() && !matches!(self.bound, Bound::Envelope { .. }) {
                    return bad("unbounded domains need an envelope bound");
                }
            }
        }
        Ok(())
    }
}

/// Lagrange multipliers for the moment rows; `lambda_j >= 0` on inequalities.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualCertificate {
    pub multipliers: Vec<f64>,
    pub dual_objective: f64,
}

/// `sup E_f[phi_0]` subject to moment constraints and a shape class.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub dimension: usize,
    pub objective: MomentFunction,
    pub constraints: Vec<MomentConstraint>,
    pub shape: ShapeSpec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Finding {
    MissingTotalMass,
    OrderingViolation { first_equality: usize, later_inequality: usize },
    ShapeDomainMismatch(String),
    Malformed(String),
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    pub findings: Vec<Finding>,
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.findings.is_empty()
    }
}

impl ProblemSpec {
    /// Number of inequality rows (they come first).
    pub fn inequality_count(&self) -> usize {
        self.constraints
            .iter()
            .take_while(|c| c.relation == Relation::LessEqual)
            .count()
    }

    /// Structural checks only; Slater interiority is left to the user.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let d = self.dimension;
        if let Err(e) = self.objective.check(d) {
            report.findings.push(Finding::Malformed(format!("objective: {e}")));
        }
        for (j, c) in self.constraints.iter().enumerate() {
            if let Err(e) = c.function.check(d) {
                report.findings.push(Finding::Malformed(format!("constraint {j}: {e}")));
            }
            if !c.mu.is_finite() {
                report.findings.push(Finding::Malformed(format!("constraint {j}: non-finite mu")));
            }
        }
        if let Some(first_eq) = self.constraints.iter().position(|c| c.relation == Relation::Equal) {
            if let Some(off) = self.constraints[first_eq..]
                .iter()
                .position(|c| c.relation == Relation::LessEqual)
            {
                report.findings.push(Finding::OrderingViolation {
                    first_equality: first_eq,
                    later_inequality: first_eq + off,
                });
            }
        }
        if self.shape.dimension() != d {
            report.findings.push(Finding::ShapeDomainMismatch(format!(
                "shape domain has dimension {}, problem has {d}",
                self.shape.dimension()
            )));
        }
        if let Err(e) = self.shape.check() {
            report.findings.push(Finding::ShapeDomainMismatch(e.to_string()));
        }
        let mass = self.shape.domain.indicator();
        let negated = mass.clone().scaled(-1.0);
        let has_eq = self
            .constraints
            .iter()
            .any(|c| c.relation == Relation::Equal && c.function == mass);
        let has_upper = self
            .constraints
            .iter()
            .any(|c| c.relation == Relation::LessEqual && c.function == mass);
        let has_lower = self
            .constraints
            .iter()
            .any(|c| c.relation == Relation::LessEqual && c.function == negated);
        if !(has_eq || (has_upper && has_lower)) {
            report.findings.push(Finding::MissingTotalMass);
        }
        report.notes.push(
            "Slater interiority is not checked; an infeasible LP will surface instead".into(),
        );
        report
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let r = self.validate();
        if r.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidProblem(format!("{:?}", r.findings)))
        }
    }
}

/// A problem file: the problem plus the default sampler and an optional known
/// optimum used only for error reporting.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProblemFile {
    #[serde(default)]
    pub name: String,
    #[serde(flatten)]
    pub problem: ProblemSpec,
    pub sampler: SamplerSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_optimum: Option<f64>,
}

impl ProblemFile {
    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.to_json()? + "\n")?;
        Ok(())
    }
}
