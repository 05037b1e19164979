//! Built-in problem configurations.

use std::f64::consts::PI;

use crate::expr::MomentFunction;
use crate::problem::{Bound, Domain, MomentConstraint, ProblemFile, ProblemSpec, ShapeKind, ShapeSpec};
use crate::sampling::SamplerSpec;
use crate::special::{normal_pdf, normal_sf, simpson};

/// `sup P(-3 <= X <= 3)` over densities unimodal about 0 on `[-5, 5]` with
/// `0 <= f <= 1`, fixed mass near the mode and bounded second moment.
/// Optimum 3/4, attained by the uniform density on `[-4, 4]`.
pub fn unimodal_1d() -> ProblemFile {
    let on = |f: MomentFunction| MomentFunction::product(vec![f, MomentFunction::interval(-5.0, 5.0)]);
    let problem = ProblemSpec {
        dimension: 1,
        objective: MomentFunction::interval(-3.0, 3.0),
        constraints: vec![
            MomentConstraint::le(on(MomentFunction::monomial(0, 2)), 6.0),
            MomentConstraint::eq(MomentFunction::interval(-5.0, 5.0), 1.0),
            MomentConstraint::eq(MomentFunction::interval(-1.0, 1.0), 0.25),
            MomentConstraint::eq(on(MomentFunction::coord(0)), 0.0),
        ],
        shape: ShapeSpec::new(
            ShapeKind::Unimodal,
            Some(vec![0.0]),
            Domain::Interval { lo: -5.0, hi: 5.0 },
            Bound::Uniform { m: 1.0 },
        )
        .expect("valid shape"),
    };
    ProblemFile {
        name: "unimodal-1d".into(),
        problem,
        sampler: SamplerSpec::UniformBox { lo: vec![-5.0], hi: vec![5.0] },
        reference_optimum: Some(0.75),
    }
}

/// `sup P(|X| <= 2)` over densities orthounimodal about 0 on the positive
/// sector of radius 2.5 in four dimensions with `0 <= f <= 1/4` and
/// `P(|X| <= 1.5) = 1/5`. Optimum 256/405.
pub fn orthounimodal_4d() -> ProblemFile {
    let zero = vec![0.0; 4];
    let sector = |r: f64| MomentFunction::ball_sector(zero.clone(), r);
    let problem = ProblemSpec {
        dimension: 4,
        objective: sector(2.0),
        constraints: vec![
            MomentConstraint::eq(sector(2.5), 1.0),
            MomentConstraint::eq(sector(1.5), 0.2),
        ],
        shape: ShapeSpec::new(
            ShapeKind::Orthounimodal,
            Some(zero.clone()),
            Domain::BallSector { center: zero.clone(), radius: 2.5 },
            Bound::Uniform { m: 0.25 },
        )
        .expect("valid shape"),
    };
    ProblemFile {
        name: "orthounimodal-4d".into(),
        problem,
        sampler: SamplerSpec::UniformBallSector { center: zero, radius: 2.5 },
        reference_optimum: Some(256.0 / 405.0),
    }
}

/// `E[X^p I(|X| <= 5)]` under `N(0, sd^2)` conditioned on `[-5, 5]`.
pub fn truncated_normal_moment(sd: f64, p: u32) -> f64 {
    if p % 2 == 1 {
        return 0.0;
    }
    let mass = 1.0 - 2.0 * normal_sf(5.0 / sd);
    let dens = |x: f64| x.powi(p as i32) * normal_pdf(x / sd) / sd;
    simpson(dens, -5.0, 5.0, 4000) / mass
}

/// `sup E[exp(X) I(|X| <= 5)]` over densities unimodal about 0 on `[-5, 5]`
/// with `0 <= f <= 2` and the first four moments of `N(0, 2)` conditioned on
/// the interval (variance 2).
pub fn sampler_influence() -> ProblemFile {
    let on = |f: MomentFunction| MomentFunction::product(vec![f, MomentFunction::interval(-5.0, 5.0)]);
    let sd = 2f64.sqrt();
    let mut constraints = vec![MomentConstraint::eq(MomentFunction::interval(-5.0, 5.0), 1.0)];
    for p in 1..=4 {
        constraints.push(MomentConstraint::eq(
            on(MomentFunction::monomial(0, p)),
            truncated_normal_moment(sd, p),
        ));
    }
    let problem = ProblemSpec {
        dimension: 1,
        objective: on(MomentFunction::Exp { coeffs: vec![1.0] }),
        constraints,
        shape: ShapeSpec::new(
            ShapeKind::Unimodal,
            Some(vec![0.0]),
            Domain::Interval { lo: -5.0, hi: 5.0 },
            Bound::Uniform { m: 2.0 },
        )
        .expect("valid shape"),
    };
    ProblemFile {
        name: "sampler-influence".into(),
        problem,
        sampler: SamplerSpec::UniformBox { lo: vec![-5.0], hi: vec![5.0] },
        reference_optimum: None,
    }
}

/// Samplers compared on [`sampler_influence`]: uniform, then `N(0, s^2)`
/// conditioned on `[-5, 5]` for `s = 1, 2, 3`.
pub fn influence_samplers() -> Vec<SamplerSpec> {
    let mut v = vec![SamplerSpec::UniformBox { lo: vec![-5.0], hi: vec![5.0] }];
    for sd in [1.0, 2.0, 3.0] {
        v.push(SamplerSpec::TruncatedNormalBox {
            mean: vec![0.0],
            sd: vec![sd],
            lo: vec![-5.0],
            hi: vec![5.0],
        });
    }
    v
}

/// `M = 2 max_x sqrt(f0(x)) / g0(x)` for `f0 = N(0, 16 I_d)` and
/// `g0 = N(0, 32 I_d)` restricted to an orthant, so that `f0 <= (M g0)^2 / 4`.
pub fn envelope_constant(d: usize) -> f64 {
    let d = d as f64;
    2.0 * (64.0 * PI).powf(d / 2.0) / (2f64.powf(d) * (32.0 * PI).powf(d / 4.0))
}

/// Many-constraint orthounimodal problem on `[0, inf)^d` with an envelope
/// bound `(M g0)^2`, moments calibrated by `N(0, 16 I_d)`:
/// total mass, `P(X_i <= 1/2)`, `P(X_i <= 1)` and `E[X_i^j]`, `j <= 3`.
pub fn high_dim(d: usize) -> ProblemFile {
    let sd0 = 4.0;
    let orthant = 0.5f64.powi(d as i32);
    let lo = vec![0.0; d];
    let hi = vec![f64::INFINITY; d];
    let domain = MomentFunction::indicator_box(lo.clone(), hi.clone());
    let on = |f: MomentFunction| MomentFunction::product(vec![f, domain.clone()]);
    // one-dimensional half-normal pieces times the other coordinates' orthant mass
    let rest = 0.5f64.powi(d as i32 - 1);
    let half_moment = |j: u32| -> f64 {
        match j {
            1 => sd0 * (2.0 / PI).sqrt() / 2.0,
            2 => sd0 * sd0 / 2.0,
            3 => sd0.powi(3) * (2.0 / PI).sqrt(),
            _ => unreachable!(),
        }
    };
    let mut constraints = vec![MomentConstraint::eq(domain.clone(), orthant)];
    for cut in [0.5, 1.0] {
        let p = (0.5 - normal_sf(cut / sd0)) * rest;
        for i in 0..d {
            let mut blo = lo.clone();
            let mut bhi = hi.clone();
            blo[i] = 0.0;
            bhi[i] = cut;
            constraints.push(MomentConstraint::eq(MomentFunction::indicator_box(blo, bhi), p));
        }
    }
    for j in 1..=3u32 {
        for i in 0..d {
            constraints.push(MomentConstraint::eq(on(MomentFunction::monomial(i, j)), half_moment(j) * rest));
        }
    }
    let reference = SamplerSpec::TruncatedNormalOrthant {
        mean: vec![0.0; d],
        sd: vec![32f64.sqrt(); d],
        lo: lo.clone(),
    };
    let problem = ProblemSpec {
        dimension: d,
        objective: on(MomentFunction::Linear { coeffs: vec![1.0; d], offset: 0.0 }),
        constraints,
        shape: ShapeSpec::new(
            ShapeKind::Orthounimodal,
            Some(lo.clone()),
            Domain::Box { lo, hi },
            Bound::Envelope { m: envelope_constant(d), gamma: 0.5, reference: reference.clone() },
        )
        .expect("valid shape"),
    };
    ProblemFile {
        name: format!("high-dim-{d}d"),
        problem,
        sampler: reference,
        reference_optimum: None,
    }
}
