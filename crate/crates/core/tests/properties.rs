//! Property tests: permutation invariance, monotonicity in the bound, and
//! feasibility of extended solver output.

use proptest::prelude::*;

use iwsaa::expr::MomentFunction;
use iwsaa::lp::{assemble, solve, LpStatus};
use iwsaa::problem::{Bound, Domain, MomentConstraint, ProblemSpec, ShapeKind, ShapeSpec};
use iwsaa::sampling::{SampleBatch, Sampler, SamplerSpec};
use iwsaa::shape::{audit_density, discretize, extend_solution};

/// `sup P(|X| <= 1)` over unimodal densities about 0 on `[-5, 5]` with
/// `f <= m` and `E[X^2] <= 4`.
fn unimodal_problem(m: f64) -> ProblemSpec {
    let domain = Domain::Interval { lo: -5.0, hi: 5.0 };
    ProblemSpec {
        dimension: 1,
        objective: MomentFunction::interval(-1.0, 1.0),
        constraints: vec![
            MomentConstraint::le(MomentFunction::monomial(0, 2), 4.0),
            MomentConstraint::eq(domain.indicator(), 1.0),
        ],
        shape: ShapeSpec::new(ShapeKind::Unimodal, Some(vec![0.0]), domain, Bound::Uniform { m }).unwrap(),
    }
}

/// `sup P(X in [0, 1/2]^2)` over orthounimodal densities about 0 on the
/// unit square with `f <= 3`.
fn orthounimodal_problem() -> ProblemSpec {
    let domain = Domain::Box { lo: vec![0.0; 2], hi: vec![1.0; 2] };
    ProblemSpec {
        dimension: 2,
        objective: MomentFunction::indicator_box(vec![0.0; 2], vec![0.5; 2]),
        constraints: vec![
            MomentConstraint::le(MomentFunction::indicator_box(vec![0.0; 2], vec![0.3; 2]), 0.2),
            MomentConstraint::eq(domain.indicator(), 1.0),
        ],
        shape: ShapeSpec::new(ShapeKind::Orthounimodal, Some(vec![0.0; 2]), domain, Bound::Uniform { m: 3.0 })
            .unwrap(),
    }
}

fn sampler_for(p: &ProblemSpec) -> Sampler {
    let spec = match p.dimension {
        1 => SamplerSpec::UniformBox { lo: vec![-5.0], hi: vec![5.0] },
        d => SamplerSpec::UniformBox { lo: vec![0.0; d], hi: vec![1.0; d] },
    };
    Sampler::new(spec).unwrap()
}

/// Optimal value, or `-inf` when the sample LP is infeasible.
fn value(p: &ProblemSpec, batch: &SampleBatch) -> f64 {
    let set = discretize(&p.shape, batch).unwrap();
    let sol = solve(&assemble(p, batch, &set).unwrap()).unwrap();
    match sol.status {
        LpStatus::Optimal => sol.objective,
        LpStatus::Infeasible => f64::NEG_INFINITY,
        s => panic!("unexpected status {s:?}"),
    }
}

fn permutation(n: usize, seed: u64) -> Vec<usize> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
    perm
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn permutation_invariance(n in 10usize..150, seed in 0u64..1000, shuffle in 0u64..1000, two_d in any::<bool>()) {
        let p = if two_d { orthounimodal_problem() } else { unimodal_problem(1.0) };
        let batch = sampler_for(&p).draw(n, seed, 0).unwrap();
        let a = value(&p, &batch);
        let b = value(&p, &batch.permuted(&permutation(n, shuffle)));
        prop_assert!(a == b || (a - b).abs() <= 1e-9, "{a} vs {b}");
    }

    #[test]
    fn monotone_in_bound(n in 10usize..150, seed in 0u64..1000) {
        let batch = sampler_for(&unimodal_problem(1.0)).draw(n, seed, 1).unwrap();
        let vals: Vec<f64> = [0.5, 1.0, 2.0, 4.0].iter().map(|&m| value(&unimodal_problem(m), &batch)).collect();
        for w in vals.windows(2) {
            prop_assert!(w[1] >= w[0] - 1e-9, "{vals:?}");
        }
    }

    #[test]
    fn solver_output_extends_feasibly(n in 10usize..120, seed in 0u64..1000, two_d in any::<bool>()) {
        let p = if two_d { orthounimodal_problem() } else { unimodal_problem(1.0) };
        let sampler = sampler_for(&p);
        let batch = sampler.draw(n, seed, 2).unwrap();
        let set = discretize(&p.shape, &batch).unwrap();
        let sol = solve(&assemble(&p, &batch, &set).unwrap()).unwrap();
        prop_assume!(sol.status == LpStatus::Optimal);
        // the solver meets bounds and rows to within its tolerance; clip to the exact box
        let v: Vec<f64> = sol.primal.iter().zip(&set.upper).map(|(x, u)| x.clamp(0.0, *u)).collect();
        let f = extend_solution(&p.shape, &batch, &set, &v, 1e-8).unwrap();
        let probes = sampler.draw(300, seed, 3).unwrap();
        let probes: Vec<Vec<f64>> = probes.points().map(<[f64]>::to_vec).collect();
        let worst = audit_density(&p.shape, &f, &probes);
        prop_assert!(worst <= 1e-8, "violation {worst}");
    }
}
