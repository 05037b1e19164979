//! Sampling distributions `g` with exact, normalized densities.
//!
//! Every sampler draws from a counter-based ChaCha stream selected by
//! `(seed, stream)`, so replication `r` of an experiment always sees the same
//! points no matter how replications are scheduled.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::serde_ext;
use crate::special::{
    normal_cdf, normal_interval_prob, normal_pdf, orthant_sector_volume,
};

/// Proposals per acceptance-rate window for the rejection samplers.
const REJECTION_WINDOW: u64 = 10_000_000;
const MIN_ACCEPTANCE: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SamplerSpec {
    UniformBox {
        lo: Vec<f64>,
        hi: Vec<f64>,
    },
    /// Uniform on `{x >= center, |x - center| <= radius}`.
    UniformBallSector {
        center: Vec<f64>,
        radius: f64,
    },
    /// Independent `N(mean_k, sd_k^2)` components truncated to `[lo_k, hi_k]`.
    TruncatedNormalBox {
        mean: Vec<f64>,
        sd: Vec<f64>,
        #[serde(with = "serde_ext::vector")]
        lo: Vec<f64>,
        #[serde(with = "serde_ext::vector")]
        hi: Vec<f64>,
    },
    /// Independent `N(mean_k, sd_k^2)` components truncated to `[lo_k, inf)`.
    TruncatedNormalOrthant {
        mean: Vec<f64>,
        sd: Vec<f64>,
        lo: Vec<f64>,
    },
    /// Isotropic normal centred at the sector apex, restricted to
    /// `{x >= center, |x - center| <= radius}` (rejection sampling).
    TruncatedNormalBallSector {
        center: Vec<f64>,
        sd: f64,
        radius: f64,
    },
}

impl SamplerSpec {
    pub fn dimension(&self) -> usize {
        match self {
            SamplerSpec::UniformBox { lo, .. } => lo.len(),
            SamplerSpec::UniformBallSector { center, .. } => center.len(),
            SamplerSpec::TruncatedNormalBox { mean, .. } => mean.len(),
            SamplerSpec::TruncatedNormalOrthant { mean, .. } => mean.len(),
            SamplerSpec::TruncatedNormalBallSector { center, .. } => center.len(),
        }
    }

    pub fn name(&self) -> String {
        match self {
            SamplerSpec::UniformBox { .. } => "uniform_box".into(),
            SamplerSpec::UniformBallSector { .. } => "uniform_ball_sector".into(),
            SamplerSpec::TruncatedNormalBox { sd, .. } => {
                format!("truncated_normal_box(sd={})", sd.first().copied().unwrap_or(0.0))
            }
            SamplerSpec::TruncatedNormalOrthant { sd, .. } => {
                format!("truncated_normal_orthant(sd={})", sd.first().copied().unwrap_or(0.0))
            }
            SamplerSpec::TruncatedNormalBallSector { sd, .. } => {
                format!("truncated_normal_ball_sector(sd={sd})")
            }
        }
    }
}

/// One coordinate of a product of truncated normals.
#[derive(Clone, Debug)]
struct TruncatedComponent {
    mean: f64,
    sd: f64,
    lo: f64,
    hi: f64,
    /// `P(lo <= N(mean, sd^2) <= hi)`
    mass: f64,
}

impl TruncatedComponent {
    fn new(mean: f64, sd: f64, lo: f64, hi: f64) -> Result<Self> {
        if !(sd > 0.0) || !mean.is_finite() {
            return Err(Error::InvalidSampler("normal component needs finite mean and sd > 0".into()));
        }
        if !(lo < hi) {
            return Err(Error::InvalidSampler("truncation window must satisfy lo < hi".into()));
        }
        let mass = normal_interval_prob((lo - mean) / sd, (hi - mean) / sd);
        if !(mass > 0.0) {
            return Err(Error::InvalidSampler("truncation window has zero normal mass".into()));
        }
        Ok(Self { mean, sd, lo, hi, mass })
    }

    fn density(&self, x: f64) -> f64 {
        normal_pdf((x - self.mean) / self.sd) / (self.sd * self.mass)
    }
}

#[derive(Clone, Debug)]
enum Kind {
    UniformBox { lo: Vec<f64>, hi: Vec<f64>, density: f64 },
    UniformSector { center: Vec<f64>, radius: f64, density: f64 },
    NormalProduct { comps: Vec<TruncatedComponent> },
    NormalSector { center: Vec<f64>, sd: f64, radius: f64, log_norm: f64 },
}

/// A validated sampler with its normalizing constant precomputed.
#[derive(Clone, Debug)]
pub struct Sampler {
    spec: SamplerSpec,
    dim: usize,
    kind: Kind,
}

/// `n` i.i.d. draws from a sampler with their cached densities.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleBatch {
    pub dim: usize,
    /// Row-major `n x dim` coordinates.
    pub coords: Vec<f64>,
    pub densities: Vec<f64>,
    pub seed: u64,
    pub stream: u64,
    /// Accepted / proposed for rejection samplers.
    pub acceptance_rate: Option<f64>,
}

impl SampleBatch {
    pub fn len(&self) -> usize {
        self.densities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.densities.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim.max(1))
    }

    /// Builds a batch from explicit points, evaluating the sampler density.
    pub fn from_points(sampler: &Sampler, points: &[Vec<f64>]) -> Result<Self> {
        let dim = sampler.dimension();
        let mut coords = Vec::with_capacity(points.len() * dim);
        let mut densities = Vec::with_capacity(points.len());
        for p in points {
            densities.push(sampler.density(p)?);
            coords.extend_from_slice(p);
        }
        Ok(Self {
            dim,
            coords,
            densities,
            seed: 0,
            stream: 0,
            acceptance_rate: None,
        })
    }

    /// Reorders the points by `perm` (new position `k` holds old point `perm[k]`).
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut coords = Vec::with_capacity(self.coords.len());
        let mut densities = Vec::with_capacity(self.len());
        for &i in perm {
            coords.extend_from_slice(self.point(i));
            densities.push(self.densities[i]);
        }
        Self {
            coords,
            densities,
            ..self.clone()
        }
    }
}

/// The RNG for `(seed, stream)`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn check_len(v: &[f64], d: usize, what: &str) -> Result<()> {
    if v.len() != d {
        Err(Error::InvalidSampler(format!("{what} has length {}, expected {d}", v.len())))
    } else {
        Ok(())
    }
}

/// `P(|Z| <= rho)` for a standard normal vector in R^d.
fn radial_normal_mass(d: usize, rho: f64) -> f64 {
    match d {
        1 => 2.0 * normal_cdf(rho) - 1.0,
        2 => -(-0.5 * rho * rho).exp_m1(),
        3 => 2.0 * normal_cdf(rho) - 1.0 - 2.0 * rho * normal_pdf(rho),
        _ => {
            // chi density 2^{1-d/2} t^{d-1} e^{-t^2/2} / Gamma(d/2), midpoint rule
            let log_c = (1.0 - d as f64 / 2.0) * std::f64::consts::LN_2 - ln_gamma_half(d);
            let m = 20_000;
            let h = rho / m as f64;
            let mut s = 0.0;
            for i in 0..m {
                let t = (i as f64 + 0.5) * h;
                s += (log_c + (d as f64 - 1.0) * t.ln() - 0.5 * t * t).exp();
            }
            s * h
        }
    }
}

/// `ln Gamma(d / 2)` for a positive integer `d`.
fn ln_gamma_half(d: usize) -> f64 {
    // Gamma(1/2) = sqrt(pi), Gamma(1) = 1, Gamma(x + 1) = x Gamma(x)
    let (mut x, mut acc) = if d.is_multiple_of(2) {
        (1.0, 0.0)
    } else {
        (0.5, 0.5 * std::f64::consts::PI.ln())
    };
    while x < d as f64 / 2.0 {
        acc += x.ln();
        x += 1.0;
    }
    acc
}

impl Sampler {
    pub fn new(spec: SamplerSpec) -> Result<Self> {
        let dim = spec.dimension();
        if dim == 0 {
            return Err(Error::InvalidSampler("dimension must be at least 1".into()));
        }
        let kind = match &spec {
            SamplerSpec::UniformBox { lo, hi } => {
                check_len(hi, dim, "hi")?;
                let mut vol = 1.0;
                for (l, h) in lo.iter().zip(hi) {
                    if !(l.is_finite() && h.is_finite() && l < h) {
                        return Err(Error::InvalidSampler("uniform box needs finite lo < hi".into()));
                    }
                    vol *= h - l;
                }
                Kind::UniformBox {
                    lo: lo.clone(),
                    hi: hi.clone(),
                    density: 1.0 / vol,
                }
            }
            SamplerSpec::UniformBallSector { center, radius } => {
                if !(*radius > 0.0 && radius.is_finite()) {
                    return Err(Error::InvalidSampler("sector radius must be positive".into()));
                }
                Kind::UniformSector {
                    center: center.clone(),
                    radius: *radius,
                    density: 1.0 / orthant_sector_volume(dim, *radius),
                }
            }
            SamplerSpec::TruncatedNormalBox { mean, sd, lo, hi } => {
                check_len(sd, dim, "sd")?;
                check_len(lo, dim, "lo")?;
                check_len(hi, dim, "hi")?;
                let comps = (0..dim)
                    .map(|k| TruncatedComponent::new(mean[k], sd[k], lo[k], hi[k]))
                    .collect::<Result<Vec<_>>>()?;
                Kind::NormalProduct { comps }
            }
            SamplerSpec::TruncatedNormalOrthant { mean, sd, lo } => {
                check_len(sd, dim, "sd")?;
                check_len(lo, dim, "lo")?;
                let comps = (0..dim)
                    .map(|k| TruncatedComponent::new(mean[k], sd[k], lo[k], f64::INFINITY))
                    .collect::<Result<Vec<_>>>()?;
                Kind::NormalProduct { comps }
            }
            SamplerSpec::TruncatedNormalBallSector { center, sd, radius } => {
                if !(*sd > 0.0 && *radius > 0.0) {
                    return Err(Error::InvalidSampler("sd and radius must be positive".into()));
                }
                // orthant share of the radial mass, by symmetry about the centre
                let mass = radial_normal_mass(dim, radius / sd) / 2f64.powi(dim as i32);
                let log_norm = -(dim as f64) * (sd.ln() + 0.5 * (2.0 * std::f64::consts::PI).ln())
                    - mass.ln();
                Kind::NormalSector {
                    center: center.clone(),
                    sd: *sd,
                    radius: *radius,
                    log_norm,
                }
            }
        };
        Ok(Self { spec, dim, kind })
    }

    pub fn spec(&self) -> &SamplerSpec {
        &self.spec
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        if x.len() != self.dim {
            return false;
        }
        match &self.kind {
            Kind::UniformBox { lo, hi, .. } => {
                x.iter().zip(lo.iter().zip(hi)).all(|(v, (l, h))| l <= v && v <= h)
            }
            Kind::UniformSector { center, radius, .. }
            | Kind::NormalSector { center, radius, .. } => in_sector(x, center, *radius),
            Kind::NormalProduct { comps } => {
                x.iter().zip(comps).all(|(v, c)| c.lo <= *v && *v <= c.hi)
            }
        }
    }

    /// Exact normalized density at `x`.
    pub fn density(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        if !self.contains(x) {
            return Err(Error::OutsideDomain);
        }
        Ok(self.density_unchecked(x))
    }

    fn density_unchecked(&self, x: &[f64]) -> f64 {
        match &self.kind {
            Kind::UniformBox { density, .. } | Kind::UniformSector { density, .. } => *density,
            Kind::NormalProduct { comps } => {
                x.iter().zip(comps).map(|(v, c)| c.density(*v)).product()
            }
            Kind::NormalSector {
                center, sd, log_norm, ..
            } => {
                let r2: f64 = x.iter().zip(center).map(|(v, c)| (v - c) * (v - c)).sum();
                (log_norm - 0.5 * r2 / (sd * sd)).exp()
            }
        }
    }

    /// A finite box containing (essentially all of) the support; infinite
    /// sides are cut 12 standard deviations past the mean.
    pub fn enclosing_box(&self) -> (Vec<f64>, Vec<f64>) {
        match &self.kind {
            Kind::UniformBox { lo, hi, .. } => (lo.clone(), hi.clone()),
            Kind::UniformSector { center, radius, .. }
            | Kind::NormalSector { center, radius, .. } => {
                (center.clone(), center.iter().map(|c| c + radius).collect())
            }
            Kind::NormalProduct { comps } => (
                comps.iter().map(|c| c.lo.max(c.mean - 12.0 * c.sd)).collect(),
                comps.iter().map(|c| c.hi.min(c.mean + 12.0 * c.sd)).collect(),
            ),
        }
    }

    /// Draws `n` points from stream `(seed, stream)`.
    pub fn draw(&self, n: usize, seed: u64, stream: u64) -> Result<SampleBatch> {
        if n == 0 {
            return Err(Error::InvalidSampler("sample size must be at least 1".into()));
        }
        let mut rng = stream_rng(seed, stream);
        let mut coords = Vec::with_capacity(n * self.dim);
        let mut densities = Vec::with_capacity(n);
        let mut proposals = 0u64;
        let mut window_proposals = 0u64;
        let mut window_accepts = 0u64;
        let mut point = vec![0.0; self.dim];
        while densities.len() < n {
            proposals += 1;
            window_proposals += 1;
            if self.propose(&mut rng, &mut point) {
                window_accepts += 1;
                coords.extend_from_slice(&point);
                densities.push(self.density_unchecked(&point));
            }
            if window_proposals >= REJECTION_WINDOW {
                let rate = window_accepts as f64 / window_proposals as f64;
                if rate < MIN_ACCEPTANCE {
                    return Err(Error::RejectionCap {
                        rate,
                        tried: proposals,
                    });
                }
                window_proposals = 0;
                window_accepts = 0;
            }
        }
        debug_assert!(densities.iter().all(|g| *g > 0.0));
        let acceptance_rate = match self.kind {
            Kind::NormalProduct { .. } | Kind::NormalSector { .. } => {
                Some(n as f64 / proposals as f64)
            }
            _ => None,
        };
        Ok(SampleBatch {
            dim: self.dim,
            coords,
            densities,
            seed,
            stream,
            acceptance_rate,
        })
    }

    /// One proposal; returns whether it was accepted into `out`.
    fn propose<R: Rng>(&self, rng: &mut R, out: &mut [f64]) -> bool {
        match &self.kind {
            Kind::UniformBox { lo, hi, .. } => {
                for k in 0..self.dim {
                    out[k] = lo[k] + (hi[k] - lo[k]) * rng.random::<f64>();
                }
                true
            }
            Kind::UniformSector { center, radius, .. } => {
                let mut norm2 = 0.0;
                for o in out.iter_mut() {
                    let z: f64 = StandardNormal.sample(rng);
                    *o = z.abs();
                    norm2 += z * z;
                }
                if norm2 == 0.0 {
                    return false;
                }
                let u: f64 = rng.random();
                let r = radius * u.powf(1.0 / self.dim as f64) / norm2.sqrt();
                for (o, c) in out.iter_mut().zip(center) {
                    *o = c + *o * r;
                }
                in_sector(out, center, *radius)
            }
            Kind::NormalProduct { comps } => {
                for (o, c) in out.iter_mut().zip(comps) {
                    // per-coordinate rejection from the untruncated normal
                    let mut tries = 0u64;
                    loop {
                        let z: f64 = StandardNormal.sample(rng);
                        let v = c.mean + c.sd * z;
                        if c.lo <= v && v <= c.hi {
                            *o = v;
                            break;
                        }
                        tries += 1;
                        if tries >= REJECTION_WINDOW {
                            return false;
                        }
                    }
                }
                true
            }
            Kind::NormalSector {
                center, sd, radius, ..
            } => {
                for (o, c) in out.iter_mut().zip(center) {
                    let z: f64 = StandardNormal.sample(rng);
                    *o = c + sd * z.abs();
                }
                in_sector(out, center, *radius)
            }
        }
    }
}

fn in_sector(x: &[f64], center: &[f64], radius: f64) -> bool {
    let mut r2 = 0.0;
    for (v, c) in x.iter().zip(center) {
        if v < c {
            return false;
        }
        r2 += (v - c) * (v - c);
    }
    r2 <= radius * radius
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::simpson;

    fn uniform_1d() -> Sampler {
        Sampler::new(SamplerSpec::UniformBox {
            lo: vec![-5.0],
            hi: vec![5.0],
        })
        .unwrap()
    }

    #[test]
    fn replay_is_identical() {
        let s = uniform_1d();
        let a = s.draw(4, 7, 0).unwrap();
        let b = s.draw(4, 7, 0).unwrap();
        assert_eq!(a, b);
        assert!(a.points().all(|p| (-5.0..=5.0).contains(&p[0])));
        let c = s.draw(4, 7, 1).unwrap();
        assert_ne!(a.coords, c.coords);
    }

    #[test]
    fn sector_support() {
        let s = Sampler::new(SamplerSpec::UniformBallSector {
            center: vec![0.0, 0.0],
            radius: 2.0,
        })
        .unwrap();
        let b = s.draw(2000, 3, 0).unwrap();
        for p in b.points() {
            assert!(p[0] >= 0.0 && p[1] >= 0.0);
            assert!(p[0].hypot(p[1]) <= 2.0);
        }
    }

    #[test]
    fn uniform_densities() {
        assert_eq!(uniform_1d().density(&[0.0]).unwrap(), 0.1);
        let s = Sampler::new(SamplerSpec::UniformBallSector {
            center: vec![0.0, 0.0],
            radius: 2.0,
        })
        .unwrap();
        let g = s.density(&[1.0, 0.5]).unwrap();
        assert!((g - 1.0 / std::f64::consts::PI).abs() < 1e-15);
        assert!(matches!(s.density(&[2.0, 2.0]), Err(Error::OutsideDomain)));
    }

    #[test]
    fn truncated_normal_density_at_center() {
        // N(0, 4) on [-5, 5]: oracle normalizer by Simpson quadrature of the sd-2 pdf
        let s = Sampler::new(SamplerSpec::TruncatedNormalBox {
            mean: vec![0.0],
            sd: vec![2.0],
            lo: vec![-5.0],
            hi: vec![5.0],
        })
        .unwrap();
        let pdf = |x: f64| normal_pdf(x / 2.0) / 2.0;
        let z = simpson(pdf, -5.0, 5.0, 20_000);
        let expected = pdf(0.0) / z;
        let got = s.density(&[0.0]).unwrap();
        assert!((got - expected).abs() < 1e-12);
        // phi(0) / 2 / (Phi(2.5) - Phi(-2.5))
        assert!((got - 0.201_98).abs() < 1e-5);
    }

    /// 1D truncated-normal mean on [lo, inf) by quadrature.
    fn truncated_mean_oracle(mean: f64, sd: f64, lo: f64) -> (f64, f64) {
        let pdf = |x: f64| normal_pdf((x - mean) / sd) / sd;
        let hi = mean + 14.0 * sd;
        let z = simpson(pdf, lo, hi, 50_000);
        let m1 = simpson(|x| x * pdf(x), lo, hi, 50_000) / z;
        let m2 = simpson(|x| x * x * pdf(x), lo, hi, 50_000) / z;
        (m1, m2 - m1 * m1)
    }

    #[test]
    fn orthant_shift_componentwise_mean() {
        let d = 10;
        let sd = 32f64.sqrt();
        let s = Sampler::new(SamplerSpec::TruncatedNormalOrthant {
            mean: vec![1.0; d],
            sd: vec![sd; d],
            lo: vec![1.0; d],
        })
        .unwrap();
        let n = 20_000;
        let b = s.draw(n, 11, 0).unwrap();
        let (m, var) = truncated_mean_oracle(1.0, sd, 1.0);
        let se = (var / n as f64).sqrt();
        for k in 0..d {
            let emp: f64 = b.points().map(|p| p[k]).sum::<f64>() / n as f64;
            assert!((emp - m).abs() < 3.0 * se, "coord {k}: {emp} vs {m}");
        }
        assert!(b.acceptance_rate.unwrap() > 0.0);
    }

    fn hit_or_miss_mass(s: &Sampler, draws: usize) -> (f64, f64) {
        let (lo, hi) = s.enclosing_box();
        let vol: f64 = lo.iter().zip(&hi).map(|(l, h)| h - l).product();
        let mut rng = stream_rng(99, 5);
        let mut sum = 0.0;
        let mut sum2 = 0.0;
        let mut x = vec![0.0; s.dimension()];
        for _ in 0..draws {
            for k in 0..x.len() {
                x[k] = lo[k] + (hi[k] - lo[k]) * rng.random::<f64>();
            }
            let v = if s.contains(&x) { s.density_unchecked(&x) * vol } else { 0.0 };
            sum += v;
            sum2 += v * v;
        }
        let mean = sum / draws as f64;
        let var = sum2 / draws as f64 - mean * mean;
        (mean, (var / draws as f64).sqrt())
    }

    #[test]
    fn densities_integrate_to_one() {
        let specs = vec![
            SamplerSpec::UniformBox { lo: vec![-5.0], hi: vec![5.0] },
            SamplerSpec::UniformBallSector { center: vec![0.0; 4], radius: 2.5 },
            SamplerSpec::TruncatedNormalBox {
                mean: vec![0.0],
                sd: vec![1.0],
                lo: vec![-5.0],
                hi: vec![5.0],
            },
            SamplerSpec::TruncatedNormalOrthant {
                mean: vec![1.0; 3],
                sd: vec![32f64.sqrt(); 3],
                lo: vec![1.0; 3],
            },
            SamplerSpec::TruncatedNormalBallSector { center: vec![0.0; 2], sd: 1.0, radius: 2.0 },
            SamplerSpec::TruncatedNormalBallSector { center: vec![0.0; 4], sd: 1.5, radius: 2.5 },
        ];
        for spec in specs {
            let s = Sampler::new(spec.clone()).unwrap();
            let (mass, se) = hit_or_miss_mass(&s, 1_000_000);
            assert!((mass - 1.0).abs() < 3.0 * se + 1e-12, "{spec:?}: {mass} +- {se}");
        }
    }

    #[test]
    fn sector_normalizer_quadrature_matches_closed_forms() {
        for d in 1..=3 {
            let closed = radial_normal_mass(d, 1.7);
            let log_c = (1.0 - d as f64 / 2.0) * std::f64::consts::LN_2 - ln_gamma_half(d);
            let quad = simpson(
                |t: f64| (log_c - 0.5 * t * t).exp() * t.powi(d as i32 - 1),
                0.0,
                1.7,
                20_000,
            );
            assert!((closed - quad).abs() < 1e-9, "d = {d}");
        }
    }

    #[test]
    fn stream_independence() {
        let s = Sampler::new(SamplerSpec::UniformBox { lo: vec![0.0], hi: vec![1.0] }).unwrap();
        let n = 100_000;
        let a = s.draw(n, 42, 0).unwrap();
        let b = s.draw(n, 42, 1).unwrap();
        let ma = a.coords.iter().sum::<f64>() / n as f64;
        let mb = b.coords.iter().sum::<f64>() / n as f64;
        let mut cov = 0.0;
        let mut va = 0.0;
        let mut vb = 0.0;
        for (x, y) in a.coords.iter().zip(&b.coords) {
            cov += (x - ma) * (y - mb);
            va += (x - ma) * (x - ma);
            vb += (y - mb) * (y - mb);
        }
        let rho = cov / (va * vb).sqrt();
        assert!(rho.abs() < 0.01, "rho = {rho}");
    }

    #[test]
    fn positivity_on_every_draw() {
        let s = Sampler::new(SamplerSpec::TruncatedNormalBallSector {
            center: vec![0.0, 0.0],
            sd: 0.7,
            radius: 2.0,
        })
        .unwrap();
        let b = s.draw(500, 1, 2).unwrap();
        assert!(b.densities.iter().all(|g| *g > 0.0));
        assert!(b.acceptance_rate.unwrap() > 0.5);
    }

    #[test]
    fn zero_draws_rejected() {
        assert!(uniform_1d().draw(0, 1, 0).is_err());
    }
}
