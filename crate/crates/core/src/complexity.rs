//! Expected numbers of orthounimodality constraints, exact and empirical.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par;
use crate::sampling::{Sampler, SamplerSpec};
use crate::shape::{dominance_pairs, transitive_reduce_dense, transitive_reduce_sparse, DominanceOrder, DENSE_CUTOFF};

fn int(v: u64) -> BigInt {
    BigInt::from(v)
}

fn ratio(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

/// `E[N_1(n, d)] = n (n - 1) / 2^d`: expected number of comparable pairs.
pub fn expected_naive_count(n: u64, d: u32) -> BigRational {
    ratio(int(n) * int(n.saturating_sub(1)), BigInt::one() << d)
}

/// `E[N_2(n, d)] = n (n - 1) sum_{k=0}^{n-2} C(n-2, k) (-1)^k / ((k+1)^d (k+2)^d)`,
/// the expected size of the transitive reduction, in exact arithmetic.
pub fn expected_reduced_count(n: u64, d: u32) -> BigRational {
    if n < 2 {
        return BigRational::zero();
    }
    let m = n - 2;
    let mut sum = BigRational::zero();
    let mut binom = BigInt::one();
    for k in 0..=m {
        let den = int(k + 1).pow(d) * int(k + 2).pow(d);
        let term = ratio(binom.clone(), den);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        // C(m, k + 1) = C(m, k) (m - k) / (k + 1)
        binom = binom * int(m - k) / int(k + 1);
    }
    sum * BigRational::from_integer(int(n) * int(n - 1))
}

/// `H_n` exactly.
pub fn harmonic(n: u64) -> BigRational {
    (1..=n).fold(BigRational::zero(), |acc, k| acc + ratio(BigInt::one(), int(k)))
}

/// Two-dimensional closed form `(n + 1) H_n - 2 n`.
pub fn expected_reduced_count_2d(n: u64) -> BigRational {
    harmonic(n) * BigRational::from_integer(int(n + 1)) - BigRational::from_integer(int(2 * n))
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountReport {
    pub n: usize,
    pub d: usize,
    pub replications: usize,
    pub seed: u64,
    pub naive_mean: f64,
    pub naive_se: f64,
    pub naive_exact: f64,
    pub reduced_mean: f64,
    pub reduced_se: f64,
    pub reduced_exact: f64,
    /// Replications in which the reduction kept more pairs than the naive set.
    pub reduction_violations: usize,
    pub seconds: f64,
}

pub const COUNT_CSV_HEADER: &str =
    "n,d,reps,naive_mean,naive_se,naive_exact,reduced_mean,reduced_se,reduced_exact";

impl CountReport {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{:?},{:?},{:?},{:?},{:?},{:?}",
            self.n,
            self.d,
            self.replications,
            self.naive_mean,
            self.naive_se,
            self.naive_exact,
            self.reduced_mean,
            self.reduced_se,
            self.reduced_exact
        )
    }
}

fn mean_se(xs: &[f64]) -> (f64, f64) {
    let k = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / k;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1.0);
    (mean, (var / k).sqrt())
}

/// Naive and reduced pair counts for `n` uniform points in `[0, 1]^d` with
/// the mode at the origin, replication `r` on RNG stream `r`.
pub fn empirical_counts(n: usize, d: usize, replications: usize, seed: u64) -> Result<CountReport> {
    if n < 2 || d < 1 || replications == 0 {
        return Err(Error::InvalidProblem("need n >= 2, d >= 1 and at least one replication".into()));
    }
    let start = Instant::now();
    let sampler = Sampler::new(SamplerSpec::UniformBox { lo: vec![0.0; d], hi: vec![1.0; d] })?;
    let mode = vec![0.0; d];
    let counts: Vec<Result<(usize, usize)>> = par::map_indexed(replications, |r| {
        let batch = sampler.draw(n, seed, r as u64)?;
        let order = DominanceOrder::new(&batch, &mode)?;
        let adj = dominance_pairs(&order);
        let naive = adj.iter().map(Vec::len).sum();
        let red = if n < DENSE_CUTOFF { transitive_reduce_dense(&adj) } else { transitive_reduce_sparse(&adj) };
        Ok((naive, red.iter().map(Vec::len).sum()))
    });
    let counts = counts.into_iter().collect::<Result<Vec<_>>>()?;
    let naive: Vec<f64> = counts.iter().map(|c| c.0 as f64).collect();
    let reduced: Vec<f64> = counts.iter().map(|c| c.1 as f64).collect();
    let (naive_mean, naive_se) = mean_se(&naive);
    let (reduced_mean, reduced_se) = mean_se(&reduced);
    let reduced_exact = if d == 1 {
        (n - 1) as f64
    } else if d == 2 {
        to_f64(&expected_reduced_count_2d(n as u64))
    } else {
        to_f64(&expected_reduced_count(n as u64, d as u32))
    };
    Ok(CountReport {
        n,
        d,
        replications,
        seed,
        naive_mean,
        naive_se,
        naive_exact: to_f64(&expected_naive_count(n as u64, d as u32)),
        reduced_mean,
        reduced_se,
        reduced_exact,
        reduction_violations: counts.iter().filter(|c| c.1 > c.0).count(),
        seconds: start.elapsed().as_secs_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn naive_examples() {
        assert_eq!(expected_naive_count(2, 3), q(1, 4));
        assert_eq!(expected_naive_count(2, 1), q(1, 1));
        assert_eq!(expected_naive_count(100, 2), q(2475, 1));
    }

    #[test]
    fn reduced_examples() {
        assert_eq!(expected_reduced_count(3, 2), q(4, 3));
        assert_eq!(expected_reduced_count_2d(3), q(4, 3));
        for d in 2..6 {
            assert_eq!(expected_reduced_count(2, d), expected_naive_count(2, d));
        }
    }

    #[test]
    fn sandwich_n20_d3() {
        let e3 = expected_reduced_count(20, 3);
        assert!(expected_reduced_count(20, 2) / BigRational::from_integer(BigInt::from(2)) <= e3);
        assert!(e3 <= expected_naive_count(20, 3));
    }

    #[test]
    fn closed_form_small_n() {
        for n in 2..40 {
            assert_eq!(expected_reduced_count(n, 2), expected_reduced_count_2d(n), "n = {n}");
        }
    }

    #[test]
    fn empirical_reduction_never_adds() {
        let r = empirical_counts(50, 8, 20, 1).unwrap();
        assert_eq!(r.reduction_violations, 0);
        assert!(r.reduced_mean <= r.naive_mean);
        assert!((r.naive_exact - 50.0 * 49.0 / 256.0).abs() < 1e-12);
    }
}
