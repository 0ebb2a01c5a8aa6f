//! Random sampling designs, point estimators with standard errors, and
//! Monte-Carlo sampling distributions.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::data::{RawSample, ScaleLevel};
use crate::descriptive::{mean_of, variance_of};
use crate::distributions::Distribution;
use crate::error::{insufficient, invalid, Measure, Result};
use crate::special::ln_gamma_unchecked;

fn check_sizes(population: usize, n: usize) -> Result<()> {
    if n == 0 || n > population {
        return Err(invalid(format!(
            "sample size must satisfy 1 <= n <= N, got n={n}, N={population}"
        )));
    }
    Ok(())
}

/// n distinct indices out of 0..N, drawn by a partial Fisher–Yates shuffle
/// and returned in increasing order.
pub fn simple_random_indices_with<R: Rng + ?Sized>(population: usize, n: usize, rng: &mut R) -> Result<Vec<usize>> {
    check_sizes(population, n)?;
    let mut pool: Vec<usize> = (0..population).collect();
    for i in 0..n {
        let j = rng.gen_range(i..population);
        pool.swap(i, j);
    }
    pool.truncate(n);
    pool.sort_unstable();
    Ok(pool)
}

pub fn simple_random_indices(population: usize, n: usize, seed: u64) -> Result<Vec<usize>> {
    simple_random_indices_with(population, n, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Selection probabilities of simple random sampling without replacement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InclusionProbabilities {
    /// Probability of any one particular sample, 1/C(N, n).
    pub sample: f64,
    /// Probability that a given unit is drawn, n/N.
    pub unit: f64,
    /// Probability that two given units are both drawn.
    pub joint: f64,
    /// n/N ≤ 0.05, under which draws are nearly independent.
    pub approximately_independent: bool,
}

pub fn inclusion_probabilities(population: usize, n: usize) -> Result<InclusionProbabilities> {
    check_sizes(population, n)?;
    let (big, small) = (population as f64, n as f64);
    let ln_c = ln_gamma_unchecked(big + 1.0) - ln_gamma_unchecked(small + 1.0) - ln_gamma_unchecked(big - small + 1.0);
    Ok(InclusionProbabilities {
        sample: if n == population { 1.0 } else { (-ln_c).exp() },
        unit: inclusion_probability(population, n)?,
        joint: joint_inclusion_probability(population, n)?,
        approximately_independent: small / big <= 0.05,
    })
}

pub fn inclusion_probability(population: usize, n: usize) -> Result<f64> {
    check_sizes(population, n)?;
    Ok(n as f64 / population as f64)
}

/// n/N · (n − 1)/(N − 1); zero when the population has a single unit.
pub fn joint_inclusion_probability(population: usize, n: usize) -> Result<f64> {
    check_sizes(population, n)?;
    if population < 2 {
        return Ok(0.0);
    }
    let (big, small) = (population as f64, n as f64);
    Ok(small / big * (small - 1.0) / (big - 1.0))
}

/// Proportionate allocation of n over strata of sizes N_i, rounded by
/// largest remainders so that the parts add up to n.
pub fn stratified_allocation(strata: &[u64], n: u64) -> Result<Vec<u64>> {
    if strata.is_empty() {
        return Err(invalid("no strata given"));
    }
    let total: u64 = strata.iter().sum();
    if n == 0 || n > total {
        return Err(invalid(format!("sample size must satisfy 1 <= n <= N, got n={n}, N={total}")));
    }
    // exact quotas in integer arithmetic: n·N_i = q_i·N + r_i
    let mut alloc: Vec<u64> = Vec::with_capacity(strata.len());
    let mut rema: Vec<(u128, usize)> = Vec::with_capacity(strata.len());
    for (i, &size) in strata.iter().enumerate() {
        let scaled = n as u128 * size as u128;
        alloc.push((scaled / total as u128) as u64);
        rema.push((scaled % total as u128, i));
    }
    let short = n - alloc.iter().sum::<u64>();
    // largest remainder first, earlier stratum on ties
    rema.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    for &(_, i) in rema.iter().take(short as usize) {
        alloc[i] += 1;
    }
    if let Some(i) = (0..strata.len()).find(|&i| alloc[i] > strata[i]) {
        return Err(invalid(format!("allocation {} exceeds stratum size {}", alloc[i], strata[i])));
    }
    Ok(alloc)
}

/// k of K clusters chosen by simple random sampling; each cluster is then
/// surveyed completely.
pub fn cluster_sample(clusters: usize, k: usize, seed: u64) -> Result<Vec<usize>> {
    if k == 0 || k >= clusters {
        return Err(invalid(format!("cluster sampling needs 1 <= k < K, got k={k}, K={clusters}")));
    }
    simple_random_indices(clusters, k, seed)
}

pub fn cluster_selection_probability(clusters: usize, k: usize) -> Result<f64> {
    if k == 0 || k >= clusters {
        return Err(invalid(format!("cluster sampling needs 1 <= k < K, got k={k}, K={clusters}")));
    }
    Ok(k as f64 / clusters as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Estimator {
    Mean,
    Variance,
    Skewness,
    Kurtosis,
}

impl Estimator {
    pub const ALL: [Estimator; 4] = [Estimator::Mean, Estimator::Variance, Estimator::Skewness, Estimator::Kurtosis];

    fn min_n(self) -> usize {
        match self {
            Estimator::Mean | Estimator::Variance => 2,
            Estimator::Skewness => 3,
            Estimator::Kurtosis => 4,
        }
    }

    /// Value of the estimator on a sample.
    pub fn evaluate(self, values: &[f64]) -> Result<f64> {
        let n = values.len();
        if n < self.min_n() {
            return Err(insufficient(format!("{self:?} estimator requires n >= {}", self.min_n())));
        }
        match self {
            Estimator::Mean => Ok(mean_of(values)),
            Estimator::Variance => variance_of(values),
            Estimator::Skewness | Estimator::Kurtosis => {
                let nf = n as f64;
                let m = mean_of(values);
                let moment = |k: i32| values.iter().map(|x| (x - m).powi(k)).sum::<f64>() / nf;
                let m2 = moment(2);
                if !(m2 > 0.0) {
                    return Err(crate::error::degenerate("degenerate sample with zero variance"));
                }
                if self == Estimator::Skewness {
                    Ok((nf * (nf - 1.0)).sqrt() / (nf - 2.0) * moment(3) / m2.powf(1.5))
                } else {
                    Ok((nf - 1.0) / ((nf - 2.0) * (nf - 3.0)) * ((nf + 1.0) * (moment(4) / (m2 * m2) - 3.0) + 6.0))
                }
            }
        }
    }

    /// Standard error of the estimator at sample size n, given the sample
    /// standard deviation for the location and scale estimators.
    pub fn standard_error(self, n: usize, s: f64) -> Result<f64> {
        if n < self.min_n() {
            return Err(insufficient(format!("{self:?} estimator requires n >= {}", self.min_n())));
        }
        let n = n as f64;
        Ok(match self {
            Estimator::Mean => s / n.sqrt(),
            Estimator::Variance => (2.0 / (n - 1.0)).sqrt() * s * s,
            Estimator::Skewness => (6.0 * (n - 1.0) * n / ((n - 2.0) * (n + 1.0) * (n + 3.0))).sqrt(),
            Estimator::Kurtosis => {
                2.0 * (6.0 * (n - 1.0).powi(2) * n / ((n - 3.0) * (n - 2.0) * (n + 3.0) * (n + 5.0))).sqrt()
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointEstimate {
    pub estimator: Estimator,
    pub value: Measure,
    pub standard_error: Measure,
    pub n: usize,
}

/// Sample mean, variance, skewness G₁ and excess kurtosis G₂ with their
/// standard errors.
pub fn point_estimates(sample: &RawSample) -> Result<Vec<PointEstimate>> {
    sample.require(ScaleLevel::MetricInterval)?;
    let values = sample.values();
    let n = values.len();
    let s = variance_of(values)?.sqrt();
    Ok(Estimator::ALL
        .iter()
        .map(|&e| {
            let value = Measure::from(e.evaluate(values));
            let standard_error = if value.is_present() {
                Measure::from(e.standard_error(n, s))
            } else {
                value.clone()
            };
            PointEstimate {
                estimator: e,
                value,
                standard_error,
                n,
            }
        })
        .collect())
}

/// Simulated sampling distribution of an estimator.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SamplingSimulation {
    pub estimator: Estimator,
    pub n: usize,
    pub values: Vec<f64>,
    pub mean: f64,
    pub std_dev: f64,
}

/// Draws `reps` samples of size `n` from `dist` and evaluates the estimator
/// on each. Replicate i uses its own generator seeded from the i-th output
/// of a master generator, so results do not depend on evaluation order.
pub fn sampling_distribution_sim(
    dist: &Distribution,
    estimator: Estimator,
    n: usize,
    reps: usize,
    seed: u64,
) -> Result<SamplingSimulation> {
    if reps < 100 {
        return Err(invalid(format!("at least 100 replicates required, got {reps}")));
    }
    if n < estimator.min_n() {
        return Err(insufficient(format!("{estimator:?} estimator requires n >= {}", estimator.min_n())));
    }
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let child_seeds: Vec<u64> = (0..reps).map(|_| master.next_u64()).collect();
    let values = child_seeds
        .iter()
        .map(|&s| {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            estimator.evaluate(&dist.sample_with(n, &mut rng)?)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(SamplingSimulation {
        estimator,
        n,
        mean: mean_of(&values),
        std_dev: variance_of(&values)?.sqrt(),
        values,
    })
}
