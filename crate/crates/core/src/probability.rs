//! Finite probability spaces, combinatorics and Bayes' theorem.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{invalid, Result, StatError};

const NORMALISATION_TOL: f64 = 1e-12;

/// A finite sample space Ω with a probability for every outcome.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiniteProbabilitySpace {
    outcomes: Vec<String>,
    probs: Vec<f64>,
}

impl FiniteProbabilitySpace {
    /// Validates non-negativity and normalisation.
    pub fn new(outcomes: Vec<String>, probs: Vec<f64>) -> Result<Self> {
        if outcomes.is_empty() {
            return Err(StatError::EmptyInput);
        }
        if outcomes.len() != probs.len() {
            return Err(StatError::LengthMismatch {
                left: outcomes.len(),
                right: probs.len(),
            });
        }
        if let Some(p) = probs.iter().find(|p| !(**p >= 0.0) || !p.is_finite()) {
            return Err(invalid(format!("probability {p} violates non-negativity")));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > NORMALISATION_TOL {
            return Err(invalid(format!("probabilities sum to {total}, not 1")));
        }
        Ok(Self { outcomes, probs })
    }

    /// Laplace space: every outcome equally likely.
    pub fn uniform(outcomes: Vec<String>) -> Result<Self> {
        let n = outcomes.len();
        if n == 0 {
            return Err(StatError::EmptyInput);
        }
        Self::new(outcomes, vec![1.0 / n as f64; n])
    }

    /// Uniform space with outcomes labelled `1..=n`.
    pub fn uniform_numbered(n: usize) -> Result<Self> {
        Self::uniform((1..=n).map(|i| i.to_string()).collect())
    }

    pub fn size(&self) -> usize {
        self.outcomes.len()
    }

    pub fn outcomes(&self) -> &[String] {
        &self.outcomes
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn event_prob(&self, event: &Event) -> Result<f64> {
        self.check(event)?;
        Ok(event.indices.iter().map(|&i| self.probs[i]).sum())
    }

    fn check(&self, event: &Event) -> Result<()> {
        match event.indices.iter().next_back() {
            Some(&max) if max >= self.size() => Err(invalid(format!(
                "outcome index {max} outside a space of size {}",
                self.size()
            ))),
            _ => Ok(()),
        }
    }

    /// The certain event Ω.
    pub fn whole(&self) -> Event {
        Event {
            indices: (0..self.size()).collect(),
        }
    }

    pub fn complement(&self, event: &Event) -> Result<Event> {
        self.check(event)?;
        Ok(Event {
            indices: (0..self.size()).filter(|i| !event.indices.contains(i)).collect(),
        })
    }

    /// P(A | B) = P(A ∩ B) / P(B).
    pub fn conditional_prob(&self, a: &Event, b: &Event) -> Result<f64> {
        let pb = self.event_prob(b)?;
        if pb <= 0.0 {
            return Err(StatError::NullEvent);
        }
        Ok(self.event_prob(&a.intersection(b))? / pb)
    }

    fn check_partition(&self, partition: &[Event]) -> Result<()> {
        let mut seen = vec![false; self.size()];
        for part in partition {
            self.check(part)?;
            for &i in &part.indices {
                if seen[i] {
                    return Err(StatError::PartitionViolated(format!(
                        "outcome {i} lies in more than one block"
                    )));
                }
                seen[i] = true;
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(StatError::PartitionViolated(format!(
                "outcome {i} is not covered"
            )));
        }
        Ok(())
    }

    /// Law of total probability Σ P(B | A_i) P(A_i).
    pub fn total_prob(&self, partition: &[Event], b: &Event) -> Result<f64> {
        self.check_partition(partition)?;
        self.check(b)?;
        let mut total = 0.0;
        for part in partition {
            let pa = self.event_prob(part)?;
            if pa > 0.0 {
                total += self.conditional_prob(b, part)? * pa;
            }
        }
        Ok(total)
    }

    /// Posterior probabilities P(A_i | B) for every block of the partition.
    pub fn bayes_posterior(&self, partition: &[Event], b: &Event) -> Result<Vec<f64>> {
        let pb = self.total_prob(partition, b)?;
        if pb <= 0.0 {
            return Err(StatError::NullEvent);
        }
        partition
            .iter()
            .map(|part| {
                let pa = self.event_prob(part)?;
                if pa > 0.0 {
                    Ok(self.conditional_prob(b, part)? * pa / pb)
                } else {
                    Ok(0.0)
                }
            })
            .collect()
    }
}

/// Bayes' theorem from priors P(A_i) and likelihoods P(B | A_i).
pub fn bayes_from_likelihoods(priors: &[f64], likelihoods: &[f64]) -> Result<Vec<f64>> {
    if priors.len() != likelihoods.len() {
        return Err(StatError::LengthMismatch {
            left: priors.len(),
            right: likelihoods.len(),
        });
    }
    if priors.is_empty() {
        return Err(StatError::EmptyInput);
    }
    if priors.iter().chain(likelihoods).any(|p| !(0.0..=1.0).contains(p)) {
        return Err(invalid("priors and likelihoods must lie in [0, 1]"));
    }
    if (priors.iter().sum::<f64>() - 1.0).abs() > NORMALISATION_TOL {
        return Err(StatError::PartitionViolated("priors do not sum to 1".into()));
    }
    let evidence: f64 = priors.iter().zip(likelihoods).map(|(p, l)| p * l).sum();
    if evidence <= 0.0 {
        return Err(StatError::NullEvent);
    }
    Ok(priors
        .iter()
        .zip(likelihoods)
        .map(|(p, l)| p * l / evidence)
        .collect())
}

/// A set of outcome indices.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Event {
    indices: BTreeSet<usize>,
}

impl Event {
    /// Rejects repeated indices.
    pub fn new(indices: &[usize]) -> Result<Self> {
        let set: BTreeSet<usize> = indices.iter().copied().collect();
        if set.len() != indices.len() {
            return Err(invalid("event indices must be distinct"));
        }
        Ok(Self { indices: set })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn union(&self, other: &Event) -> Event {
        Event {
            indices: self.indices.union(&other.indices).copied().collect(),
        }
    }

    pub fn intersection(&self, other: &Event) -> Event {
        Event {
            indices: self.indices.intersection(&other.indices).copied().collect(),
        }
    }
}

pub fn laplace_prob(favourable: u64, total: u64) -> Result<f64> {
    if total == 0 {
        return Err(invalid("total number of cases must be positive"));
    }
    if favourable > total {
        return Err(invalid(format!(
            "{favourable} favourable cases exceed {total} possible cases"
        )));
    }
    Ok(favourable as f64 / total as f64)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn overflow(what: &str) -> StatError {
    StatError::Overflow(format!("{what} exceeds u128"))
}

pub fn factorial(n: u64) -> Result<u128> {
    (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k).ok_or_else(|| overflow("factorial")))
}

/// Exact C(n, k). Every intermediate is bounded by the final value, so an
/// overflow error means the result itself does not fit in `u128`.
pub fn binomial_coefficient(n: u64, k: u64) -> Result<u128> {
    if k > n {
        return Err(invalid(format!("binomial coefficient C({n}, {k}) needs k <= n")));
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    let mut c: u128 = 1;
    for i in 1..=k {
        // c · (n − k + i) / i, reduced so the division is exact
        let m = n - k + i;
        let g = gcd(c, i);
        let (c_red, i_red) = (c / g, i / g);
        c = c_red
            .checked_mul(m / i_red)
            .ok_or_else(|| overflow("binomial coefficient"))?;
    }
    Ok(c)
}

/// Kinds of arrangements of N objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Arrangement {
    /// N! orderings of N distinct objects.
    PermAllDistinct { n: u64 },
    /// N! / (n₁!⋯n_s!) orderings with s groups of identical objects.
    PermWithGroups { groups: Vec<u64> },
    /// Unordered selections of k out of n without repetition.
    CombNoRep { n: u64, k: u64 },
    /// Unordered selections of k out of n with repetition.
    CombRep { n: u64, k: u64 },
    /// Ordered selections without repetition.
    VarNoRep { n: u64, k: u64 },
    /// Ordered selections with repetition.
    VarRep { n: u64, k: u64 },
}

pub fn count_arrangements(kind: &Arrangement) -> Result<u128> {
    match kind {
        Arrangement::PermAllDistinct { n } => factorial(*n),
        Arrangement::PermWithGroups { groups } => {
            if groups.is_empty() {
                return Err(invalid("at least one group is required"));
            }
            // multinomial as a product of binomials
            let mut remaining: u64 = groups.iter().sum();
            let mut total: u128 = 1;
            for &g in groups {
                let c = binomial_coefficient(remaining, g)?;
                total = total.checked_mul(c).ok_or_else(|| overflow("multinomial"))?;
                remaining -= g;
            }
            Ok(total)
        }
        Arrangement::CombNoRep { n, k } => binomial_coefficient(*n, *k),
        Arrangement::CombRep { n, k } => {
            if *n == 0 {
                return if *k == 0 {
                    Ok(1)
                } else {
                    Err(invalid("cannot choose from an empty set"))
                };
            }
            binomial_coefficient(n + k - 1, *k)
        }
        Arrangement::VarNoRep { n, k } => {
            if k > n {
                return Err(invalid(format!("cannot arrange {k} of {n} without repetition")));
            }
            ((n - k + 1) as u128..=*n as u128)
                .try_fold(1u128, |acc, f| acc.checked_mul(f).ok_or_else(|| overflow("variation")))
        }
        Arrangement::VarRep { n, k } => {
            let k = u32::try_from(*k).map_err(|_| overflow("variation"))?;
            (*n as u128).checked_pow(k).ok_or_else(|| overflow("variation"))
        }
    }
}
