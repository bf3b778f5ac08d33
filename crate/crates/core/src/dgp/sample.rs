use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dgp::marginal::Marginal;
use crate::dgp::outcome::OutcomeSpace;
use crate::dgp::process::IndependentDgp;
use crate::error::{Error, Result};

/// Realized outcomes of experiments `1..=N`, as outcome indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleData {
    outcomes: Vec<usize>,
}

impl SampleData {
    pub fn new(outcomes: Vec<usize>, d: usize) -> Result<Self> {
        if let Some(&index) = outcomes.iter().find(|&&o| o >= d) {
            return Err(Error::OutcomeOutOfRange { index, d });
        }
        Ok(Self { outcomes })
    }

    /// Binary data from a sequence of outcome indices in `{0, 1}`.
    pub fn binary(outcomes: &[usize]) -> Result<Self> {
        Self::new(outcomes.to_vec(), 2)
    }

    /// Binary data with `ones` outcomes equal to 1 followed by `n - ones` zeros.
    pub fn binary_with_count(n: usize, ones: usize) -> Self {
        assert!(ones <= n);
        let mut outcomes = vec![1; ones];
        outcomes.resize(n, 0);
        Self { outcomes }
    }

    pub fn outcomes(&self) -> &[usize] {
        &self.outcomes
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    pub fn counts(&self, d: usize) -> Vec<usize> {
        let mut c = vec![0; d];
        for &o in &self.outcomes {
            c[o] += 1;
        }
        c
    }

    pub fn concat(&self, other: &SampleData) -> SampleData {
        let mut outcomes = self.outcomes.clone();
        outcomes.extend_from_slice(&other.outcomes);
        SampleData { outcomes }
    }
}

/// Empirical distribution of the sample over `space`.
pub fn empirical_distribution(data: &SampleData, space: &OutcomeSpace) -> Result<Marginal> {
    empirical_from_counts(&data.counts(space.d()))
}

pub(crate) fn empirical_from_counts(counts: &[usize]) -> Result<Marginal> {
    let n: usize = counts.iter().sum();
    if n == 0 {
        return Err(Error::EmptySample);
    }
    Ok(Marginal::renormalized(
        counts.iter().map(|&c| c as f64 / n as f64).collect(),
    ))
}

/// Generator for replication `stream` under a master seed. Streams are independent
/// and depend only on `(seed, stream)`, so replications can run in any order.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Draw one outcome by inverse CDF.
pub fn draw_outcome<R: RngExt + ?Sized>(m: &Marginal, rng: &mut R) -> usize {
    let u: f64 = rng.random();
    let mut cum = 0.0;
    let mut last_positive = 0;
    for (j, &p) in m.probs().iter().enumerate() {
        if p > 0.0 {
            last_positive = j;
        }
        cum += p;
        if u < cum {
            return j;
        }
    }
    last_positive
}

/// Draw experiments `1..=n` independently from their marginals.
pub fn sample_with<R: RngExt + ?Sized>(p: &IndependentDgp, n: usize, rng: &mut R) -> SampleData {
    let outcomes = (1..=n)
        .map(|i| draw_outcome(p.marginal_at(i), rng))
        .collect();
    SampleData { outcomes }
}

/// Seeded sample of size `n`; the same seed always yields the same data.
pub fn sample(p: &IndependentDgp, n: usize, seed: u64) -> SampleData {
    sample_with(p, n, &mut stream_rng(seed, 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empirical_counts_binary() {
        let data = SampleData::binary(&[1, 0, 1]).unwrap();
        let phi = empirical_distribution(&data, &OutcomeSpace::binary()).unwrap();
        assert!((phi.prob(0) - 1.0 / 3.0).abs() < 1e-15);
        assert!((phi.prob(1) - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn empirical_degenerate() {
        let space = OutcomeSpace::indexed(4).unwrap();
        let data = SampleData::new(vec![0; 7], 4).unwrap();
        assert_eq!(
            empirical_distribution(&data, &space).unwrap().probs(),
            &[1.0, 0.0, 0.0, 0.0]
        );
    }

    #[test]
    fn empty_sample_is_an_error() {
        let data = SampleData::new(vec![], 2).unwrap();
        assert_eq!(
            empirical_distribution(&data, &OutcomeSpace::binary()),
            Err(Error::EmptySample)
        );
    }

    #[test]
    fn out_of_range_outcome_rejected() {
        assert!(matches!(
            SampleData::new(vec![0, 2], 2),
            Err(Error::OutcomeOutOfRange { index: 2, d: 2 })
        ));
    }

    #[test]
    fn degenerate_marginal_sample() {
        let p = IndependentDgp::iid(Marginal::point(3, 0));
        assert!(sample(&p, 200, 9).outcomes().iter().all(|&o| o == 0));
        let q = IndependentDgp::iid(Marginal::point(2, 1));
        assert!(sample(&q, 200, 9).outcomes().iter().all(|&o| o == 1));
    }

    #[test]
    fn same_seed_same_sample() {
        let p = IndependentDgp::bernoulli_periodic(&[0.3, 0.7, 0.5]).unwrap();
        assert_eq!(sample(&p, 500, 42), sample(&p, 500, 42));
        assert_ne!(sample(&p, 500, 42), sample(&p, 500, 43));
    }

    #[test]
    fn streams_differ() {
        let p = IndependentDgp::bernoulli_iid(0.5).unwrap();
        let a = sample_with(&p, 64, &mut stream_rng(1, 0));
        let b = sample_with(&p, 64, &mut stream_rng(1, 1));
        assert_ne!(a, b);
    }
}
