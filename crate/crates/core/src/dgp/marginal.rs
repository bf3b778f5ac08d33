use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on the unit-sum constraint of a probability vector.
pub const SIMPLEX_TOL: f64 = 1e-12;

/// Default floor used where full support is required (likelihoods, covariance inversion).
pub const DEFAULT_SUPPORT_FLOOR: f64 = 1e-6;

/// A probability vector over a finite outcome set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Marginal {
    probs: Vec<f64>,
}

impl Marginal {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.len() < 2 {
            return Err(Error::InvalidMarginal(format!(
                "need at least two components, got {}",
                probs.len()
            )));
        }
        if let Some(p) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::InvalidMarginal(format!(
                "component {p} is not a probability"
            )));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SIMPLEX_TOL {
            return Err(Error::InvalidMarginal(format!(
                "components sum to {sum}, not 1"
            )));
        }
        Ok(Self { probs })
    }

    /// Binary marginal `(1 - p1, p1)`; `p1` is the probability of outcome 1.
    pub fn bernoulli(p1: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p1) {
            return Err(Error::InvalidMarginal(format!("{p1} is not a probability")));
        }
        Ok(Self {
            probs: vec![1.0 - p1, p1],
        })
    }

    pub fn uniform(d: usize) -> Self {
        assert!(d >= 2, "a marginal needs at least two outcomes");
        Self {
            probs: vec![1.0 / d as f64; d],
        }
    }

    /// All mass on outcome `j`.
    pub fn point(d: usize, j: usize) -> Self {
        assert!(d >= 2 && j < d);
        let mut probs = vec![0.0; d];
        probs[j] = 1.0;
        Self { probs }
    }

    /// Rescale a nonnegative vector onto the simplex. Used for values that are
    /// probabilities up to rounding (averages, floors).
    pub(crate) fn renormalized(mut raw: Vec<f64>) -> Self {
        let sum: f64 = raw.iter().sum();
        debug_assert!(sum > 0.0);
        raw.iter_mut().for_each(|p| *p = (*p / sum).max(0.0));
        Self { probs: raw }
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn d(&self) -> usize {
        self.probs.len()
    }

    pub fn prob(&self, j: usize) -> f64 {
        self.probs[j]
    }

    /// The reduced coordinates `(p_0, .., p_{d-2})`; the last outcome is implied.
    pub fn reduced(&self) -> &[f64] {
        &self.probs[..self.probs.len() - 1]
    }

    pub fn min_prob(&self) -> f64 {
        self.probs.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn has_full_support(&self, eta: f64) -> bool {
        self.min_prob() >= eta
    }

    /// Raise every component to at least `eta` and renormalize.
    pub fn floored(&self, eta: f64) -> Marginal {
        if self.has_full_support(eta) {
            return self.clone();
        }
        Self::renormalized(self.probs.iter().map(|p| p.max(eta)).collect())
    }

    pub fn sup_distance(&self, other: &Marginal) -> f64 {
        self.probs
            .iter()
            .zip(&other.probs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Marginal, tol: f64) -> bool {
        self.d() == other.d() && self.sup_distance(other) <= tol
    }

    /// Expectation of a payoff vector indexed by outcome.
    pub fn expect(&self, payoff: &[f64]) -> f64 {
        self.probs.iter().zip(payoff).map(|(p, f)| p * f).sum()
    }
}

impl TryFrom<Vec<f64>> for Marginal {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Marginal> for Vec<f64> {
    fn from(m: Marginal) -> Self {
        m.probs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_simplex() {
        assert!(Marginal::new(vec![0.5, 0.5]).is_ok());
        assert!(Marginal::new(vec![0.5, 0.6]).is_err());
        assert!(Marginal::new(vec![-0.1, 1.1]).is_err());
        assert!(Marginal::new(vec![1.0]).is_err());
        assert!(Marginal::new(vec![0.1, 0.2, 0.7]).is_ok());
    }

    #[test]
    fn floor_restores_full_support() {
        let m = Marginal::point(3, 0).floored(1e-6);
        assert!(m.has_full_support(1e-6 * 0.99));
        assert!((m.probs().iter().sum::<f64>() - 1.0).abs() < SIMPLEX_TOL);
    }

    #[test]
    fn bernoulli_orders_outcome_one_last() {
        let m = Marginal::bernoulli(0.8).unwrap();
        assert_eq!(m.prob(1), 0.8);
        assert!((m.prob(0) - 0.2).abs() < 1e-15);
    }
}
