use rand::RngExt;
use rand_distr::{Distribution, Normal};
use serde::Serialize;

use crate::dgp::stream_rng;
use crate::error::{Error, Result};
use crate::models::Interval;

/// Signals `x_i ~ N(theta, sigma_i^2)` with `sigma_i` only known to lie in
/// `[sigma_lo, sigma_hi]`; updating works on the sample mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussianSignalsModel {
    pub sigma_lo: f64,
    pub sigma_hi: f64,
    pub epsilon: f64,
}

impl GaussianSignalsModel {
    pub fn new(sigma_lo: f64, sigma_hi: f64, epsilon: f64) -> Result<Self> {
        if !(sigma_lo > 0.0 && sigma_lo <= sigma_hi) {
            return Err(Error::InvalidParameter(format!(
                "need 0 < sigma_lo <= sigma_hi, got {sigma_lo}, {sigma_hi}"
            )));
        }
        if !(epsilon > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "epsilon must be positive, got {epsilon}"
            )));
        }
        Ok(Self {
            sigma_lo,
            sigma_hi,
            epsilon,
        })
    }

    pub fn admits(&self, sigmas: &[f64]) -> bool {
        sigmas
            .iter()
            .all(|s| (self.sigma_lo..=self.sigma_hi).contains(s))
    }

    pub fn states(&self, signals: &[f64]) -> Result<Interval> {
        gauss_atu_states(sample_mean(signals)?, signals.len(), self.epsilon)
    }
}

/// Means within `epsilon` of the sample mean (an open interval).
pub fn gauss_atu_states(sample_mean: f64, n: usize, epsilon: f64) -> Result<Interval> {
    if n == 0 {
        return Err(Error::EmptySample);
    }
    if !(epsilon > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    Ok(Interval::open(sample_mean - epsilon, sample_mean + epsilon))
}

pub fn sample_mean(xs: &[f64]) -> Result<f64> {
    if xs.is_empty() {
        return Err(Error::EmptySample);
    }
    Ok(xs.iter().sum::<f64>() / xs.len() as f64)
}

/// `n` independent normal signals with mean `theta`; signal `i` uses
/// `sigmas[(i-1) mod len]` as its standard deviation.
pub fn gauss_sample_with<R: RngExt + ?Sized>(
    theta: f64,
    sigmas: &[f64],
    n: usize,
    rng: &mut R,
) -> Result<Vec<f64>> {
    if sigmas.is_empty() || sigmas.iter().any(|s| !(*s > 0.0 && s.is_finite())) {
        return Err(Error::InvalidParameter(
            "standard deviations must be positive".into(),
        ));
    }
    let std = Normal::new(0.0, 1.0).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    Ok((0..n)
        .map(|i| theta + sigmas[i % sigmas.len()] * std.sample(rng))
        .collect())
}

pub fn gauss_sample(theta: f64, sigmas: &[f64], n: usize, seed: u64) -> Result<Vec<f64>> {
    gauss_sample_with(theta, sigmas, n, &mut stream_rng(seed, 0))
}
