//! Closed forms for the Bernoulli nuisance-parameter model and the Gaussian
//! signals model.

pub mod bernoulli;
pub mod gaussian;

use serde::Serialize;

pub use bernoulli::{
    bern_prediction_asymptotic, bern_prediction_ml, bern_theta_asymptotic, bern_theta_finite,
    BernoulliNuisanceModel, FiniteSets,
};
pub use gaussian::{
    gauss_atu_states, gauss_sample, gauss_sample_with, sample_mean, GaussianSignalsModel,
};

/// Slack for closed-endpoint numeric comparisons.
pub const ENDPOINT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    /// Both endpoints excluded.
    pub open: bool,
}

impl Interval {
    pub fn closed(lo: f64, hi: f64) -> Self {
        Self {
            lo,
            hi,
            open: false,
        }
    }

    pub fn open(lo: f64, hi: f64) -> Self {
        Self { lo, hi, open: true }
    }

    /// Membership respecting the open flag.
    pub fn contains(&self, x: f64) -> bool {
        if self.open {
            self.lo < x && x < self.hi
        } else {
            self.lo <= x && x <= self.hi
        }
    }

    /// Membership in the closure, with `ENDPOINT_TOL` slack.
    pub fn contains_closed(&self, x: f64) -> bool {
        self.lo - ENDPOINT_TOL <= x && x <= self.hi + ENDPOINT_TOL
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo + ENDPOINT_TOL && self.hi <= other.hi + ENDPOINT_TOL
    }
}
