//! Updating rules: maps from an initial family and sample data to an updated
//! family, plus the posterior of the Bayesian baseline.

pub mod bayes;
pub mod rules;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use bayes::{bayesian_posterior, PosteriorBranch, PosteriorWeights};
pub use rules::{
    apply_rule, average_then_update, bonferroni_update, full_bayesian_update,
    max_likelihood_update, robust_iid_update,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct UpdateParams {
    /// Sup-norm radius of average-then-update.
    pub epsilon: f64,
    /// Level of the robust i.i.d. tests.
    pub alpha: f64,
    /// Use per-outcome intervals instead of the ellipsoid.
    pub bonferroni: bool,
}

impl Default for UpdateParams {
    fn default() -> Self {
        Self {
            epsilon: 0.05,
            alpha: 0.05,
            bonferroni: false,
        }
    }
}

impl UpdateParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "epsilon must be positive, got {}",
                self.epsilon
            )));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "alpha must be in (0, 1), got {}",
                self.alpha
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    /// Average-then-update.
    Atu,
    /// Maximum likelihood.
    Ml,
    /// Full Bayesian (prior-by-prior) updating.
    Fb,
    /// Bayesian updating under the uniform prior; decisions use expected utility.
    Bayes,
    /// Robust i.i.d. ellipsoid tests.
    Riid,
    /// Robust i.i.d. tests with per-outcome Bonferroni intervals.
    Bonferroni,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Atu => "atu",
            Rule::Ml => "ml",
            Rule::Fb => "fb",
            Rule::Bayes => "bayes",
            Rule::Riid => "riid",
            Rule::Bonferroni => "bonferroni",
        }
    }
}
