use std::collections::BTreeMap;

use crate::error::Result;
use crate::models::{gauss_sample_with, sample_mean, GaussianSignalsModel};
use crate::sim::config::ExperimentConfig;
use crate::sim::report::{ExperimentReport, Record};
use crate::sim::scenario::{finish, rep_rng, replicate};

/// `phi` holds the sample mean, `retained_truth` whether the true mean lies in
/// the updated set of means, `metric` the absolute estimation error.
pub fn run_gaussian_model(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let g = cfg
        .gaussian
        .as_ref()
        .ok_or_else(|| crate::Error::InvalidParameter("missing gaussian section".into()))?;
    let model = GaussianSignalsModel::new(g.sigma_lo, g.sigma_hi, cfg.update.epsilon)?;
    let records = replicate(cfg.reps, |rep| {
        let xs = gauss_sample_with(g.theta, &g.sigmas, cfg.n, &mut rep_rng(cfg.seed, 0, rep))?;
        let mean = sample_mean(&xs)?;
        Ok(Record {
            rep,
            phi: Some(mean),
            retained_truth: Some(model.states(&xs)?.contains(g.theta)),
            metric: Some((mean - g.theta).abs()),
            ..Default::default()
        })
    })?;
    let values = BTreeMap::from([("epsilon".to_string(), cfg.update.epsilon)]);
    Ok(finish(cfg, records, values))
}
