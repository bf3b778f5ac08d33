use std::collections::BTreeMap;

use crate::dgp::{sample_with, IndependentDgp};
use crate::error::Result;
use crate::models::{
    bern_prediction_asymptotic, bern_prediction_ml, bern_theta_asymptotic, bern_theta_finite,
};
use crate::sim::config::ExperimentConfig;
use crate::sim::report::{ExperimentReport, Record};
use crate::sim::scenario::{finish, flag, rep_rng, replicate, share_of_ones};

/// Truth with marginals `(1 - delta) theta + delta psi_i`. `retained_truth` is
/// whether the finite-sample parameter set holds `theta`; `metric` whether the
/// finite-sample prediction interval holds the next experiment's probability.
pub fn run_bernoulli_model(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let b = cfg
        .bernoulli
        .as_ref()
        .ok_or_else(|| crate::Error::InvalidParameter("missing bernoulli section".into()))?;
    let cycle: Vec<f64> = b
        .psi
        .iter()
        .map(|psi| (1.0 - b.delta) * b.theta + b.delta * psi)
        .collect();
    let truth = IndependentDgp::bernoulli_periodic(&cycle)?;
    let next = truth.marginal_at(cfg.n + 1).prob(1);
    let alpha = cfg.update.alpha;
    let records = replicate(cfg.reps, |rep| {
        let data = sample_with(&truth, cfg.n, &mut rep_rng(cfg.seed, 0, rep));
        let sets = bern_theta_finite(&data, b.delta, alpha)?;
        Ok(Record {
            rep,
            phi: Some(share_of_ones(&data)),
            retained_truth: Some(sets.theta.contains_closed(b.theta)),
            metric: Some(flag(sets.prediction.contains_closed(next))),
            ..Default::default()
        })
    })?;

    // Limits at the truth's own average frequency.
    let avg = truth.average_sample_marginals(cfg.n)?.prob(1);
    let theta = bern_theta_asymptotic(avg, b.delta)?;
    let pred = bern_prediction_asymptotic(avg, b.delta)?;
    let ml = bern_prediction_ml(avg, b.delta)?;
    let values = BTreeMap::from([
        ("average_frequency".to_string(), avg),
        ("next_probability".to_string(), next),
        ("theta_lo".to_string(), theta.lo),
        ("theta_hi".to_string(), theta.hi),
        ("prediction_lo".to_string(), pred.lo),
        ("prediction_hi".to_string(), pred.hi),
        ("ml_prediction_lo".to_string(), ml.lo),
        ("ml_prediction_hi".to_string(), ml.hi),
        (
            "theta_limit_holds_truth".to_string(),
            flag(theta.contains_closed(b.theta)),
        ),
        (
            "ml_prediction_holds_next".to_string(),
            flag(ml.contains_closed(next)),
        ),
    ]);
    Ok(finish(cfg, records, values))
}
