use std::collections::BTreeMap;

use crate::decision::choice::argmax_with_incumbent;
use crate::dgp::{sample_with, BoxFamily, DgpFamily, SampleData};
use crate::error::{Error, Result};
use crate::sim::config::{BayesSection, ExperimentConfig};
use crate::sim::report::{ExperimentReport, Record};
use crate::sim::scenario::{finish, rep_rng, replicate, share_of_ones};
use crate::update::bayesian_posterior;

/// `{0.4, 0.5}^inf` (read as the vertex set of `[0.4, 0.5]^inf`) and `{0.6, 1}^inf`.
pub fn two_box_family() -> DgpFamily {
    DgpFamily::union(vec![
        DgpFamily::Box(BoxFamily::bernoulli(0.4, 0.5).expect("valid box")),
        DgpFamily::Box(BoxFamily::bernoulli(0.6, 1.0).expect("valid box")),
    ])
    .expect("branches share an outcome space")
}

/// Expected-utility choice between a bet on outcome 1 (act 0) and a constant
/// (act 1). `certainty_equivalent` holds the prior expected payoff of the
/// data-free act, `metric` the posterior mass of the watched branch.
pub fn run_bayes_counterexample(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let sec = cfg.bayes.clone().unwrap_or_default();
    let BayesSection {
        constant: x,
        watch_branch,
    } = sec;
    let initial = cfg.initial.clone().unwrap_or_else(two_box_family);
    let truth = cfg
        .truth
        .as_ref()
        .ok_or_else(|| Error::InvalidParameter("missing truth".into()))?;
    let n = cfg.n;

    let prior = bayesian_posterior(&initial, &SampleData::new(vec![], 2)?)?;
    if watch_branch >= prior.masses.len() {
        return Err(Error::InvalidParameter(format!(
            "no branch {watch_branch} to watch"
        )));
    }
    let prior_bet = prior.predictive().prob(1);
    let free = argmax_with_incumbent(&[prior_bet, x], None);
    let prior_value = [prior_bet, x][free];
    let truth_next = truth.marginal_at(n + 1).prob(1);
    let pay = |a: usize| if a == 0 { truth_next } else { x };

    let records = replicate(cfg.reps, |rep| {
        let data = sample_with(truth, n, &mut rep_rng(cfg.seed, 0, rep));
        let post = bayesian_posterior(&initial, &data)?;
        let driven = argmax_with_incumbent(&[post.predictive().prob(1), x], Some(free));
        Ok(Record {
            rep,
            phi: Some(share_of_ones(&data)),
            data_free_act: Some(free),
            data_driven_act: Some(driven),
            payoff_data_free: Some(pay(free)),
            payoff_data_driven: Some(pay(driven)),
            certainty_equivalent: Some(prior_value),
            metric: Some(post.masses[watch_branch]),
            ..Default::default()
        })
    })?;
    let mut values = BTreeMap::from([("prior_expected_payoff_bet".to_string(), prior_bet)]);
    for (i, m) in prior.masses.iter().enumerate() {
        values.insert(format!("prior_mass_branch_{i}"), *m);
    }
    Ok(finish(cfg, records, values))
}
