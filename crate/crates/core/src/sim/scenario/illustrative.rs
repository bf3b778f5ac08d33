use std::collections::BTreeMap;

use crate::decision::{
    accommodates, certainty_equivalent, data_driven_choice, data_free_choice, objective_payoff,
    Act, DecisionProblem, Verdict,
};
use crate::dgp::{sample_with, BoxFamily, DgpFamily, IndependentDgp};
use crate::error::Result;
use crate::sim::config::ExperimentConfig;
use crate::sim::report::{ExperimentReport, Record};
use crate::sim::scenario::{finish, flag, rep_rng, replicate, share_of_ones};
use crate::update::apply_rule;

/// `[0.6, 1]^inf` together with the i.i.d. process at 1/3.
pub fn illustrative_family() -> DgpFamily {
    DgpFamily::union(vec![
        DgpFamily::Box(BoxFamily::bernoulli(0.6, 1.0).expect("valid box")),
        DgpFamily::singleton(IndependentDgp::bernoulli_iid(1.0 / 3.0).expect("valid marginal")),
    ])
    .expect("branches share an outcome space")
}

/// Act 0 pays 1 on outcome 1 (the personalized pick); act 1 is the constant 1/2.
pub fn illustrative_problem(origin: usize) -> DecisionProblem {
    let acts = vec![
        Act::bet_on(2, 1).expect("binary"),
        Act::constant(2, 1, 0.5).expect("binary"),
    ];
    DecisionProblem::new(acts, origin).expect("acts agree")
}

pub fn run_illustrative(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let initial = cfg.initial.clone().unwrap_or_else(illustrative_family);
    let n = cfg.n;
    let problem = illustrative_problem(n);
    let free = data_free_choice(&problem, &initial)?;
    let ce = certainty_equivalent(&problem, &initial, n)?;
    let params = cfg.update.params();
    let mut records = Vec::new();
    for (g, truth) in cfg.truth_battery().iter().enumerate() {
        let payoff_free = objective_payoff(problem.act(free), truth, n)?;
        records.extend(replicate(cfg.reps, |rep| {
            let data = sample_with(truth, n, &mut rep_rng(cfg.seed, g, rep));
            let updated = apply_rule(cfg.update.rule, &initial, &data, &params)?;
            let driven = data_driven_choice(&problem, &updated, free)?;
            let verdict = accommodates(&updated, truth, n, 1)?;
            Ok(Record {
                rep,
                group: g,
                phi: Some(share_of_ones(&data)),
                retained_truth: Some(updated.contains(truth)?),
                data_free_act: Some(free),
                data_driven_act: Some(driven),
                payoff_data_free: Some(payoff_free),
                payoff_data_driven: Some(objective_payoff(problem.act(driven), truth, n)?),
                certainty_equivalent: Some(ce),
                metric: (verdict != Verdict::Unknown).then(|| flag(verdict.is_yes())),
            })
        })?);
    }
    Ok(finish(cfg, records, BTreeMap::new()))
}
