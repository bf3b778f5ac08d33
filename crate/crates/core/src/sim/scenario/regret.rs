use std::collections::BTreeMap;

use crate::decision::{
    future_hull, max_regrets, minimax_regret_choice, objective_payoff, Act, DecisionProblem,
};
use crate::dgp::{BoxFamily, DgpFamily, IndependentDgp};
use crate::error::Result;
use crate::sim::config::ExperimentConfig;
use crate::sim::report::{ExperimentReport, Record};
use crate::sim::scenario::finish;

/// Minimax-regret choices between a bet on outcome 1 (act 0) and a constant
/// (act 1), before and after the update. One record per listed truth; `phi`
/// holds the truth's probability of outcome 1.
pub fn run_regret_example(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let sec = cfg.regret.clone().unwrap_or_default();
    let initial = DgpFamily::Box(BoxFamily::bernoulli(sec.initial[0], sec.initial[1])?);
    let updated = DgpFamily::Box(BoxFamily::bernoulli(sec.updated[0], sec.updated[1])?);
    let problem = DecisionProblem::new(
        vec![Act::bet_on(2, 1)?, Act::constant(2, 1, sec.constant)?],
        0,
    )?;
    let h0 = future_hull(&initial, 0, 1)?;
    let h1 = future_hull(&updated, 0, 1)?;
    let r0 = max_regrets(&problem, &h0)?;
    let r1 = max_regrets(&problem, &h1)?;
    let free = minimax_regret_choice(&problem, &h0)?;
    let driven = minimax_regret_choice(&problem, &h1)?;

    let mut records = Vec::new();
    for (rep, &p) in sec.pstars.iter().enumerate() {
        let truth = IndependentDgp::bernoulli_iid(p)?;
        records.push(Record {
            rep,
            phi: Some(p),
            retained_truth: Some(updated.contains(&truth)?),
            data_free_act: Some(free),
            data_driven_act: Some(driven),
            payoff_data_free: Some(objective_payoff(problem.act(free), &truth, 0)?),
            payoff_data_driven: Some(objective_payoff(problem.act(driven), &truth, 0)?),
            ..Default::default()
        });
    }
    let values = BTreeMap::from([
        ("regret_initial_bet".to_string(), r0[0]),
        ("regret_initial_constant".to_string(), r0[1]),
        ("regret_updated_bet".to_string(), r1[0]),
        ("regret_updated_constant".to_string(), r1[1]),
    ]);
    Ok(finish(cfg, records, values))
}
