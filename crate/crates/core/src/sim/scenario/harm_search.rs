use std::collections::BTreeMap;

use rand::RngExt;

use crate::decision::{
    future_hull, meu_choice, Act, DecisionProblem, MarginalHull, DEFAULT_HULL_CAP, PAYOFF_TOL,
};
use crate::dgp::IndependentDgp;
use crate::error::{Error, Result};
use crate::sim::config::ExperimentConfig;
use crate::sim::report::{ExperimentReport, Record};
use crate::sim::scenario::{finish, flag, rep_rng};

struct Witness {
    problem: DecisionProblem,
    free: usize,
    driven: usize,
    w_free: f64,
    w_driven: f64,
    tried: usize,
}

/// Random two-act problems until the data-driven choice earns less than the
/// data-free one under the truth.
fn search(
    h0: &MarginalHull,
    h1: &MarginalHull,
    truth: &IndependentDgp,
    budget: usize,
    seed: u64,
    group: usize,
) -> Result<Option<Witness>> {
    let d = h0.d();
    let next = truth.joint_future(0, 1);
    let rng = &mut rep_rng(seed, group, 0);
    for tried in 1..=budget {
        let acts = (0..2)
            .map(|_| Act::one_shot((0..d).map(|_| rng.random::<f64>()).collect()))
            .collect::<Result<Vec<_>>>()?;
        let problem = DecisionProblem::new(acts, 0)?;
        let free = meu_choice(&problem, h0, None)?;
        let driven = meu_choice(&problem, h1, Some(free))?;
        let w_free = problem.act(free).expect(&next);
        let w_driven = problem.act(driven).expect(&next);
        if w_driven < w_free - PAYOFF_TOL {
            return Ok(Some(Witness {
                problem,
                free,
                driven,
                w_free,
                w_driven,
                tried,
            }));
        }
    }
    Ok(None)
}

/// Group 0 is the configured update, then one group per mixture weight (the
/// truth mixed into the initial hull), then the unchanged initial hull.
/// `metric` is 1 when a witness was found; a witness found in group 0 has its
/// acts and payoffs in the record and `values`. Missing the group 0 witness is
/// an error.
pub fn run_harm_search(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let sec = cfg
        .harm_search
        .as_ref()
        .ok_or_else(|| Error::InvalidParameter("missing harm_search section".into()))?;
    let truth = cfg
        .truth
        .as_ref()
        .ok_or_else(|| Error::InvalidParameter("missing truth".into()))?;
    let h0 = future_hull(&sec.initial, 0, 1)?;
    let star = truth.joint_future(0, 1);
    let mut hulls = vec![future_hull(&sec.updated, 0, 1)?];
    for &a in &sec.mixture_alphas {
        let points = h0
            .points(DEFAULT_HULL_CAP)?
            .iter()
            .map(|q| {
                q.iter()
                    .zip(&star)
                    .map(|(x, s)| a * s + (1.0 - a) * x)
                    .collect()
            })
            .collect();
        hulls.push(MarginalHull::Points {
            d: h0.d(),
            horizon: 1,
            points,
        });
    }
    hulls.push(h0.clone());

    let mut records = Vec::new();
    let mut values = BTreeMap::new();
    for (g, h1) in hulls.iter().enumerate() {
        let found = search(&h0, h1, truth, sec.budget, cfg.seed, g)?;
        let mut rec = Record {
            rep: 0,
            group: g,
            metric: Some(flag(found.is_some())),
            ..Default::default()
        };
        if let Some(w) = &found {
            rec.data_free_act = Some(w.free);
            rec.data_driven_act = Some(w.driven);
            rec.payoff_data_free = Some(w.w_free);
            rec.payoff_data_driven = Some(w.w_driven);
        }
        if g == 0 {
            let w = found.ok_or(Error::WitnessNotFound(sec.budget))?;
            values.insert("tried".to_string(), w.tried as f64);
            for (i, act) in w.problem.acts().iter().enumerate() {
                for (j, v) in act.payoffs().iter().enumerate() {
                    values.insert(format!("act{i}_outcome{j}"), *v);
                }
            }
        }
        records.push(rec);
    }
    Ok(finish(cfg, records, values))
}
