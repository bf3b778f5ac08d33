//! One driver per scenario. Every replication draws from its own stream of
//! the master seed, so results do not depend on thread count or order.

mod bayes;
mod bernoulli;
mod coverage;
mod dominance;
mod gaussian;
mod harm_search;
mod illustrative;
mod regret;

use std::collections::BTreeMap;

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::dgp::stream_rng;
use crate::error::Result;
use crate::sim::config::{ExperimentConfig, Scenario};
use crate::sim::report::{aggregate, by_group, evaluate_checks, ExperimentReport, Record};

pub use bayes::{run_bayes_counterexample, two_box_family};
pub use bernoulli::run_bernoulli_model;
pub use coverage::run_coverage;
pub use dominance::run_dominance;
pub use gaussian::run_gaussian_model;
pub use harm_search::run_harm_search;
pub use illustrative::{illustrative_family, illustrative_problem, run_illustrative};
pub use regret::run_regret_example;

/// Run whatever scenario the config names.
pub fn run(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    match cfg.scenario {
        Scenario::Illustrative => run_illustrative(cfg),
        Scenario::Coverage => run_coverage(cfg),
        Scenario::Dominance => run_dominance(cfg),
        Scenario::BayesCounterexample => run_bayes_counterexample(cfg),
        Scenario::RegretExample => run_regret_example(cfg),
        Scenario::BernoulliModel => run_bernoulli_model(cfg),
        Scenario::GaussianModel => run_gaussian_model(cfg),
        Scenario::HarmSearch => run_harm_search(cfg),
    }
}

/// Stream for replication `rep` of record group `group`.
pub(crate) fn rep_rng(seed: u64, group: usize, rep: usize) -> ChaCha8Rng {
    stream_rng(seed, ((group as u64) << 32) | rep as u64)
}

/// Run `f` for every replication index in parallel; results come back in index order.
pub(crate) fn replicate<T: Send>(
    reps: usize,
    f: impl Fn(usize) -> Result<T> + Sync + Send,
) -> Result<Vec<T>> {
    (0..reps).into_par_iter().map(f).collect()
}

pub(crate) fn finish(
    cfg: &ExperimentConfig,
    records: Vec<Record>,
    values: BTreeMap<String, f64>,
) -> ExperimentReport {
    finish_with_notes(cfg, records, values, Vec::new())
}

pub(crate) fn finish_with_notes(
    cfg: &ExperimentConfig,
    records: Vec<Record>,
    values: BTreeMap<String, f64>,
    notes: Vec<String>,
) -> ExperimentReport {
    let aggregates = aggregate(&records);
    let groups = by_group(&records).iter().map(|g| aggregate(g)).collect();
    let checks = evaluate_checks(&cfg.checks, &records, &values);
    ExperimentReport {
        scenario: cfg.scenario,
        rule: cfg.update.rule,
        n: cfg.n,
        reps: cfg.reps,
        seed: cfg.seed,
        records,
        aggregates,
        groups,
        values,
        checks,
        notes,
    }
}

pub(crate) fn flag(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

/// Share of experiments with outcome 1.
pub(crate) fn share_of_ones(data: &crate::dgp::SampleData) -> f64 {
    data.outcomes().iter().filter(|&&o| o == 1).count() as f64 / data.len() as f64
}
