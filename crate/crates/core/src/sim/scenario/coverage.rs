use std::collections::BTreeMap;

use crate::dgp::{family_contains, sample_with, DgpFamily};
use crate::error::Result;
use crate::sim::config::ExperimentConfig;
use crate::sim::report::{ExperimentReport, Record};
use crate::sim::scenario::{finish, flag, rep_rng, replicate, share_of_ones};
use crate::update::{robust_iid_update, Rule, UpdateParams};

/// `retained_truth` follows the configured test (ellipsoid for `riid`, per-outcome
/// intervals for `bonferroni`); `metric` is 1 when the other test also keeps the truth.
pub fn run_coverage(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let main_bonf = matches!(cfg.update.rule, Rule::Bonferroni) || cfg.update.bonferroni;
    let main = UpdateParams {
        bonferroni: main_bonf,
        ..cfg.update.params()
    };
    let other = UpdateParams {
        bonferroni: !main_bonf,
        ..main
    };
    let mut records = Vec::new();
    for (g, truth) in cfg.truth_battery().iter().enumerate() {
        let initial = cfg
            .initial
            .clone()
            .unwrap_or_else(|| DgpFamily::singleton(truth.clone()));
        records.extend(replicate(cfg.reps, |rep| {
            let data = sample_with(truth, cfg.n, &mut rep_rng(cfg.seed, g, rep));
            let kept = family_contains(&robust_iid_update(&initial, &data, &main)?, truth)?;
            let kept_other = family_contains(&robust_iid_update(&initial, &data, &other)?, truth)?;
            Ok(Record {
                rep,
                group: g,
                phi: Some(share_of_ones(&data)),
                retained_truth: Some(kept),
                metric: Some(flag(kept_other)),
                ..Default::default()
            })
        })?);
    }
    Ok(finish(cfg, records, BTreeMap::new()))
}
