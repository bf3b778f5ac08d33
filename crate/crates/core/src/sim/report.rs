use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::decision::PAYOFF_TOL;
use crate::sim::config::{CheckSpec, Scenario};
use crate::update::Rule;

/// CSV header; the JSON records use the same field names.
pub const CSV_HEADER: &str = "rep,group,phi,retained_truth,data_free_act,data_driven_act,payoff_data_free,payoff_data_driven,certainty_equivalent,metric";

/// Aggregate statistics computed from the records of a group.
pub const AGGREGATE_KEYS: [&str; 17] = [
    "reps",
    "retained_truth_frequency",
    "retained_truth_se",
    "driven_is_free_frequency",
    "driven_worse_frequency",
    "driven_worse_se",
    "driven_not_worse_frequency",
    "driven_not_worse_se",
    "driven_better_frequency",
    "driven_better_se",
    "mean_payoff_data_free",
    "mean_payoff_data_driven",
    "mean_certainty_equivalent",
    "mean_phi",
    "mean_metric",
    "min_metric",
    "max_metric",
];

/// Slack on exact-valued check bounds.
pub const CHECK_TOL: f64 = 1e-9;

pub(crate) fn is_known_stat(stat: &str) -> bool {
    AGGREGATE_KEYS.contains(&stat)
        || stat == "metric_at_least"
        || stat.strip_prefix("values.").is_some_and(|k| !k.is_empty())
}

/// One replication. Fields a scenario does not produce stay `None` (an empty
/// CSV cell, `null` in JSON).
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Record {
    pub rep: usize,
    pub group: usize,
    pub phi: Option<f64>,
    pub retained_truth: Option<bool>,
    pub data_free_act: Option<usize>,
    pub data_driven_act: Option<usize>,
    pub payoff_data_free: Option<f64>,
    pub payoff_data_driven: Option<f64>,
    pub certainty_equivalent: Option<f64>,
    pub metric: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub stat: String,
    pub group: Option<usize>,
    pub observed: Option<f64>,
    pub min: Option<f64>,
    pub max: Option<f64>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub scenario: Scenario,
    pub rule: Rule,
    pub n: usize,
    pub reps: usize,
    pub seed: u64,
    pub records: Vec<Record>,
    /// Over all records.
    pub aggregates: BTreeMap<String, f64>,
    /// Per group, in group order.
    pub groups: Vec<BTreeMap<String, f64>>,
    /// Scenario-level quantities that are not per-replication.
    pub values: BTreeMap<String, f64>,
    pub checks: Vec<CheckOutcome>,
    /// Free-form diagnostics, such as counterexample dumps.
    pub notes: Vec<String>,
}

fn binomial_se(p: f64, n: usize) -> f64 {
    (p * (1.0 - p) / n as f64).sqrt()
}

fn frequency(flags: impl Iterator<Item = bool>) -> Option<(f64, usize)> {
    let (mut hits, mut n) = (0usize, 0usize);
    for f in flags {
        n += 1;
        hits += f as usize;
    }
    (n > 0).then(|| (hits as f64 / n as f64, n))
}

fn mean(xs: impl Iterator<Item = f64>) -> Option<f64> {
    let (mut s, mut n) = (0.0, 0usize);
    for x in xs {
        s += x;
        n += 1;
    }
    (n > 0).then(|| s / n as f64)
}

/// Aggregates of a set of records; keys without data are omitted.
pub fn aggregate(records: &[Record]) -> BTreeMap<String, f64> {
    let mut out = BTreeMap::new();
    out.insert("reps".to_string(), records.len() as f64);
    let put_freq =
        |out: &mut BTreeMap<String, f64>, key: &str, se: bool, f: Option<(f64, usize)>| {
            if let Some((p, n)) = f {
                out.insert(format!("{key}_frequency"), p);
                if se {
                    out.insert(format!("{key}_se"), binomial_se(p, n));
                }
            }
        };
    put_freq(
        &mut out,
        "retained_truth",
        true,
        frequency(records.iter().filter_map(|r| r.retained_truth)),
    );
    let acts = || {
        records
            .iter()
            .filter_map(|r| Some((r.data_free_act?, r.data_driven_act?)))
    };
    put_freq(
        &mut out,
        "driven_is_free",
        false,
        frequency(acts().map(|(a, b)| a == b)),
    );
    let pays = || {
        records
            .iter()
            .filter_map(|r| Some((r.payoff_data_free?, r.payoff_data_driven?)))
    };
    put_freq(
        &mut out,
        "driven_worse",
        true,
        frequency(pays().map(|(f, d)| d < f - PAYOFF_TOL)),
    );
    put_freq(
        &mut out,
        "driven_not_worse",
        true,
        frequency(pays().map(|(f, d)| d >= f - PAYOFF_TOL)),
    );
    put_freq(
        &mut out,
        "driven_better",
        true,
        frequency(pays().map(|(f, d)| d > f + PAYOFF_TOL)),
    );
    let means: [(&str, fn(&Record) -> Option<f64>); 5] = [
        ("mean_payoff_data_free", |r| r.payoff_data_free),
        ("mean_payoff_data_driven", |r| r.payoff_data_driven),
        ("mean_certainty_equivalent", |r| r.certainty_equivalent),
        ("mean_phi", |r| r.phi),
        ("mean_metric", |r| r.metric),
    ];
    for (key, get) in means {
        if let Some(m) = mean(records.iter().filter_map(get)) {
            out.insert(key.to_string(), m);
        }
    }
    let metrics = || records.iter().filter_map(|r| r.metric);
    if metrics().next().is_some() {
        out.insert("min_metric".into(), metrics().fold(f64::INFINITY, f64::min));
        out.insert(
            "max_metric".into(),
            metrics().fold(f64::NEG_INFINITY, f64::max),
        );
    }
    out
}

/// Records split by group index, in group order.
pub fn by_group(records: &[Record]) -> Vec<Vec<Record>> {
    let groups = records.iter().map(|r| r.group + 1).max().unwrap_or(0);
    let mut out = vec![Vec::new(); groups];
    for r in records {
        out[r.group].push(r.clone());
    }
    out
}

fn observe(
    spec: &CheckSpec,
    records: &[Record],
    agg: &BTreeMap<String, f64>,
) -> (Option<f64>, f64) {
    if spec.stat == "metric_at_least" {
        let level = spec.level.unwrap_or(0.0);
        return match frequency(records.iter().filter_map(|r| r.metric).map(|m| m >= level)) {
            Some((p, n)) => (Some(p), binomial_se(p, n)),
            None => (None, 0.0),
        };
    }
    let obs = agg.get(&spec.stat).copied();
    let se = spec
        .stat
        .strip_suffix("_frequency")
        .and_then(|k| agg.get(&format!("{k}_se")))
        .copied()
        .unwrap_or(0.0);
    (obs, se)
}

fn judge(spec: &CheckSpec, group: Option<usize>, observed: Option<f64>, se: f64) -> CheckOutcome {
    let slack = spec.slack_se * se + CHECK_TOL;
    let passed = observed.is_some_and(|x| {
        spec.min.is_none_or(|m| x >= m - slack) && spec.max.is_none_or(|m| x <= m + slack)
    });
    CheckOutcome {
        name: spec.name.clone(),
        stat: spec.stat.clone(),
        group,
        observed,
        min: spec.min,
        max: spec.max,
        passed,
    }
}

/// Evaluate the configured checks against records and scenario values.
pub fn evaluate_checks(
    specs: &[CheckSpec],
    records: &[Record],
    values: &BTreeMap<String, f64>,
) -> Vec<CheckOutcome> {
    let groups = by_group(records);
    let mut out = Vec::new();
    for spec in specs {
        if let Some(key) = spec.stat.strip_prefix("values.") {
            out.push(judge(spec, None, values.get(key).copied(), 0.0));
            continue;
        }
        let picked: Vec<usize> = match spec.group {
            Some(g) => vec![g],
            None => (0..groups.len()).collect(),
        };
        for g in picked {
            let recs = groups.get(g).map(Vec::as_slice).unwrap_or(&[]);
            let (obs, se) = observe(spec, recs, &aggregate(recs));
            out.push(judge(spec, Some(g), obs, se));
        }
    }
    out
}

impl ExperimentReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_csv(&self) -> String {
        fn cell<T: ToString>(v: &Option<T>) -> String {
            v.as_ref().map(T::to_string).unwrap_or_default()
        }
        let mut s = String::with_capacity(64 * (self.records.len() + 1));
        s.push_str(CSV_HEADER);
        s.push('\n');
        for r in &self.records {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{},{},{}",
                r.rep,
                r.group,
                cell(&r.phi),
                cell(&r.retained_truth),
                cell(&r.data_free_act),
                cell(&r.data_driven_act),
                cell(&r.payoff_data_free),
                cell(&r.payoff_data_driven),
                cell(&r.certainty_equivalent),
                cell(&r.metric),
            );
        }
        s
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One line per check, for terminals.
    pub fn check_lines(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| {
                let g = c.group.map(|g| format!(" [group {g}]")).unwrap_or_default();
                let obs = c
                    .observed
                    .map(|x| format!("{x:.6}"))
                    .unwrap_or_else(|| "missing".into());
                let bound = match (c.min, c.max) {
                    (Some(a), Some(b)) => format!("in [{a}, {b}]"),
                    (Some(a), None) => format!(">= {a}"),
                    (None, Some(b)) => format!("<= {b}"),
                    (None, None) => String::new(),
                };
                format!(
                    "{} {}{g}: {} = {obs} (want {bound})",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.stat
                )
            })
            .collect()
    }
}
