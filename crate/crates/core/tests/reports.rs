//! Report aggregates agree with a recomputation from the CSV rows, and the JSON
//! form carries the same records and statistics.

use std::collections::BTreeMap;

use robust_update::sim::{run, ExperimentConfig, ExperimentReport, CSV_HEADER};

const TOL: f64 = 1e-12;

fn shipped_reports() -> Vec<(String, ExperimentReport)> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/configs");
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let mut cfg = ExperimentConfig::from_path(p).unwrap();
            cfg.reps = cfg.reps.min(40);
            if let Some(s) = cfg.dominance.as_mut() {
                s.instances = 5;
                s.problems = 200;
                s.mixture_problems = 100;
            }
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                run(&cfg).unwrap(),
            )
        })
        .collect()
}

type Row = BTreeMap<&'static str, f64>;

fn parse_csv(csv: &str) -> Vec<Row> {
    let mut lines = csv.lines();
    let cols: Vec<&'static str> = CSV_HEADER.split(',').collect();
    assert_eq!(lines.next(), Some(CSV_HEADER));
    lines
        .map(|l| {
            let cells: Vec<&str> = l.split(',').collect();
            assert_eq!(cells.len(), cols.len(), "{l}");
            cols.iter()
                .zip(cells)
                .filter(|(_, c)| !c.is_empty())
                .map(|(k, c)| {
                    let v = match c {
                        "true" => 1.0,
                        "false" => 0.0,
                        _ => c.parse().unwrap(),
                    };
                    (*k, v)
                })
                .collect()
        })
        .collect()
}

fn mean_of(rows: &[&Row], f: impl Fn(&Row) -> Option<f64>) -> Option<f64> {
    let xs: Vec<f64> = rows.iter().filter_map(|r| f(r)).collect();
    (!xs.is_empty()).then(|| xs.iter().sum::<f64>() / xs.len() as f64)
}

fn recompute(rows: &[&Row]) -> BTreeMap<&'static str, f64> {
    let mut out = BTreeMap::new();
    out.insert("reps", rows.len() as f64);
    let pay = |r: &Row| Some((*r.get("payoff_data_free")?, *r.get("payoff_data_driven")?));
    let mut put = |k, v: Option<f64>| {
        if let Some(v) = v {
            out.insert(k, v);
        }
    };
    put(
        "retained_truth_frequency",
        mean_of(rows, |r| r.get("retained_truth").copied()),
    );
    put(
        "driven_is_free_frequency",
        mean_of(rows, |r| {
            Some(f64::from(
                r.get("data_free_act")? == r.get("data_driven_act")?,
            ))
        }),
    );
    put(
        "driven_worse_frequency",
        mean_of(rows, |r| pay(r).map(|(f, d)| f64::from(d < f - TOL))),
    );
    put(
        "driven_better_frequency",
        mean_of(rows, |r| pay(r).map(|(f, d)| f64::from(d > f + TOL))),
    );
    for k in [
        "payoff_data_free",
        "payoff_data_driven",
        "certainty_equivalent",
        "phi",
        "metric",
    ] {
        let key: &'static str = Box::leak(format!("mean_{k}").into_boxed_str());
        put(key, mean_of(rows, |r| r.get(k).copied()));
    }
    let metrics: Vec<f64> = rows
        .iter()
        .filter_map(|r| r.get("metric").copied())
        .collect();
    if !metrics.is_empty() {
        put(
            "min_metric",
            Some(metrics.iter().copied().fold(f64::INFINITY, f64::min)),
        );
        put(
            "max_metric",
            Some(metrics.iter().copied().fold(f64::NEG_INFINITY, f64::max)),
        );
    }
    out
}

fn agree(name: &str, want: &BTreeMap<&'static str, f64>, got: &BTreeMap<String, f64>) {
    for (k, v) in want {
        let g = got.get(*k).unwrap_or_else(|| panic!("{name}: {k} missing"));
        // CSV cells are shortest round-trip decimals, so sums can differ in the last ulp.
        assert!(
            (g - v).abs() <= 1e-12 * v.abs().max(1.0),
            "{name}: {k} = {g}, recomputed {v}"
        );
    }
    for k in got
        .keys()
        .filter(|k| !k.ends_with("_se") && !k.starts_with("driven_not_worse"))
    {
        assert!(
            want.contains_key(k.as_str()),
            "{name}: unexpected aggregate {k}"
        );
    }
}

#[test]
fn aggregates_match_the_rows() {
    for (name, rep) in shipped_reports() {
        let rows = parse_csv(&rep.to_csv());
        assert_eq!(rows.len(), rep.records.len(), "{name}");
        let all: Vec<&Row> = rows.iter().collect();
        agree(&name, &recompute(&all), &rep.aggregates);
        for (g, stats) in rep.groups.iter().enumerate() {
            let mine: Vec<&Row> = rows.iter().filter(|r| r["group"] == g as f64).collect();
            agree(&format!("{name} group {g}"), &recompute(&mine), stats);
        }
        if let (Some(w), Some(nw)) = (
            rep.aggregates.get("driven_worse_frequency"),
            rep.aggregates.get("driven_not_worse_frequency"),
        ) {
            assert!((w + nw - 1.0).abs() < TOL, "{name}");
        }
    }
}

#[test]
fn json_carries_the_same_report() {
    for (name, rep) in shipped_reports() {
        let v: serde_json::Value = serde_json::from_str(&rep.to_json()).unwrap();
        assert_eq!(
            v["records"].as_array().unwrap().len(),
            rep.records.len(),
            "{name}"
        );
        assert_eq!(v["reps"].as_u64().unwrap() as usize, rep.reps, "{name}");
        for (k, x) in &rep.aggregates {
            assert_eq!(v["aggregates"][k].as_f64(), Some(*x), "{name}: {k}");
        }
        assert_eq!(
            v["checks"].as_array().unwrap().len(),
            rep.checks.len(),
            "{name}"
        );
        let rows = v["records"].as_array().unwrap();
        for (r, j) in rep.records.iter().zip(rows) {
            assert_eq!(j["rep"].as_u64().unwrap() as usize, r.rep);
            assert_eq!(j["metric"].as_f64(), r.metric);
        }
    }
}
