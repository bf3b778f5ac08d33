//! Run a Monte Carlo experiment from an inline configuration and print the
//! aggregates and check results.

use robust_update::sim::{run, ExperimentConfig};

const CONFIG: &str = r#"{
  "scenario": "illustrative",
  "update": {"rule": "atu", "epsilon": 0.05},
  "truths": [
    {"tail": {"iid": [0.6666666666666667, 0.3333333333333333]}},
    {"tail": {"periodic": [[0.3, 0.7], [0.1, 0.9]]}}
  ],
  "n": 1000,
  "reps": 200,
  "checks": [{"name": "truth kept", "stat": "retained_truth_frequency", "min": 0.99}]
}"#;

fn main() {
    let cfg = ExperimentConfig::from_json(CONFIG).unwrap_or_else(|e| panic!("{e}"));
    if let Err((field, msg)) = cfg.validate() {
        panic!("{field}: {msg}");
    }
    let report = run(&cfg).expect("experiment runs");
    for (g, stats) in report.groups.iter().enumerate() {
        println!(
            "truth {g}: kept {:.3}, data-driven act no worse {:.3}",
            stats["retained_truth_frequency"], stats["driven_not_worse_frequency"]
        );
    }
    for line in report.check_lines() {
        println!("{line}");
    }
}
