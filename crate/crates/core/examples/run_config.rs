//! Run a shipped configuration (default: the two-act witness search) and print
//! its summary values and notes.
//!
//! cargo run --example run_config -- configs/dominance.json

use robust_update::sim::{run, ExperimentConfig};

fn main() {
    let path = std::env::args().nth(1).unwrap_or_else(|| {
        concat!(env!("CARGO_MANIFEST_DIR"), "/configs/harm_search.json").to_string()
    });
    let cfg = ExperimentConfig::from_path(path.as_ref()).unwrap_or_else(|e| panic!("{path}: {e}"));
    let report = run(&cfg).expect("experiment runs");
    println!(
        "{} with rule {}: {} records",
        cfg.scenario.name(),
        report.rule.name(),
        report.records.len()
    );
    for (k, v) in &report.values {
        println!("  {k} = {v}");
    }
    for note in &report.notes {
        println!("  note: {note}");
    }
    for line in report.check_lines() {
        println!("{line}");
    }
}
