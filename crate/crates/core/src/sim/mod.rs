//! Experiment configs, Monte Carlo drivers, reports and the command line.

pub mod cli;
pub mod config;
pub mod report;
pub mod scenario;

pub use config::{CheckSpec, ConfigError, ExperimentConfig, Format, Scenario, DEFAULT_SEED};
pub use report::{aggregate, ExperimentReport, Record, CSV_HEADER};
pub use scenario::run;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "ROBUST_UPDATE_THREADS";

/// Run `f` on a pool capped by `ROBUST_UPDATE_THREADS` when it is set to a
/// positive integer, else on the global pool.
pub fn with_thread_cap<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    let cap = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0);
    match cap.and_then(|n| rayon::ThreadPoolBuilder::new().num_threads(n).build().ok()) {
        Some(pool) => pool.install(f),
        None => f(),
    }
}
