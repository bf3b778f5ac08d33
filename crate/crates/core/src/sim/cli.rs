use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::sim::config::{ExperimentConfig, Format, Scenario};
use crate::sim::{run, with_thread_cap};
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_ASSERTION: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "robust-update",
    version,
    about = "Run robust-updating experiments from JSON configs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the scenario a config describes and write its report.
    Run {
        config: PathBuf,
        /// Override the master seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Override the number of replications.
        #[arg(long)]
        reps: Option<usize>,
        /// Write the report here instead of the config's path (or stdout).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Parse and check a config without running it.
    Validate { config: PathBuf },
    /// Print the known scenarios.
    ListScenarios,
}

/// Entry point with injectable streams; returns the process exit code.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match cli.command {
        Command::ListScenarios => {
            for s in Scenario::ALL {
                let _ = writeln!(out, "{:<22} {}", s.name(), s.summary());
            }
            EXIT_OK
        }
        Command::Validate { config } => match ExperimentConfig::from_path(&config) {
            Ok(cfg) => {
                let _ = writeln!(out, "{}: ok ({})", config.display(), cfg.scenario.name());
                EXIT_OK
            }
            Err(e) => {
                let _ = writeln!(err, "{}: {e}", config.display());
                EXIT_CONFIG
            }
        },
        Command::Run {
            config,
            seed,
            reps,
            out: out_path,
            format,
        } => {
            let mut cfg = match ExperimentConfig::from_path(&config) {
                Ok(c) => c,
                Err(e) => {
                    let _ = writeln!(err, "{}: {e}", config.display());
                    return EXIT_CONFIG;
                }
            };
            if let Some(s) = seed {
                cfg.seed = s;
            }
            if let Some(r) = reps {
                cfg.reps = r;
            }
            if let Err((field, msg)) = cfg.validate() {
                let _ = writeln!(err, "`{field}`: {msg}");
                return EXIT_CONFIG;
            }
            let format = format.unwrap_or(cfg.output.format);
            let target = out_path.or_else(|| cfg.output.path.clone());
            let report = match with_thread_cap(|| run(&cfg)) {
                Ok(r) => r,
                Err(e @ Error::WitnessNotFound(_)) => {
                    let _ = writeln!(err, "{e}");
                    return EXIT_ASSERTION;
                }
                Err(e) => {
                    let _ = writeln!(err, "{e}");
                    return EXIT_CONFIG;
                }
            };
            let body = match format {
                Format::Csv => report.to_csv(),
                Format::Json => report.to_json(),
            };
            let written = match &target {
                Some(p) => std::fs::write(p, body.as_bytes())
                    .map_err(|e| format!("cannot write {}: {e}", p.display())),
                None => out.write_all(body.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "{e}");
                return EXIT_CONFIG;
            }
            for line in report.check_lines() {
                let _ = writeln!(err, "{line}");
            }
            for note in &report.notes {
                let _ = writeln!(err, "note: {note}");
            }
            if report.passed() {
                EXIT_OK
            } else {
                EXIT_ASSERTION
            }
        }
    }
}
