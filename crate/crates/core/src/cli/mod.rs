//! The `centerkit` command line: `classify`, `period`, `lift`, `shift`, `jets`.

mod args;
mod commands;
mod maps;

use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::Serialize;

pub use args::{Cli, Command};
pub use commands::{cmd_classify, cmd_jets, cmd_lift, cmd_period, cmd_shift, ClassifyOptions, LiftOptions, PeriodOptions, ShiftOptions};
pub use maps::{AlphaSpec, MapSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NEGATIVE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

/// Report tolerance, overridable through `CENTERKIT_TOL`.
pub const DEFAULT_REPORT_TOL: f64 = 1e-9;

pub fn report_tol() -> f64 {
    std::env::var("CENTERKIT_TOL")
        .ok()
        .and_then(|s| s.trim().parse::<f64>().ok())
        .filter(|t| *t > 0.0 && t.is_finite())
        .unwrap_or(DEFAULT_REPORT_TOL)
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

/// What a command did: resolved inputs, files written, named verdicts and
/// the exit code.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: serde_json::Value,
    pub outputs: Vec<PathBuf>,
    pub verdicts: BTreeMap<String, serde_json::Value>,
    pub wall_time: f64,
    pub exit_code: i32,
    /// Human-readable lines; printed to stdout, or to stderr when `data`
    /// occupies stdout.
    #[serde(skip)]
    pub lines: Vec<String>,
    /// Tabular output destined for stdout when no output file was given.
    #[serde(skip)]
    pub data: Option<String>,
    /// Warnings printed to stderr.
    pub warnings: Vec<String>,
}

impl RunReport {
    pub(crate) fn new(command: &str, inputs: serde_json::Value) -> Self {
        Self {
            command: command.into(),
            inputs,
            outputs: Vec::new(),
            verdicts: BTreeMap::new(),
            wall_time: 0.0,
            exit_code: EXIT_OK,
            lines: Vec::new(),
            data: None,
            warnings: Vec::new(),
        }
    }

    pub(crate) fn verdict(&mut self, key: &str, value: impl Serialize) {
        self.verdicts
            .insert(key.into(), serde_json::to_value(value).expect("verdict serializes"));
    }

    pub(crate) fn say(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }

    pub(crate) fn write(&mut self, path: &PathBuf, contents: &str) -> Result<(), CliError> {
        std::fs::write(path, contents)?;
        self.outputs.push(path.clone());
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Runs a parsed command line, printing to stdout/stderr; returns the exit
/// code.
pub fn run(cli: Cli) -> i32 {
    let start = std::time::Instant::now();
    let report_path = cli.report.clone();
    let result = match cli.command {
        Command::Classify(a) => cmd_classify(&a.into()),
        Command::Period(a) => a.try_into().and_then(|o| cmd_period(&o)),
        Command::Lift(a) => a.try_into().and_then(|o| cmd_lift(&o)),
        Command::Shift(a) => cmd_shift(&a.into_options(cli.seed)),
        Command::Jets(a) => cmd_jets(&a.table),
    };
    match result {
        Ok(mut report) => {
            report.wall_time = start.elapsed().as_secs_f64();
            match &report.data {
                Some(data) => {
                    print!("{data}");
                    for line in &report.lines {
                        eprintln!("{line}");
                    }
                }
                None => {
                    for line in &report.lines {
                        println!("{line}");
                    }
                }
            }
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            if let Some(path) = report_path {
                if let Err(e) = std::fs::write(&path, report.to_json()) {
                    eprintln!("error: {}: {e}", path.display());
                    return EXIT_INPUT;
                }
            }
            report.exit_code
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    }
}
