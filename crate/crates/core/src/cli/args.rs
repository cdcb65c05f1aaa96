use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use super::commands::{ClassifyOptions, LiftOptions, PeriodOptions, ShiftOptions};
use super::CliError;

#[derive(Debug, Parser)]
#[command(name = "centerkit", version, about = "Planar fields with a center: periods, polar lifts, shift functions, radial jets")]
pub struct Cli {
    /// Seed for sample generation.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Write a JSON run report here.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Linear part, spectrum, admissible-jet case and (optionally) period verdict.
    Classify(ClassifyArgs),
    /// Periods along a ray.
    Period(PeriodArgs),
    /// Polar lift on a grid.
    Lift(LiftArgs),
    /// Shift function of an orbit-preserving map.
    Shift(ShiftArgs),
    /// Radialization of a Taylor table.
    Jets(JetsArgs),
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// Field spec: JSON file or inline JSON.
    pub field: String,
    /// Also sample periods towards the origin and report the verdict.
    #[arg(long)]
    pub period_scan: bool,
    #[arg(long, default_value_t = 0.3)]
    pub ray: f64,
    /// Comma-separated decreasing radii.
    #[arg(long)]
    pub radii: Option<String>,
}

#[derive(Debug, Args)]
pub struct PeriodArgs {
    pub field: String,
    #[arg(long, default_value_t = 0.3)]
    pub ray: f64,
    #[arg(long)]
    pub radii: Option<String>,
    /// CSV output path.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Cross-check against the period integral of the polar lift.
    #[arg(long)]
    pub integral: bool,
}

#[derive(Debug, Args)]
pub struct LiftArgs {
    pub field: String,
    /// `NPHI:NRHO`; angles 2πj/NPHI, radii i/NRHO for i = 0..=NRHO.
    #[arg(long, default_value = "32:8")]
    pub grid: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ShiftArgs {
    pub field: String,
    /// `flow-by:<t>`, `rotation-by:<angle>`, `translation:<dx>,<dy>`, inline JSON or a JSON file.
    pub map: String,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct JetsArgs {
    /// Taylor table JSON file.
    pub table: PathBuf,
}

pub(crate) fn parse_radii(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Input(format!("bad radius {t:?}")))
        })
        .collect()
}

impl From<ClassifyArgs> for ClassifyOptions {
    fn from(a: ClassifyArgs) -> Self {
        ClassifyOptions { field: a.field, period_scan: a.period_scan, ray: a.ray, radii: a.radii }
    }
}

impl TryFrom<PeriodArgs> for PeriodOptions {
    type Error = CliError;
    fn try_from(a: PeriodArgs) -> Result<Self, CliError> {
        Ok(PeriodOptions {
            field: a.field,
            ray: a.ray,
            radii: a.radii.as_deref().map(parse_radii).transpose()?,
            out: a.out,
            integral: a.integral,
        })
    }
}

impl TryFrom<LiftArgs> for LiftOptions {
    type Error = CliError;
    fn try_from(a: LiftArgs) -> Result<Self, CliError> {
        let (p, r) = a
            .grid
            .split_once(':')
            .ok_or_else(|| CliError::Input("grid must be NPHI:NRHO".into()))?;
        let parse = |s: &str| {
            s.trim()
                .parse::<usize>()
                .ok()
                .filter(|n| *n > 0)
                .ok_or_else(|| CliError::Input(format!("bad grid size {s:?}")))
        };
        Ok(LiftOptions { field: a.field, n_phi: parse(p)?, n_rho: parse(r)?, out: a.out })
    }
}

impl ShiftArgs {
    pub(crate) fn into_options(self, seed: u64) -> ShiftOptions {
        ShiftOptions { field: self.field, map: self.map, samples: self.samples, seed, out: self.out }
    }
}
