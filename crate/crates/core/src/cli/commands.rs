use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::maps::MapSpec;
use super::{report_tol, CliError, RunReport, EXIT_INCONCLUSIVE, EXIT_NEGATIVE, EXIT_OK};
use crate::fields::{linear_case, linearize, make_field, tangency_residual, FieldSpec, PlanarField, FD_STEP};
use crate::flow::{halving_radii, period_profile, FlowError, IntegratorConfig, Verdict};
use crate::jets::{radialize_series, Radialization, TaylorTable};
use crate::linalg::spectrum;
use crate::point::Point;
use crate::polar::{flatness_order_lifted, lift_field, lifted_grid_csv, probe_radii};
use crate::shift::{period_integral, recover_shift, ShiftError};

/// Radii used when none are given: `0.32·2^{−i}`, down to `0.01`.
pub fn default_radii() -> Vec<f64> {
    halving_radii(0.32, 6)
}

/// Time budget for period scans, generous enough for slowly rotating
/// degenerate centers.
pub const SCAN_MAX_TIME: f64 = 1e6;

fn load_field(arg: &str) -> Result<(FieldSpec, PlanarField), CliError> {
    let spec = if arg.trim_start().starts_with('{') {
        FieldSpec::from_json(arg)
    } else {
        FieldSpec::load(arg)
    }
    .map_err(|e| CliError::Input(e.to_string()))?;
    let field = make_field(&spec).map_err(|e| CliError::Input(e.to_string()))?;
    Ok((spec, field))
}

fn spec_value(spec: &FieldSpec) -> serde_json::Value {
    serde_json::to_value(spec).expect("spec serializes")
}

fn flow_input_error(e: FlowError) -> CliError {
    CliError::Input(e.to_string())
}

fn g(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Debug, Clone)]
pub struct ClassifyOptions {
    pub field: String,
    pub period_scan: bool,
    pub ray: f64,
    pub radii: Option<String>,
}

pub fn cmd_classify(opts: &ClassifyOptions) -> Result<RunReport, CliError> {
    let (spec, field) = load_field(&opts.field)?;
    let mut report = RunReport::new(
        "classify",
        json!({"field": spec_value(&spec), "period_scan": opts.period_scan, "ray": opts.ray}),
    );
    let tol = report_tol();
    let a = linearize(&field, FD_STEP);
    let rows = [[*a.get(0, 0), *a.get(0, 1)], [*a.get(1, 0), *a.get(1, 1)]];
    let eig = spectrum(&a);
    let case = linear_case(&a, tol);
    report.say(format!("field: {}", spec.name()));
    report.say(format!("linear part: {rows:?}"));
    report.say(format!(
        "spectrum: {}",
        eig.iter().map(|z| format!("{:.12}{:+.12}i", z.re, z.im)).collect::<Vec<_>>().join(", ")
    ));
    match case.index() {
        Some(i) => report.say(format!("case: {i} ({case:?})")),
        None => report.say("case: none (the origin cannot be a center)"),
    }
    report.verdict("linear_part", rows);
    report.verdict("spectrum", eig.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>());
    report.verdict("case", case.index());
    report.verdict("case_name", case);
    report.exit_code = if case.index().is_some() { EXIT_OK } else { EXIT_NEGATIVE };

    if opts.period_scan {
        let radii = match &opts.radii {
            Some(s) => super::args::parse_radii(s)?,
            None => default_radii(),
        };
        let cfg = IntegratorConfig::default().with_max_time(SCAN_MAX_TIME);
        let profile = period_profile(&field, opts.ray, &radii, &cfg).map_err(flow_input_error)?;
        let no_return = profile
            .samples
            .iter()
            .filter(|s| s.failure.as_deref().is_some_and(|f| f.starts_with("no return")))
            .count();
        for s in &profile.samples {
            match (s.theta, &s.failure) {
                (Some(t), _) => report.say(format!("  r = {:.6e}: theta = {}", s.radius, g(t))),
                (None, Some(f)) => report.say(format!("  r = {:.6e}: {f}", s.radius)),
                (None, None) => {}
            }
        }
        match profile.verdict {
            Verdict::Ptc { limit } => report.say(format!("verdict: PTC (limit {})", g(limit))),
            v => report.say(format!("verdict: {}", v.label())),
        }
        if no_return > 0 {
            report.say(format!("no return: {no_return} of {} radii", radii.len()));
        }
        report.verdict("period_verdict", profile.verdict);
        report.verdict("no_return", no_return);
        report.verdict("failures", profile.failures());
        report.exit_code = match profile.verdict {
            Verdict::Ptc { .. } => EXIT_OK,
            Verdict::Divergent => EXIT_NEGATIVE,
            Verdict::Inconclusive => EXIT_INCONCLUSIVE,
        };
    }
    Ok(report)
}

#[derive(Debug, Clone)]
pub struct PeriodOptions {
    pub field: String,
    pub ray: f64,
    pub radii: Option<Vec<f64>>,
    pub out: Option<PathBuf>,
    pub integral: bool,
}

pub fn cmd_period(opts: &PeriodOptions) -> Result<RunReport, CliError> {
    let (spec, field) = load_field(&opts.field)?;
    let radii = opts.radii.clone().unwrap_or_else(default_radii);
    let mut report = RunReport::new(
        "period",
        json!({"field": spec_value(&spec), "ray": opts.ray, "radii": radii, "integral": opts.integral}),
    );
    let cfg = IntegratorConfig::default().with_max_time(SCAN_MAX_TIME);
    let profile = period_profile(&field, opts.ray, &radii, &cfg).map_err(flow_input_error)?;

    let mut csv = String::from(if opts.integral {
        "radius,theta,converged,integral,discrepancy\n"
    } else {
        "radius,theta,converged\n"
    });
    let lift = lift_field(&field);
    let mut worst: f64 = 0.0;
    for s in &profile.samples {
        let theta = s.theta.map(g).unwrap_or_else(|| "NaN".into());
        let mut row = format!("{},{},{}", g(s.radius), theta, s.theta.is_some());
        if opts.integral {
            let value = period_integral(|phi, rho| lift.phi_rate(phi, rho) - 1.0, s.radius, opts.ray).ok();
            let gap = match (s.theta, value) {
                (Some(t), Some(v)) => Some((t - v).abs()),
                _ => None,
            };
            if let Some(d) = gap {
                worst = worst.max(d);
            }
            row += &format!(
                ",{},{}",
                value.map(g).unwrap_or_else(|| "NaN".into()),
                gap.map(g).unwrap_or_else(|| "NaN".into())
            );
        }
        csv += &row;
        csv.push('\n');
    }
    match &opts.out {
        Some(path) => report.write(path, &csv)?,
        None => report.data = Some(csv),
    }
    report.say(format!("verdict: {}", profile.verdict.label()));
    if opts.integral {
        report.say(format!("max discrepancy: {worst:.3e}"));
        report.verdict("max_discrepancy", worst);
    }
    report.verdict("period_verdict", profile.verdict);
    report.verdict("failures", profile.failures());
    Ok(report)
}

#[derive(Debug, Clone)]
pub struct LiftOptions {
    pub field: String,
    pub n_phi: usize,
    pub n_rho: usize,
    pub out: Option<PathBuf>,
}

/// Largest `k ≤ max` such that orders `1..=k` all pass.
fn flat_order(checks: &[crate::polar::FlatnessCheck]) -> u32 {
    checks.iter().take_while(|c| c.pass).map(|c| c.order).last().unwrap_or(0)
}

pub fn cmd_lift(opts: &LiftOptions) -> Result<RunReport, CliError> {
    let (spec, field) = load_field(&opts.field)?;
    let mut report = RunReport::new(
        "lift",
        json!({"field": spec_value(&spec), "n_phi": opts.n_phi, "n_rho": opts.n_rho}),
    );
    let lift = lift_field(&field);
    let phis: Vec<f64> = (0..opts.n_phi).map(|j| 2.0 * PI * j as f64 / opts.n_phi as f64).collect();
    let rhos: Vec<f64> = (0..=opts.n_rho).map(|i| i as f64 / opts.n_rho as f64).collect();
    let csv = lifted_grid_csv(&lift, &phis, &rhos);
    match &opts.out {
        Some(path) => report.write(path, &csv)?,
        None => report.data = Some(csv),
    }

    let tangency = tangency_residual(&field, 64);
    if tangency > report_tol() {
        report
            .warnings
            .push(format!("field is not tangent to the unit circle (max |<F(z), z>| = {tangency:.3e})"));
    }
    let c = lift.phi_rate(0.0, 0.0);
    let orders: Vec<u32> = (1..=6).collect();
    let phi_flat = flatness_order_lifted(|phi, rho| lift.phi_rate(phi, rho) - c, &orders, &probe_radii());
    let rho_flat = flatness_order_lifted(|phi, rho| lift.rho_rate(phi, rho), &orders, &probe_radii());
    report.say(format!("boundary angular rate: {}", g(c)));
    report.say(format!(
        "flatness at rho = 0: b_phi - c passes orders 1..={}, b_rho passes orders 1..={}",
        flat_order(&phi_flat),
        flat_order(&rho_flat)
    ));
    report.verdict("tangency_residual", tangency);
    report.verdict("boundary_residual", lift.boundary_residual());
    report.verdict("z_invariance_residual", lift.z_invariance_residual());
    report.verdict("boundary_rate", c);
    report.verdict("flat_order_phi", flat_order(&phi_flat));
    report.verdict("flat_order_rho", flat_order(&rho_flat));
    Ok(report)
}

#[derive(Debug, Clone)]
pub struct ShiftOptions {
    pub field: String,
    pub map: String,
    pub samples: usize,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

/// `n` uniform points in the disk of radius 0.95.
pub fn disk_samples(n: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let r = 0.95 * rng.gen::<f64>().sqrt();
            let a = rng.gen_range(0.0..2.0 * PI);
            Point::new(r * a.cos(), r * a.sin())
        })
        .collect()
}

fn shift_exit(e: &ShiftError) -> i32 {
    match e {
        ShiftError::Flow(_) | ShiftError::MapFailure(_) | ShiftError::SingularIntegrand { .. } => EXIT_INCONCLUSIVE,
        ShiftError::InvalidInput(_) => super::EXIT_INPUT,
        _ => EXIT_NEGATIVE,
    }
}

pub fn cmd_shift(opts: &ShiftOptions) -> Result<RunReport, CliError> {
    let (spec, field) = load_field(&opts.field)?;
    let map = MapSpec::parse(&opts.map)?;
    let mut report = RunReport::new(
        "shift",
        json!({"field": spec_value(&spec), "map": map, "samples": opts.samples, "seed": opts.seed}),
    );
    let cfg = IntegratorConfig::default();
    let h = map.build(&field, &cfg)?;
    let samples = disk_samples(opts.samples, opts.seed);
    let grid = match recover_shift(&field, &h, &samples, &cfg) {
        Ok(grid) => grid,
        Err(e) => {
            report.say(format!("shift recovery failed: {e}"));
            report.verdict("error", e.to_string());
            report.exit_code = shift_exit(&e);
            return Ok(report);
        }
    };
    if let Some(path) = &opts.out {
        report.write(path, &grid.to_csv())?;
    }
    let (lo, hi) = grid
        .sigma
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &s| (a.min(s), b.max(s)));
    report.say(format!("omega: {}", g(grid.omega)));
    report.say(format!("sigma range: [{}, {}]", g(lo), g(hi)));
    report.say(format!("residual: {:.3e}", grid.residual));
    report.verdict("omega", grid.omega);
    report.verdict("residual", grid.residual);
    report.verdict("sigma_min", lo);
    report.verdict("sigma_max", hi);
    report.verdict("period_limit", grid.period_limit);

    if let Some(alpha) = map.alpha() {
        let ns: Vec<i64> = grid
            .points
            .iter()
            .zip(&grid.sigma)
            .map(|(z, s)| ((alpha.eval(*z) - s) / grid.period_limit).round() as i64)
            .collect();
        if let Some(&n) = ns.first() {
            if ns.iter().all(|&m| m == n) {
                if n != 0 {
                    report.say(format!("kernel: alpha - sigma = {n}·theta"));
                }
                report.verdict("kernel_n", n);
            }
        }
    }
    report.exit_code = if grid.residual <= 1e-6 { EXIT_OK } else { EXIT_INCONCLUSIVE };
    Ok(report)
}

pub fn cmd_jets(path: &Path) -> Result<RunReport, CliError> {
    let table = TaylorTable::load(path).map_err(|e| CliError::Input(e.to_string()))?;
    let mut report = RunReport::new("jets", json!({"table": path, "max_degree": table.max_degree()}));
    match radialize_series(&table) {
        Radialization::Radial(a) => {
            let list: Vec<String> = a.iter().map(|c| c.to_string()).collect();
            report.say(format!("radial: a = ({})", list.join(", ")));
            report.verdict("radial", true);
            report.verdict("a", list);
        }
        Radialization::Fails { degree, defect } => {
            report.say(format!("not radial at degree {degree}: defect x p'_y - y p'_x = {defect}"));
            report.verdict("radial", false);
            report.verdict("failing_degree", degree);
            report.verdict("defect", defect.to_string());
            report.exit_code = EXIT_NEGATIVE;
        }
    }
    Ok(report)
}
