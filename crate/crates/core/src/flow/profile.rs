use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::trajectory::period_lifted;
use super::{FlowError, IntegratorConfig};
use crate::fields::PlanarField;
use crate::point::Point;
use crate::polar::{lift_field, polar_point};

/// Relative Cauchy threshold between successive periods.
pub const CAUCHY_REL: f64 = 1e-4;
/// Multiplicative growth demanded between successive radii for divergence.
pub const DIVERGENCE_RATIO: f64 = 1.1;
/// Number of trailing samples inspected by the verdict.
pub const TAIL: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    /// Periods converge to `limit` as the radius shrinks.
    Ptc { limit: f64 },
    /// Periods grow without bound.
    Divergent,
    Inconclusive,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Ptc { .. } => "PTC",
            Verdict::Divergent => "Divergent",
            Verdict::Inconclusive => "Inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodSample {
    pub radius: f64,
    /// `None` when the period computation failed at this radius.
    pub theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

/// Periods sampled along a ray towards the origin, with a verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodProfile {
    pub ray_angle: f64,
    pub samples: Vec<PeriodSample>,
    pub verdict: Verdict,
}

impl PeriodProfile {
    pub fn radii(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.radius).collect()
    }

    /// Periods, `NaN` where the computation failed.
    pub fn theta(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.theta.unwrap_or(f64::NAN)).collect()
    }

    pub fn failures(&self) -> usize {
        self.samples.iter().filter(|s| s.theta.is_none()).count()
    }

    /// `radius,theta,converged` with 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("radius,theta,converged\n");
        for s in &self.samples {
            let theta = s.theta.map(|t| format!("{t:.16e}")).unwrap_or_else(|| "NaN".into());
            let _ = writeln!(out, "{:.16e},{},{}", s.radius, theta, s.theta.is_some());
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("profile serializes")
    }
}

/// Periods at each radius along the ray at `ray_angle`, computed in
/// parallel, followed by the convergence verdict.
pub fn period_profile(
    field: &PlanarField,
    ray_angle: f64,
    radii: &[f64],
    cfg: &IntegratorConfig,
) -> Result<PeriodProfile, FlowError> {
    cfg.validate().map_err(FlowError::InvalidInput)?;
    if radii.is_empty() {
        return Err(FlowError::InvalidInput("no radii given".into()));
    }
    if radii.iter().any(|&r| !(r > 0.0 && r <= 1.0)) {
        return Err(FlowError::InvalidInput("radii must lie in (0, 1]".into()));
    }
    if radii.windows(2).any(|w| w[1] >= w[0]) {
        return Err(FlowError::InvalidInput("radii must be strictly decreasing".into()));
    }
    let lift = lift_field(field);
    let escape = cfg.escape_radius.unwrap_or(field.meta.escape_radius);
    let samples: Vec<PeriodSample> = radii
        .par_iter()
        .map(|&r| {
            let z: Point = polar_point(ray_angle, r);
            match period_lifted(&lift, z, escape, cfg) {
                Ok(t) => PeriodSample { radius: r, theta: Some(t), failure: None },
                Err(e) => PeriodSample { radius: r, theta: None, failure: Some(e.to_string()) },
            }
        })
        .collect();
    let verdict = classify_periods(radii, &samples.iter().map(|s| s.theta).collect::<Vec<_>>());
    Ok(PeriodProfile { ray_angle, samples, verdict })
}

/// Verdict from periods at decreasing radii.
///
/// PTC: the last [`TAIL`] periods are Cauchy, the extrapolated limit
/// `θ(r) ≈ L + c r²` is finite and positive, and `|θ − L|` does not grow
/// (up to a rounding floor of `1e−9·L`). Divergent: the last [`TAIL`]
/// periods strictly increase, the last exceeds twice the first, and each of
/// the last three ratios is at least [`DIVERGENCE_RATIO`].
pub fn classify_periods(radii: &[f64], theta: &[Option<f64>]) -> Verdict {
    let n = theta.len();
    if n < TAIL || theta[n - TAIL..].iter().any(|t| t.is_none()) {
        return Verdict::Inconclusive;
    }
    let tail: Vec<f64> = theta[n - TAIL..].iter().map(|t| t.unwrap()).collect();
    let r = &radii[n - TAIL..];

    let cauchy = tail.windows(2).all(|w| (w[1] - w[0]).abs() < CAUCHY_REL * w[0]);
    if cauchy {
        let (r1, r2) = (r[TAIL - 2] * r[TAIL - 2], r[TAIL - 1] * r[TAIL - 1]);
        let (t1, t2) = (tail[TAIL - 2], tail[TAIL - 1]);
        let limit = (t2 * r1 - t1 * r2) / (r1 - r2);
        let floor = 1e-9 * limit.abs();
        let settling = tail
            .windows(2)
            .all(|w| (w[1] - limit).abs() <= (w[0] - limit).abs() + floor);
        if limit.is_finite() && limit > 0.0 && settling {
            return Verdict::Ptc { limit };
        }
    }

    let first = theta.iter().flatten().next().copied().unwrap_or(tail[0]);
    let increasing = tail.windows(2).all(|w| w[1] > w[0]);
    let growth = tail[TAIL - 4..].windows(2).all(|w| w[1] >= DIVERGENCE_RATIO * w[0]);
    if increasing && growth && tail[TAIL - 1] > 2.0 * first {
        return Verdict::Divergent;
    }
    Verdict::Inconclusive
}

/// `r0·2^{−i}` for `i = 0..n`.
pub fn halving_radii(r0: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| r0 * 0.5f64.powi(i as i32)).collect()
}
