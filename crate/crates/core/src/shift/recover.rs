use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::gamma::{gamma_decompose, GammaDecomposition};
use super::omega::omega_extract;
use super::ShiftError;
use crate::fields::{PlanarField, ScalarField, FD_STEP};
use crate::flow::{advance_angle, flow, halving_radii, period_profile, IntegratorConfig, Verdict};
use crate::point::{PlaneMap, Point};
use crate::polar::{lift_field, unpolar, PolarField};

/// `|f(h(z)) − f(z)|` allowed for a supplied first integral.
pub const LEVEL_TOL: f64 = 1e-7;
/// Distance allowed between `h(z)` and the point where the orbit of `z`
/// reaches the same angle.
pub const ORBIT_TOL: f64 = 1e-5;
/// Number of halving radii used for the PTC precondition.
pub const PTC_RADII: usize = 14;
/// Margin below which `F(α)` counts as not exceeding `−1`.
pub const MEMBERSHIP_MARGIN: f64 = 1e-8;

/// Shift function values recovered at sample points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShiftGrid {
    pub points: Vec<Point>,
    pub sigma: Vec<f64>,
    /// `‖Ψ(z, σ(z)) − h(z)‖` per point.
    pub residuals: Vec<f64>,
    /// Maximum of `residuals`.
    pub residual: f64,
    /// Value of `σ` at the origin.
    pub omega: f64,
    /// Limit of the period at the origin.
    pub period_limit: f64,
}

impl ShiftGrid {
    /// `x,y,sigma,residual` with 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,y,sigma,residual\n");
        for ((p, s), r) in self.points.iter().zip(&self.sigma).zip(&self.residuals) {
            let _ = writeln!(out, "{:.16e},{:.16e},{:.16e},{:.16e}", p.x, p.y, s, r);
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("shift grid serializes")
    }
}

/// Period limit at the origin, or `NotPTC` with the verdict label.
pub fn require_ptc(field: &PlanarField, r0: f64, cfg: &IntegratorConfig) -> Result<f64, ShiftError> {
    let profile = period_profile(field, 0.0, &halving_radii(r0, PTC_RADII), cfg)?;
    match profile.verdict {
        Verdict::Ptc { limit } => Ok(limit),
        v => Err(ShiftError::NotPTC(v.label().into())),
    }
}

struct Context<'a> {
    field: &'a PlanarField,
    lift: PolarField,
    h: &'a PlaneMap,
    gamma: GammaDecomposition,
    omega: f64,
    escape: f64,
    cfg: &'a IntegratorConfig,
}

impl Context<'_> {
    fn sample(&self, z: Point) -> Result<(f64, f64), ShiftError> {
        let target = self.h.apply(z);
        if !target.is_finite() {
            return Err(ShiftError::MapFailure(format!("map is not finite at {z}")));
        }
        if let Some(f) = &self.field.meta.first_integral {
            let gap = (f.eval(target) - f.eval(z)).abs();
            if gap > LEVEL_TOL {
                return Err(ShiftError::NotOrbitPreserving(format!(
                    "first integral changes by {gap:.3e} at {z}"
                )));
            }
        }
        if z == Point::ORIGIN {
            return Ok((self.omega, target.norm()));
        }
        let (phi, rho) = unpolar(z, 0.0).map_err(|_| ShiftError::MapFailure("origin".into()))?;
        let turn = self.gamma.big_gamma(z)?;
        let hit = advance_angle(&self.lift, phi, rho, turn, self.escape, self.cfg)?;
        let sigma = self.omega + hit.time;
        let w = flow(self.field, z, sigma, self.cfg)?;
        let residual = w.dist(target);
        if residual > ORBIT_TOL {
            return Err(ShiftError::NotOrbitPreserving(format!(
                "h({z}) lies {residual:.3e} away from the orbit point at the same angle"
            )));
        }
        Ok((sigma, residual))
    }
}

/// Solves `Ψ(z, σ(z)) = h(z)` at each sample. The sheet is fixed by the
/// time `ω` read off the 1-jet of `h`; the remaining time is the flight time
/// along the lifted orbit through the continuous angle `Γ` of `Ψ_{−ω}∘h`.
pub fn recover_shift(
    field: &PlanarField,
    h: &PlaneMap,
    samples: &[Point],
    cfg: &IntegratorConfig,
) -> Result<ShiftGrid, ShiftError> {
    cfg.validate().map_err(ShiftError::InvalidInput)?;
    if samples.iter().any(|z| !z.is_finite()) {
        return Err(ShiftError::InvalidInput("non-finite sample".into()));
    }
    let r0 = samples.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let r0 = if r0 > 0.0 { r0.min(1.0) } else { 1.0 };
    let period_limit = require_ptc(field, r0, cfg)?;

    let o = h.apply(Point::ORIGIN);
    if !(o.norm() <= 1e-12) {
        return Err(ShiftError::NotOrbitPreserving(format!("the origin is moved to {o}")));
    }
    let extraction = omega_extract(h, field, cfg)?;
    let gamma = gamma_decompose(&extraction.h1, 1.0)?;
    let ctx = Context {
        field,
        lift: lift_field(field),
        h,
        gamma,
        omega: extraction.omega,
        escape: cfg.escape_radius.unwrap_or(field.meta.escape_radius),
        cfg,
    };
    let values: Vec<(f64, f64)> = samples
        .par_iter()
        .map(|&z| ctx.sample(z))
        .collect::<Result<_, _>>()?;
    let (sigma, residuals): (Vec<f64>, Vec<f64>) = values.into_iter().unzip();
    let residual = residuals.iter().copied().fold(0.0, f64::max);
    Ok(ShiftGrid {
        points: samples.to_vec(),
        sigma,
        residuals,
        residual,
        omega: extraction.omega,
        period_limit,
    })
}

/// Whether `F(α) = F₁ α'_x + F₂ α'_y > −1` at every sample, so that the
/// shift map of `α` is an orbit-preserving diffeomorphism.
pub fn gamma_set_membership(field: &PlanarField, alpha: &ScalarField, samples: &[Point]) -> bool {
    samples.iter().all(|&z| {
        let d = field.eval(z).dot(alpha.gradient_or_fd(z, FD_STEP * 1e-2));
        d > -1.0 + MEMBERSHIP_MARGIN
    })
}
