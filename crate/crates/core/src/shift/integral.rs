use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::ShiftError;
use crate::numeric::quad;
use crate::polar::LiftedMap;

/// Absolute quadrature tolerance.
pub const QUAD_TOL: f64 = 1e-10;

fn reciprocal_rate(phi_bar: &impl Fn(f64, f64) -> f64, s: f64, rho: f64) -> Result<f64, ShiftError> {
    let d = 1.0 + phi_bar(s, rho);
    if !(d > 0.0) {
        return Err(ShiftError::SingularIntegrand { phi: s, rho });
    }
    Ok(1.0 / d)
}

/// `θ̄(φ, ρ) = ∫_φ^{φ+2π} ds / (1 + Φ̄(s, ρ))`: the return time of the field
/// `(1 + Φ̄) ∂φ + R̄ ∂ρ` measured along its angular coordinate.
pub fn period_integral(phi_bar: impl Fn(f64, f64) -> f64, rho: f64, phi_start: f64) -> Result<f64, ShiftError> {
    Ok(quad(
        |s| reciprocal_rate(&phi_bar, s, rho),
        phi_start,
        phi_start + 2.0 * PI,
        QUAD_TOL,
    )?
    .value)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SigmaSample {
    pub phi: f64,
    pub rho: f64,
    /// `σ̃ = ∫_φ^{Φ̃(φ,ρ)} ds / (1 + Φ̄(s, ρ))`.
    pub sigma: f64,
    /// `σ̃ − (Φ̃ − φ)`, flat on `ρ = 0` for flat `Φ̄`.
    pub xi_phi: f64,
}

/// Shift function of a lifted map along the flow of `(1 + Φ̄) ∂φ + R̄ ∂ρ`,
/// by quadrature along the angular coordinate.
pub fn sigma_from_lift(
    phi_bar: impl Fn(f64, f64) -> f64,
    lifted: &LiftedMap,
    grid: &[(f64, f64)],
) -> Result<Vec<SigmaSample>, ShiftError> {
    grid.iter()
        .map(|&(phi, rho)| {
            let target = lifted.phi_at(phi, rho);
            if !target.is_finite() {
                return Err(ShiftError::MapFailure(format!("lifted map undefined at ({phi}, {rho})")));
            }
            let sigma = quad(|s| reciprocal_rate(&phi_bar, s, rho), phi, target, QUAD_TOL)?.value;
            Ok(SigmaSample {
                phi,
                rho,
                sigma,
                xi_phi: sigma - (target - phi),
            })
        })
        .collect()
}
