use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::coords::{probe_grid, unpolar};
use super::PolarError;
use crate::fields::ScalarField;

/// Angular samples per circle in flatness estimates.
pub const FLATNESS_ANGLES: usize = 16;
/// Circle maxima below this count as rounding noise.
pub const FLATNESS_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatnessCheck {
    pub order: u32,
    pub pass: bool,
}

/// Order-`k` decay test for each requested `k`: with `C` fitted at the
/// largest radius from `sup_{|z|=r} |g|`, the bound `sup ≤ C·r^k` must hold at
/// every smaller radius. `sup_at(r)` supplies the circle maximum.
fn flatness_from_sups(sups: &[f64], radii: &[f64], orders: &[u32]) -> Vec<FlatnessCheck> {
    orders
        .iter()
        .map(|&k| {
            let c = sups[0] / radii[0].powi(k as i32);
            let pass = sups
                .iter()
                .zip(radii)
                .skip(1)
                .all(|(&s, &r)| s <= c * r.powi(k as i32) * (1.0 + 1e-9) + FLATNESS_FLOOR);
            FlatnessCheck { order: k, pass }
        })
        .collect()
}

/// Flatness estimate at the origin for a function on the plane; 16 angles per
/// radius. Radii must be decreasing.
pub fn flatness_order(g: &ScalarField, orders: &[u32], radii: &[f64]) -> Vec<FlatnessCheck> {
    flatness_order_lifted(|phi, rho| g.eval(super::polar_point(phi, rho)), orders, radii)
}

/// Flatness on `ρ = 0` for a function on the half-plane.
pub fn flatness_order_lifted(g: impl Fn(f64, f64) -> f64, orders: &[u32], radii: &[f64]) -> Vec<FlatnessCheck> {
    if radii.is_empty() {
        return orders.iter().map(|&order| FlatnessCheck { order, pass: true }).collect();
    }
    let sups: Vec<f64> = radii
        .iter()
        .map(|&r| {
            (0..FLATNESS_ANGLES)
                .map(|j| g(2.0 * PI * j as f64 / FLATNESS_ANGLES as f64, r).abs())
                .fold(0.0, f64::max)
        })
        .collect();
    flatness_from_sups(&sups, radii, orders)
}

/// Radii `0.5·2^{−i}`, `i = 0..7`.
pub fn probe_radii() -> Vec<f64> {
    (0..8).map(|i| 0.5 * 0.5f64.powi(i)).collect()
}

/// Pushes a 2π-periodic function on the half-plane down to the plane:
/// `a(z) = ã(φ(z), |z|)`, `a(O) = 0`. With `flatness_checked`, orders 1..6
/// must also pass the flatness test at `ρ → 0`.
pub fn descend_flat(
    a_lifted: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
    flatness_checked: bool,
) -> Result<ScalarField, PolarError> {
    let worst = probe_grid()
        .into_iter()
        .map(|(phi, rho)| (a_lifted(phi + 2.0 * PI, rho) - a_lifted(phi, rho)).abs())
        .fold(0.0, f64::max);
    if !(worst <= 1e-9) {
        return Err(PolarError::NotZInvariant(worst));
    }
    if flatness_checked {
        let orders: Vec<u32> = (1..=6).collect();
        let checks = flatness_order_lifted(&a_lifted, &orders, &probe_radii());
        if let Some(c) = checks.iter().find(|c| !c.pass) {
            return Err(PolarError::NotFlat(c.order));
        }
    }
    Ok(ScalarField::new(move |z| match unpolar(z, 0.0) {
        Ok((phi, rho)) => a_lifted(phi, rho),
        Err(_) => 0.0,
    }))
}
