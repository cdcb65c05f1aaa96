use std::f64::consts::PI;

use super::PolarError;
use crate::point::Point;

/// `P(φ, ρ) = (ρ cos φ, ρ sin φ)`.
pub fn polar_point(phi: f64, rho: f64) -> Point {
    let (s, c) = phi.sin_cos();
    Point::new(rho * c, rho * s)
}

/// Polar coordinates of `z`, choosing the angle representative nearest to
/// `branch_hint`.
pub fn unpolar(z: Point, branch_hint: f64) -> Result<(f64, f64), PolarError> {
    let rho = z.norm();
    if rho == 0.0 {
        return Err(PolarError::OriginHasNoAngle);
    }
    let base = z.y.atan2(z.x);
    let turns = ((branch_hint - base) / (2.0 * PI)).round();
    Ok((base + 2.0 * PI * turns, rho))
}

/// The fixed probe grid `φ = 2πj/32`, `ρ = 0.5·2^{−i}` (`i = 0..7`).
pub fn probe_grid() -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(32 * 8);
    for i in 0..8 {
        let rho = 0.5 * 0.5f64.powi(i);
        for j in 0..32 {
            out.push((2.0 * PI * j as f64 / 32.0, rho));
        }
    }
    out
}
