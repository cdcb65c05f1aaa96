use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64;

use super::ShiftError;
use crate::linalg::principal_angle;
use crate::point::{PlaneMap, Point};
use crate::polar::probe_grid;

/// Finite-difference step for 1-jets of maps at the origin.
pub const JET_STEP: f64 = 1e-3;
/// Tolerance, relative to `max(1, τ)`, for accepting a 1-jet as `τ·id`.
pub const JET_TOL: f64 = 1e-6;
/// Initial number of radial samples when unwrapping the argument.
pub const UNWRAP_STEPS: usize = 8;
const UNWRAP_DEPTH: u32 = 30;

/// `τ` with `∇h(O) = τ·id`, `τ > 0`, or an error if `h` moves the origin or
/// its 1-jet is not a positive scalar.
pub fn scalar_jet(h: &PlaneMap) -> Result<f64, ShiftError> {
    let o = h.apply(Point::ORIGIN);
    if !(o.norm() <= 1e-12) {
        return Err(ShiftError::NotOriginPreserving);
    }
    let j = h.jacobian_at(Point::ORIGIN, JET_STEP);
    let tau = 0.5 * (j.get(0, 0) + j.get(1, 1));
    let tol = JET_TOL * tau.abs().max(1.0);
    let scalar = (j.get(0, 0) - j.get(1, 1)).abs() <= tol
        && j.get(0, 1).abs() <= tol
        && j.get(1, 0).abs() <= tol;
    if !(scalar && tau > 0.0) {
        return Err(ShiftError::JetNotScalar);
    }
    Ok(tau)
}

/// `h(z) = z·γ(z)` with `γ(O) = τ`, together with the continuous argument `Γ`
/// of `γ` normalized by `Γ(O) = 0`.
#[derive(Debug, Clone)]
pub struct GammaDecomposition {
    h: PlaneMap,
    pub tau: f64,
}

impl GammaDecomposition {
    /// `γ(z) = h(z)/z` (complex division), `γ(O) = τ`.
    pub fn gamma(&self, z: Point) -> Complex64 {
        if z == Point::ORIGIN {
            return Complex64::new(self.tau, 0.0);
        }
        self.h.apply(z).to_complex() / z.to_complex()
    }

    fn checked_arg(&self, z: Point) -> Result<f64, ShiftError> {
        let g = self.gamma(z);
        if !(g.re.is_finite() && g.im.is_finite()) {
            return Err(ShiftError::MapFailure(format!("map is not finite at {z}")));
        }
        if g.norm() == 0.0 {
            return Err(ShiftError::VanishingImage);
        }
        Ok(g.arg())
    }

    fn unwrap(&self, z: Point, t0: f64, a0: f64, t1: f64, depth: u32) -> Result<f64, ShiftError> {
        let raw = self.checked_arg(z * t1)?;
        let d = principal_angle(raw - a0);
        if d.abs() <= FRAC_PI_4 || depth == 0 {
            return Ok(a0 + d);
        }
        let tm = 0.5 * (t0 + t1);
        let am = self.unwrap(z, t0, a0, tm, depth - 1)?;
        self.unwrap(z, tm, am, t1, depth - 1)
    }

    /// `Γ(z)`: the argument of `γ` followed continuously along the segment
    /// from the origin to `z`, refined wherever consecutive samples differ by
    /// more than π/4.
    pub fn big_gamma(&self, z: Point) -> Result<f64, ShiftError> {
        if z == Point::ORIGIN {
            return Ok(0.0);
        }
        let mut a = 0.0;
        let mut t = 0.0;
        for i in 1..=UNWRAP_STEPS {
            let t1 = i as f64 / UNWRAP_STEPS as f64;
            a = self.unwrap(z, t, a, t1, UNWRAP_DEPTH)?;
            t = t1;
        }
        Ok(a)
    }

    /// `|exp(iΓ)·|γ| − γ|` at `z`.
    pub fn polar_residual(&self, z: Point) -> Result<f64, ShiftError> {
        let g = self.gamma(z);
        let a = self.big_gamma(z)?;
        Ok((Complex64::from_polar(g.norm(), a) - g).norm())
    }
}

/// Decomposes an origin-fixing map whose 1-jet is `τ·id`. The vanishing and
/// jet conditions are checked up front on the probe grid.
pub fn gamma_decompose(h: &PlaneMap, tau: f64) -> Result<GammaDecomposition, ShiftError> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(ShiftError::JetNotScalar);
    }
    let measured = scalar_jet(h)?;
    if (measured - tau).abs() > JET_TOL * tau.max(1.0) {
        return Err(ShiftError::JetNotScalar);
    }
    for (phi, rho) in probe_grid() {
        let z = crate::polar::polar_point(phi, rho);
        let w = h.apply(z);
        if !w.is_finite() {
            return Err(ShiftError::MapFailure(format!("map is not finite at {z}")));
        }
        if w.norm() == 0.0 {
            return Err(ShiftError::VanishingImage);
        }
    }
    Ok(GammaDecomposition { h: h.clone(), tau })
}
