use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use super::coords::{polar_point, probe_grid};
use super::lift::PolarFn;
use super::PolarError;
use crate::numeric::quad_fn;
use crate::point::{PlaneMap, Point};
use crate::shift::{gamma_decompose, scalar_jet, ShiftError, JET_STEP};

/// A self-map `(Φ̃, R̃)` of the half-plane `ρ >= 0`.
#[derive(Clone)]
pub struct LiftedMap {
    phi_map: PolarFn,
    rho_map: PolarFn,
    /// Commutes with the deck transformation `φ ↦ φ + 2π`.
    pub equivariant: bool,
}

impl LiftedMap {
    pub fn new(
        phi_map: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        rho_map: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        equivariant: bool,
    ) -> Self {
        Self {
            phi_map: Arc::new(phi_map),
            rho_map: Arc::new(rho_map),
            equivariant,
        }
    }

    pub fn identity() -> Self {
        Self::new(|phi, _| phi, |_, rho| rho, true)
    }

    /// `η^n: (φ, ρ) ↦ (φ + 2πn, ρ)`, a lift of the identity.
    pub fn deck(n: i64) -> Self {
        let shift = 2.0 * PI * n as f64;
        Self::new(move |phi, _| phi + shift, |_, rho| rho, true)
    }

    pub fn apply(&self, phi: f64, rho: f64) -> (f64, f64) {
        ((self.phi_map)(phi, rho), (self.rho_map)(phi, rho))
    }

    pub fn phi_at(&self, phi: f64, rho: f64) -> f64 {
        (self.phi_map)(phi, rho)
    }

    pub fn rho_at(&self, phi: f64, rho: f64) -> f64 {
        (self.rho_map)(phi, rho)
    }

    /// `max(|Φ̃(φ+2π,ρ) − Φ̃(φ,ρ) − 2π|, |R̃(φ+2π,ρ) − R̃(φ,ρ)|)` on the probe grid.
    pub fn equivariance_residual(&self) -> f64 {
        probe_grid()
            .into_iter()
            .map(|(phi, rho)| {
                let (a0, r0) = self.apply(phi, rho);
                let (a1, r1) = self.apply(phi + 2.0 * PI, rho);
                (a1 - a0 - 2.0 * PI).abs().max((r1 - r0).abs())
            })
            .fold(0.0, f64::max)
    }

    /// `max(|Φ̃(φ,0) − φ|, |R̃(φ,0)|)` over 32 angles.
    pub fn boundary_residual(&self) -> f64 {
        (0..32)
            .map(|j| {
                let phi = 2.0 * PI * j as f64 / 32.0;
                let (a, r) = self.apply(phi, 0.0);
                (a - phi).abs().max(r.abs())
            })
            .fold(0.0, f64::max)
    }

    /// `max ‖P(h̃(w)) − h(P(w))‖` over the probe grid.
    pub fn intertwining_residual(&self, h: &PlaneMap) -> f64 {
        probe_grid()
            .into_iter()
            .map(|(phi, rho)| {
                let (a, r) = self.apply(phi, rho);
                polar_point(a, r).dist(h.apply(polar_point(phi, rho)))
            })
            .fold(0.0, f64::max)
    }
}

impl fmt::Debug for LiftedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LiftedMap").field("equivariant", &self.equivariant).finish()
    }
}

fn from_shift_error(e: ShiftError) -> PolarError {
    match e {
        ShiftError::NotOriginPreserving => PolarError::NotOriginPreserving,
        ShiftError::VanishingImage => PolarError::VanishingImage,
        ShiftError::JetNotScalar => PolarError::JetNotScalar,
        other => PolarError::MapFailure(other.to_string()),
    }
}

/// The unique lift of `h` that fixes `ρ = 0` and commutes with `φ ↦ φ + 2π`:
/// `R̃ = |h(P(φ,ρ))|`, `Φ̃ = φ + Γ(P(φ,ρ))`, where `Γ` is the continuous
/// argument of `h(z)/z` with `Γ(O) = 0`. The 1-jet of `h` at the origin must
/// be `τ·id` with `τ > 0`.
pub fn lift_map(h: &PlaneMap) -> Result<LiftedMap, PolarError> {
    let tau = scalar_jet(h).map_err(from_shift_error)?;
    let gd = Arc::new(gamma_decompose(h, tau).map_err(from_shift_error)?);
    let hr = h.clone();
    Ok(LiftedMap::new(
        move |phi, rho| {
            if rho == 0.0 {
                return phi;
            }
            match gd.big_gamma(polar_point(phi, rho)) {
                Ok(g) => phi + g,
                Err(_) => f64::NAN,
            }
        },
        move |phi, rho| {
            if rho == 0.0 {
                return 0.0;
            }
            hr.apply(polar_point(phi, rho)).norm()
        },
        true,
    ))
}

/// Chart-local lift near `(φ₀, 0)` built from the integral remainders
/// `h_x = τx + xα₁ + yα₂`, `h_y = τy + xβ₁ + yβ₂`:
///
/// `α₁ = ∫₀¹ ∂ₓh_x(tx, y) dt − τ`, `α₂ = ∫₀¹ ∂ᵧh_x(0, ty) dt`,
/// `β₁ = ∫₀¹ ∂ₓh_y(tx, y) dt`, `β₂ = ∫₀¹ ∂ᵧh_y(0, ty) dt − τ`.
///
/// With `A = cos φ·α₁ + sin φ·α₂`, `B = cos φ·β₁ + sin φ·β₂` rotated by `φ₀`
/// into `A₁`, `B₁`, the lift is
/// `Φ̃ = φ₀ + atan((τ sin(φ−φ₀) + B₁)/(τ cos(φ−φ₀) + A₁))` and
/// `R̃ = ρ (τ cos(φ−φ₀) + A₁)/cos(Φ̃ − φ₀)`. Valid while the denominator
/// stays positive.
pub fn lift_map_chart(h: &PlaneMap, tau: f64, phi0: f64, phi: f64, rho: f64) -> Result<(f64, f64), PolarError> {
    if rho == 0.0 {
        return Ok((phi, 0.0));
    }
    let z = polar_point(phi, rho);
    let jac = |p: Point| h.jacobian_at(p, JET_STEP);
    let tol = 1e-13;
    let a1 = quad_fn(|t| *jac(Point::new(t * z.x, z.y)).get(0, 0), 0.0, 1.0, tol).value - tau;
    let a2 = quad_fn(|t| *jac(Point::new(0.0, t * z.y)).get(0, 1), 0.0, 1.0, tol).value;
    let b1 = quad_fn(|t| *jac(Point::new(t * z.x, z.y)).get(1, 0), 0.0, 1.0, tol).value;
    let b2 = quad_fn(|t| *jac(Point::new(0.0, t * z.y)).get(1, 1), 0.0, 1.0, tol).value - tau;
    let (s, c) = phi.sin_cos();
    let big_a = c * a1 + s * a2;
    let big_b = c * b1 + s * b2;
    let (s0, c0) = phi0.sin_cos();
    let a_1 = big_a * c0 + big_b * s0;
    let b_1 = big_b * c0 - big_a * s0;
    let (sd, cd) = (phi - phi0).sin_cos();
    let den = tau * cd + a_1;
    if den <= 0.0 {
        return Err(PolarError::OutsideChart);
    }
    let phi_t = phi0 + ((tau * sd + b_1) / den).atan();
    let rho_t = rho * den / (phi_t - phi0).cos();
    Ok((phi_t, rho_t))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_lift() {
        let lm = lift_map(&PlaneMap::identity()).unwrap();
        for (phi, rho) in probe_grid() {
            let (a, r) = lm.apply(phi, rho);
            assert!((a - phi).abs() < 1e-15 && (r - rho).abs() < 1e-15);
        }
    }

    #[test]
    fn radial_map_keeps_angle() {
        let h = PlaneMap::new(|z| z * (1.0 + z.norm_sq()));
        let lm = lift_map(&h).unwrap();
        for (phi, rho) in probe_grid() {
            let (a, r) = lm.apply(phi, rho);
            assert!((a - phi).abs() < 1e-12 && (r - rho * (1.0 + rho * rho)).abs() < 1e-12);
        }
        assert!(lm.equivariance_residual() <= 1e-9);
        assert!(lm.boundary_residual() <= 1e-9);
        assert!(lm.intertwining_residual(&h) <= 1e-12);
    }

    #[test]
    fn twist_map_lift() {
        let h = PlaneMap::new(|z| {
            let (s, c) = z.norm_sq().sin_cos();
            Point::new(c * z.x - s * z.y, s * z.x + c * z.y)
        });
        let lm = lift_map(&h).unwrap();
        for (phi, rho) in probe_grid().into_iter().chain([(1.0, 1.0)]) {
            assert!((lm.phi_at(phi, rho) - phi - rho * rho).abs() < 1e-12);
        }
        assert!(lm.equivariance_residual() <= 1e-9);
    }

    #[test]
    fn rotation_is_rejected() {
        let h = PlaneMap::new(|z| {
            let (s, c) = 0.4f64.sin_cos();
            Point::new(c * z.x - s * z.y, s * z.x + c * z.y)
        });
        assert_eq!(lift_map(&h).unwrap_err(), PolarError::JetNotScalar);
    }

    #[test]
    fn moving_the_origin_is_rejected() {
        let h = PlaneMap::new(|z| z + Point::new(0.1, 0.0));
        assert_eq!(lift_map(&h).unwrap_err(), PolarError::NotOriginPreserving);
    }

    #[test]
    fn deck_map_lifts_identity() {
        let d = LiftedMap::deck(1);
        assert!(d.intertwining_residual(&PlaneMap::identity()) < 1e-14);
        assert!(d.equivariance_residual() < 1e-14);
        assert!((d.phi_at(0.5, 0.3) - 0.5 - 2.0 * PI).abs() < 1e-15);
    }

    #[test]
    fn chart_formula_agrees_with_gamma_route() {
        let h = PlaneMap::new(|z| {
            let g = 1.0 + 0.3 * z.x - 0.2 * z.x * z.y;
            let (s, c) = (0.5 * z.norm_sq() + 0.1 * z.y).sin_cos();
            Point::new(g * (c * z.x - s * z.y), g * (s * z.x + c * z.y))
        });
        let lm = lift_map(&h).unwrap();
        for phi0 in [0.0, 1.0, 2.5, 4.0] {
            for (dphi, rho) in [(0.0, 0.1), (0.3, 0.2), (-0.4, 0.3), (0.2, 0.05)] {
                let phi = phi0 + dphi;
                let (a, r) = lift_map_chart(&h, 1.0, phi0, phi, rho).unwrap();
                let (ea, er) = lm.apply(phi, rho);
                assert!((a - ea).abs() < 1e-7 && (r - er).abs() < 1e-7, "{phi0} {phi} {rho}");
            }
        }
    }

    #[test]
    fn chart_formula_with_scaling_jet() {
        let h = PlaneMap::new(|z| z * (2.0 + z.x));
        let (a, r) = lift_map_chart(&h, 2.0, 0.0, 0.3, 0.2).unwrap();
        let w = h.apply(polar_point(0.3, 0.2));
        assert!((a - 0.3).abs() < 1e-8 && (r - w.norm()).abs() < 1e-8);
    }
}
