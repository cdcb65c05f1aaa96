use std::fmt;
use std::fmt::Write as _;
use std::sync::Arc;

use super::coords::{polar_point, probe_grid};
use crate::fields::PlanarField;
use crate::flow::{FlowError, IntegratorConfig};
use crate::numeric::{integrate, Control, State};
use crate::point::Point;

pub type PolarFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Radius at which the `1/ρ` angular component is evaluated when no Jacobian
/// is available at the origin.
pub const BOUNDARY_RHO: f64 = 1e-8;

/// A vector field `B_φ ∂φ + B_ρ ∂ρ` on the half-plane `ρ >= 0`.
#[derive(Clone)]
pub struct PolarField {
    phi: PolarFn,
    rho: PolarFn,
    /// Both components are 2π-periodic in `φ`.
    pub period_2pi: bool,
}

impl PolarField {
    pub fn new(
        phi: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        rho: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        period_2pi: bool,
    ) -> Self {
        Self {
            phi: Arc::new(phi),
            rho: Arc::new(rho),
            period_2pi,
        }
    }

    pub fn eval(&self, phi: f64, rho: f64) -> (f64, f64) {
        ((self.phi)(phi, rho), (self.rho)(phi, rho))
    }

    pub fn phi_rate(&self, phi: f64, rho: f64) -> f64 {
        (self.phi)(phi, rho)
    }

    pub fn rho_rate(&self, phi: f64, rho: f64) -> f64 {
        (self.rho)(phi, rho)
    }

    /// Flow of the lifted field for time `t`.
    pub fn flow(&self, phi: f64, rho: f64, t: f64, cfg: &IntegratorConfig) -> Result<(f64, f64), FlowError> {
        let out = integrate(
            |y: &State| {
                let (a, b) = self.eval(y[0], y[1]);
                [a, b]
            },
            [phi, rho],
            t,
            &cfg.ode_options(),
            |_| Control::Continue,
        )
        .map_err(|e| FlowError::StepFailure(e.to_string()))?;
        Ok((out.y[0], out.y[1]))
    }

    /// `max |B(φ + 2π, ρ) − B(φ, ρ)|` over the probe grid.
    pub fn z_invariance_residual(&self) -> f64 {
        probe_grid()
            .into_iter()
            .map(|(phi, rho)| {
                let (a0, b0) = self.eval(phi, rho);
                let (a1, b1) = self.eval(phi + 2.0 * std::f64::consts::PI, rho);
                (a1 - a0).abs().max((b1 - b0).abs())
            })
            .fold(0.0, f64::max)
    }

    /// `max |B_ρ(φ, 0)|` over 32 angles.
    pub fn boundary_residual(&self) -> f64 {
        (0..32)
            .map(|j| self.rho_rate(2.0 * std::f64::consts::PI * j as f64 / 32.0, 0.0).abs())
            .fold(0.0, f64::max)
    }
}

impl fmt::Debug for PolarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PolarField").field("period_2pi", &self.period_2pi).finish()
    }
}

/// The expression of `F` in polar coordinates:
/// `B_φ = (−sin φ·F₁ + cos φ·F₂)/ρ`, `B_ρ = cos φ·F₁ + sin φ·F₂`.
///
/// On `ρ = 0` the angular component is `e_φᵀ ∇F(O) e_ρ` when the field has an
/// analytic Jacobian, and the quotient at `ρ = 1e−8` otherwise.
pub fn lift_field(field: &PlanarField) -> PolarField {
    let fa = field.clone();
    let jac0 = field.jacobian(Point::ORIGIN);
    let fb = field.clone();
    PolarField::new(
        move |phi, rho| {
            let (s, c) = phi.sin_cos();
            if rho == 0.0 {
                if let Some(j) = &jac0 {
                    let v = j.mul_vec(&[c, s]);
                    return -s * v[0] + c * v[1];
                }
                let v = fa.eval(polar_point(phi, BOUNDARY_RHO));
                return (-s * v.x + c * v.y) / BOUNDARY_RHO;
            }
            let v = fa.eval(polar_point(phi, rho));
            (-s * v.x + c * v.y) / rho
        },
        move |phi, rho| {
            let (s, c) = phi.sin_cos();
            let v = fb.eval(polar_point(phi, rho));
            c * v.x + s * v.y
        },
        true,
    )
}

/// `φ,ρ,B_φ,B_ρ` rows over the product grid, 17 significant digits.
pub fn lifted_grid_csv(lift: &PolarField, phis: &[f64], rhos: &[f64]) -> String {
    let mut out = String::from("phi,rho,b_phi,b_rho\n");
    for &rho in rhos {
        for &phi in phis {
            let (a, b) = lift.eval(phi, rho);
            let _ = writeln!(out, "{phi:.16e},{rho:.16e},{a:.16e},{b:.16e}");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::fields::{catalog, make_field, FieldSpec};
    use crate::flow::flow;

    #[test]
    fn rotation_lifts_to_constant_rate() {
        for b in [1.0, -2.0, 0.5] {
            let lift = lift_field(&make_field(&FieldSpec::Rotation { b }).unwrap());
            for (phi, rho) in probe_grid().into_iter().chain([(0.3, 0.0), (1.0, 1.0)]) {
                let (a, r) = lift.eval(phi, rho);
                assert!((a - b).abs() < 1e-12 && r.abs() < 1e-12, "{b} {phi} {rho}: {a} {r}");
            }
        }
    }

    #[test]
    fn nonflat_form_matches_closed_form() {
        for (delta, k, alpha) in [(1.0, 1, 0.0), (-1.0, 1, 0.0), (1.0, 2, 0.5)] {
            let f = make_field(&FieldSpec::TakensNonflat { delta, k, alpha }).unwrap();
            let lift = lift_field(&f);
            for (phi, rho) in probe_grid().into_iter().chain([(0.7, 1.0), (0.7, 0.0)]) {
                let (a, r) = lift.eval(phi, rho);
                let kk = k as i32;
                let exact = rho.powi(2 * kk + 1) * (delta + alpha * rho.powi(2 * kk));
                assert!((a - 2.0 * PI).abs() <= 1e-9 && (r - exact).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn catalog_lifts_are_periodic_and_tangent() {
        for spec in catalog() {
            let lift = lift_field(&make_field(&spec).unwrap());
            assert!(lift.z_invariance_residual() <= 1e-10, "{}", spec.name());
            assert!(lift.boundary_residual() <= 1e-10, "{}", spec.name());
        }
    }

    #[test]
    fn lifted_flow_projects_to_flow() {
        let f = make_field(&FieldSpec::Rotation { b: 1.0 }).unwrap();
        let lift = lift_field(&f);
        let cfg = IntegratorConfig::default();
        let (phi, rho) = lift.flow(0.2, 0.6, 2.5, &cfg).unwrap();
        let w = flow(&f, polar_point(0.2, 0.6), 2.5, &cfg).unwrap();
        assert!(polar_point(phi, rho).dist(w) < 1e-9);
        assert!((phi - 2.7).abs() < 1e-9);
    }

    #[test]
    fn grid_csv_shape() {
        let lift = lift_field(&make_field(&FieldSpec::Rotation { b: 1.0 }).unwrap());
        let csv = lifted_grid_csv(&lift, &[0.0, 1.0, 2.0], &[0.5, 0.25]);
        assert_eq!(csv.lines().count(), 7);
        assert!(csv.starts_with("phi,rho,b_phi,b_rho\n"));
    }
}
