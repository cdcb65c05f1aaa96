use super::gamma::JET_STEP;
use super::ShiftError;
use crate::fields::{linearize, PlanarField, FD_STEP};
use crate::flow::{flow_map, IntegratorConfig};
use crate::linalg::{classify_jet, JacobiClass, JacobiFamily, LinalgError, LinearPartKind};
use crate::point::{PlaneMap, Point};

/// Tolerance for matching a finite-difference Jacobian to a family matrix.
pub const FAMILY_TOL: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct OmegaExtraction {
    /// Flow time with `∇h(O) = ∇Ψ_ω(O)` (principal branch for rotation type).
    pub omega: f64,
    pub class: JacobiClass,
    pub linear_part: LinearPartKind,
    /// `Ψ_{−ω} ∘ h`, whose 1-jet at the origin is the identity.
    pub h1: PlaneMap,
}

/// Reads `ω` off the Jacobi matrix of `h` at the origin and strips the
/// corresponding flow map from `h`.
pub fn omega_extract(h: &PlaneMap, field: &PlanarField, cfg: &IntegratorConfig) -> Result<OmegaExtraction, ShiftError> {
    if !(h.apply(Point::ORIGIN).norm() <= 1e-12) {
        return Err(ShiftError::NotOriginPreserving);
    }
    let a = linearize(field, FD_STEP);
    if a.max_abs() == 0.0 {
        return Err(ShiftError::ZeroLinearPart);
    }
    let jac = h.jacobian_at(Point::ORIGIN, JET_STEP);
    let (class, kind) = classify_jet(&jac, &a, FAMILY_TOL).map_err(|e| match e {
        LinalgError::ZeroMap => ShiftError::ZeroLinearPart,
        _ => ShiftError::NotInFamily,
    })?;
    match class.family {
        JacobiFamily::Rotation | JacobiFamily::UnipotentPlus => {}
        JacobiFamily::Reflection | JacobiFamily::MixedPlusMinus | JacobiFamily::MixedMinusPlus => {
            return Err(ShiftError::OrientationReversing)
        }
        JacobiFamily::UnipotentMinus => return Err(ShiftError::NotInFamily),
    }
    let omega = class.omega;
    let h1 = if omega == 0.0 {
        h.clone()
    } else {
        flow_map(field, -omega, cfg).compose(h)
    };
    Ok(OmegaExtraction { omega, class, linear_part: kind, h1 })
}
