//! Shift functions of orbit-preserving maps: 1-jet extraction, the angular
//! decomposition `h(z) = zγ(z)`, period integrals and pointwise recovery.

mod gamma;
mod integral;
mod omega;
mod recover;

pub use gamma::{gamma_decompose, scalar_jet, GammaDecomposition, JET_STEP, JET_TOL, UNWRAP_STEPS};
pub use integral::{period_integral, sigma_from_lift, SigmaSample, QUAD_TOL};
pub use omega::{omega_extract, OmegaExtraction, FAMILY_TOL};
pub use recover::{
    gamma_set_membership, recover_shift, require_ptc, ShiftGrid, LEVEL_TOL, MEMBERSHIP_MARGIN,
    ORBIT_TOL, PTC_RADII,
};

use crate::flow::FlowError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ShiftError {
    #[error("the map does not fix the origin")]
    NotOriginPreserving,
    #[error("the map sends a nonzero point to the origin")]
    VanishingImage,
    #[error("the 1-jet at the origin is not a positive multiple of the identity")]
    JetNotScalar,
    #[error("the 1-jet at the origin is not the 1-jet of a flow map")]
    NotInFamily,
    #[error("the map reverses orientation")]
    OrientationReversing,
    #[error("the field has zero linear part at the origin")]
    ZeroLinearPart,
    #[error("1 + Φ̄ vanishes at φ = {phi}, ρ = {rho}")]
    SingularIntegrand { phi: f64, rho: f64 },
    #[error("field is not PTC (verdict {0})")]
    NotPTC(String),
    #[error("map is not orbit preserving: {0}")]
    NotOrbitPreserving(String),
    #[error("map evaluation failed: {0}")]
    MapFailure(String),
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
