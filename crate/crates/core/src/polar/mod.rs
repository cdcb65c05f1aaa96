//! The polar covering `P(φ, ρ) = (ρ cos φ, ρ sin φ)` of the punctured plane by
//! the half-plane `ρ > 0`: lifts of fields and maps, descent of 2π-periodic
//! functions, and numeric flatness tests on `ρ = 0`.

mod coords;
mod flat;
mod lift;
mod map;

pub use coords::{polar_point, probe_grid, unpolar};
pub use flat::{
    descend_flat, flatness_order, flatness_order_lifted, probe_radii, FlatnessCheck,
    FLATNESS_ANGLES, FLATNESS_FLOOR,
};
pub use lift::{lift_field, lifted_grid_csv, PolarField, PolarFn, BOUNDARY_RHO};
pub use map::{lift_map, lift_map_chart, LiftedMap};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PolarError {
    #[error("the origin has no polar angle")]
    OriginHasNoAngle,
    #[error("map does not fix the origin")]
    NotOriginPreserving,
    #[error("1-jet at the origin is not a positive multiple of the identity")]
    JetNotScalar,
    #[error("map sends a point other than the origin to the origin")]
    VanishingImage,
    #[error("function is not 2π-periodic in φ (discrepancy {0:.3e})")]
    NotZInvariant(f64),
    #[error("function fails the flatness test at order {0}")]
    NotFlat(u32),
    #[error("point lies outside the chart")]
    OutsideChart,
    #[error("map evaluation failed: {0}")]
    MapFailure(String),
}
