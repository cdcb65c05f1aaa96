//! Trajectories, return times and period profiles, shift maps along orbits.

mod config;
mod profile;
mod trajectory;

pub use config::IntegratorConfig;
pub use profile::{
    classify_periods, halving_radii, period_profile, PeriodProfile, PeriodSample, Verdict,
    CAUCHY_REL, DIVERGENCE_RATIO, TAIL,
};
pub use trajectory::{
    advance_angle, flow, flow_map, kernel_residual, period, shift_apply, shift_map, AngleHit,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FlowError {
    #[error("trajectory left the disk of radius {radius} at t = {t}")]
    Escape { t: f64, radius: f64 },
    #[error("integration failed: {0}")]
    StepFailure(String),
    #[error("no return: {0}")]
    NoReturn(String),
    #[error("the origin is a singular point and has no orbit")]
    AtOrigin,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
