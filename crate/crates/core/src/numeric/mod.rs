//! Numerical kernels: an adaptive Runge–Kutta integrator with dense output
//! and adaptive Gauss–Kronrod quadrature.

pub mod ode;
pub mod quadrature;

pub use ode::{integrate, single_step, Control, DenseStep, OdeError, OdeOptions, Outcome, State};
pub use quadrature::{integrate as quad, integrate_fn as quad_fn, Quadrature};
