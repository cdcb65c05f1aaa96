use serde::{Deserialize, Serialize};

use crate::numeric::OdeOptions;

/// Tolerances and budgets shared by all trajectory computations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegratorConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_step: f64,
    /// Time budget per orbit.
    pub max_time: f64,
    /// Overrides the escape radius carried by the field.
    pub escape_radius: Option<f64>,
    /// Relative radial mismatch tolerated when an orbit closes up.
    pub closure_tol: f64,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-11,
            abs_tol: 1e-13,
            max_step: 1.0,
            max_time: 1e4,
            escape_radius: None,
            closure_tol: 1e-7,
        }
    }
}

impl IntegratorConfig {
    pub fn with_max_time(mut self, t: f64) -> Self {
        self.max_time = t;
        self
    }

    pub fn with_max_step(mut self, h: f64) -> Self {
        self.max_step = h;
        self
    }

    pub fn with_escape_radius(mut self, r: f64) -> Self {
        self.escape_radius = Some(r);
        self
    }

    pub fn ode_options(&self) -> OdeOptions {
        OdeOptions {
            rel_tol: self.rel_tol,
            abs_tol: self.abs_tol,
            max_step: self.max_step,
            ..OdeOptions::default()
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err("tolerances must be positive".into());
        }
        if !(self.max_time > 0.0 && self.max_step > 0.0) {
            return Err("max_time and max_step must be positive".into());
        }
        Ok(())
    }
}
