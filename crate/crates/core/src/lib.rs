//! Planar vector fields with a center singularity.

pub mod cli;
pub mod fields;
pub mod jets;
pub mod flow;
pub mod linalg;
pub mod numeric;
pub mod point;
pub mod polar;
pub mod shift;

pub use point::{PlaneMap, Point};
