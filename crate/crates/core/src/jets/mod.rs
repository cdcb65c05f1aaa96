//! Exact jets at the origin: homogeneous polynomials over the rationals, the
//! radial relation `x p'_y = y p'_x`, radialization of Taylor tables, and the
//! rigidity identity for first integrals.

mod poly;
mod rigidity;
mod table;

pub use poly::{
    defect_kernel_dimension, defect_matrix, divide_by_r2, radial_form, radial_relation_defect,
    HomogeneousPoly,
};
pub use rigidity::{rigidity_factor, rigidity_residual, DEGENERATE_TOL};
pub use table::{radialize_series, Radialization, TaylorTable};

use crate::point::Point;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum JetError {
    #[error("degree {0} polynomial is not divisible by x² + y²")]
    NotDivisible(u32),
    #[error("expected degree {expected}, found {found}")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error("taylor table: {0}")]
    Parse(String),
    #[error("function has no gradient")]
    MissingGradient,
    #[error("field carries no flat Takens form")]
    MissingFlatForm,
    #[error("x + X̄ and y + Ȳ both vanish at {0}")]
    DegeneratePoint(Point),
}
