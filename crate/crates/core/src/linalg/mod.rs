//! Dense linear algebra for linear parts of vector fields and Jacobi matrices
//! of orbit-preserving maps.

mod collinear;
mod jacobi;
mod matrix;
mod scalar;
mod spectrum;

pub use collinear::{
    collinear_classify, find_nonkernel_vector, probe_set, CollinearCase, CollinearityReport,
};
pub use jacobi::{
    classify_jet, family_matrix, jacobi_classify, normalizing_basis, principal_angle,
    read_normal_form, JacobiClass, JacobiFamily, LinearPartKind,
};
pub use matrix::{Matrix, RationalMatrix, SquareMatrix};
pub use scalar::{parse_rational, rational, Scalar};
pub use spectrum::{rank, spectrum};

/// Default relative tolerance for rank and collinearity decisions.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("B is not conjugate to A through H")]
    NotConjugate,
    #[error("images A(x) and B(x) are not collinear on the probe set")]
    NotCollinear,
    #[error("zero linear map")]
    ZeroMap,
    #[error("Jacobi matrix is not in any orbit-preserving family")]
    NotInFamily,
    #[error("linear part is not of center type")]
    NotNormalForm,
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
}
