use num_complex::Complex64;

use super::matrix::{Matrix, SquareMatrix};
use super::scalar::Scalar;

/// Eigenvalues with multiplicity, sorted by (real, imaginary).
///
/// 2x2 matrices use the closed-form characteristic polynomial; larger ones go
/// through a real Schur decomposition.
pub fn spectrum(a: &SquareMatrix) -> Vec<Complex64> {
    let mut eig = if a.dim() == 2 {
        spectrum_2x2(a)
    } else {
        a.to_nalgebra().complex_eigenvalues().iter().copied().collect()
    };
    eig.sort_by(|x, y| {
        x.re.partial_cmp(&y.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(x.im.partial_cmp(&y.im).unwrap_or(std::cmp::Ordering::Equal))
    });
    eig
}

fn spectrum_2x2(a: &SquareMatrix) -> Vec<Complex64> {
    let (p, q, r, s) = (*a.get(0, 0), *a.get(0, 1), *a.get(1, 0), *a.get(1, 1));
    let half_tr = 0.5 * (p + s);
    // discriminant of λ² − tr λ + det, written to avoid cancellation in tr²/4 − det
    let disc = 0.25 * (p - s) * (p - s) + q * r;
    if disc >= 0.0 {
        let sq = disc.sqrt();
        vec![
            Complex64::new(half_tr - sq, 0.0),
            Complex64::new(half_tr + sq, 0.0),
        ]
    } else {
        let sq = (-disc).sqrt();
        vec![
            Complex64::new(half_tr, -sq),
            Complex64::new(half_tr, sq),
        ]
    }
}

/// Numerical rank. Floating-point matrices use singular values against the
/// threshold `tol * ||A||_inf`; exact matrices use elimination.
pub fn rank<T: Scalar>(m: &Matrix<T>, tol: f64) -> usize {
    if T::EXACT {
        let cols: Vec<Vec<T>> = (0..m.dim()).map(|j| m.column(j)).collect();
        Matrix::rank_of_vectors(&cols, 0.0, 0.0)
    } else {
        let f = m.to_f64();
        let threshold = tol * f.inf_norm();
        if f.max_abs() == 0.0 {
            return 0;
        }
        let svd = nalgebra::linalg::SVD::new(f.to_nalgebra(), false, false);
        svd.singular_values.iter().filter(|&&s| s > threshold).count()
    }
}
