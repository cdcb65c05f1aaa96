//! Pairs of conjugate linear maps whose images are pointwise collinear.
//!
//! Given `B = H A H^{-1}` with `A(x) ∥ B(x)` for every `x`, exactly one of
//! three cases holds:
//!
//! * **A1** (`rank A >= 2`): `B = τ A`, so `τ A H = H A`.
//! * **A2** (`rank A = 1`, spectrum `{λ, 0}`): in a suitable basis `A = λ E11`
//!   and `B` has only a first row `(λ, b2, ..., bn)`. With `G1` built from that
//!   row, `G1 B = A G1 = B`.
//! * **A3** (`rank A = 1`, spectrum `{0}`): in a suitable basis `A = E12` and
//!   `B` has only a first row `(0, q, b3, ..., bn)` with `q != 0`; `G2 B = A G2 = B`.
//!
//! In the rank-one cases `G_i H` commutes with `A` (in the normal basis).

use serde::{Deserialize, Serialize};

use super::matrix::{dot, norm_inf, unit, Matrix};
use super::scalar::Scalar;
use super::spectrum::rank;
use super::LinalgError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CollinearCase {
    A1,
    A2,
    A3,
}

#[derive(Debug, Clone)]
pub struct CollinearityReport<T> {
    pub case: CollinearCase,
    /// `B = τ A`; present only for [`CollinearCase::A1`].
    pub tau: Option<T>,
    /// Columns are the basis vectors realizing the rank-one normal form.
    pub basis: Option<Matrix<T>>,
    /// `G1` or `G2`, expressed in the normal basis.
    pub g: Option<Matrix<T>>,
    /// `A` and `B` in the normal basis.
    pub a_normal: Option<Matrix<T>>,
    pub b_normal: Option<Matrix<T>>,
    /// In original coordinates: `H` for A1, `S G S^{-1} H` for A2/A3.
    pub commuter: Matrix<T>,
}

impl<T: Scalar> CollinearityReport<T> {
    /// Largest entry of the defining identity for this case, evaluated in
    /// original coordinates: `τ A H − H A` for A1, `A K − K A` otherwise.
    pub fn commutation_residual(&self, a: &Matrix<T>) -> Matrix<T> {
        let k = &self.commuter;
        match (&self.case, &self.tau) {
            (CollinearCase::A1, Some(tau)) => a.mul(k).scale(tau).sub(&k.mul(a)),
            _ => a.mul(k).sub(&k.mul(a)),
        }
    }

    /// `G B − B` and `A G − B` in the normal basis (rank-one cases only).
    pub fn normal_form_residuals(&self) -> Option<(Matrix<T>, Matrix<T>)> {
        let g = self.g.as_ref()?;
        let a = self.a_normal.as_ref()?;
        let b = self.b_normal.as_ref()?;
        Some((g.mul(b).sub(b), a.mul(g).sub(b)))
    }
}

/// Standard basis vectors followed by all pairwise sums `e_i + e_j`, `i < j`.
pub fn probe_set<T: Scalar>(n: usize) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = (0..n).map(|i| unit(n, i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let mut v = unit::<T>(n, i);
            v[j] = T::one();
            out.push(v);
        }
    }
    out
}

/// A probe vector `x` with `A x != 0` and `B x != 0`.
///
/// Searching `e_i` and then `e_i + e_j` always succeeds for nonzero maps: if
/// every `e_i` is killed by `A` or `B`, there are `e_i ∈ ker B \ ker A` and
/// `e_j ∈ ker A \ ker B`, and their sum is in neither kernel.
pub fn find_nonkernel_vector<T: Scalar>(
    a: &Matrix<T>,
    b: &Matrix<T>,
    tol: f64,
) -> Result<Vec<T>, LinalgError> {
    if is_zero_matrix(a) || is_zero_matrix(b) {
        return Err(LinalgError::ZeroMap);
    }
    let scale_a = a.inf_norm();
    let scale_b = b.inf_norm();
    probe_set::<T>(a.dim())
        .into_iter()
        .find(|x| {
            let ax = a.mul_vec(x);
            let bx = b.mul_vec(x);
            !is_zero_vec(&ax, scale_a, tol) && !is_zero_vec(&bx, scale_b, tol)
        })
        .ok_or(LinalgError::ZeroMap)
}

fn is_zero_matrix<T: Scalar>(m: &Matrix<T>) -> bool {
    m.entries().iter().all(|v| v.is_negligible(0.0, 0.0))
}

fn is_zero_vec<T: Scalar>(v: &[T], scale: f64, tol: f64) -> bool {
    v.iter().all(|x| x.is_negligible(scale, tol))
}

/// `|u ∧ v|` test on all 2x2 minors, scaled by `|u| (1 + |v|)`.
fn collinear<T: Scalar>(u: &[T], v: &[T], tol: f64) -> bool {
    let scale = norm_inf(u) * (1.0 + norm_inf(v));
    let n = u.len();
    for i in 0..n {
        for j in i + 1..n {
            let minor = u[i].clone() * v[j].clone() - u[j].clone() * v[i].clone();
            if !minor.is_negligible(scale, tol) {
                return false;
            }
        }
    }
    true
}

/// Classifies a conjugate pair `B = H A H^{-1}` with pointwise collinear images.
pub fn collinear_classify<T: Scalar>(
    a: &Matrix<T>,
    b: &Matrix<T>,
    h: &Matrix<T>,
    tol: f64,
) -> Result<CollinearityReport<T>, LinalgError> {
    let n = a.dim();
    if b.dim() != n || h.dim() != n {
        return Err(LinalgError::Dimension("A, B, H must share a dimension".into()));
    }
    if is_zero_matrix(a) {
        return Err(LinalgError::ZeroMap);
    }

    // (i) conjugacy, tested as B H = H A so no inverse is needed
    if h.inverse(tol).is_none() {
        return Err(LinalgError::NotConjugate);
    }
    let conj_scale = (b.inf_norm() * h.inf_norm()).max(h.inf_norm() * a.inf_norm());
    if !b.mul(h).sub(&h.mul(a)).is_negligible(conj_scale, tol) {
        return Err(LinalgError::NotConjugate);
    }

    // (ii) pointwise collinearity on the probe set
    for x in probe_set::<T>(n) {
        if !collinear(&a.mul_vec(&x), &b.mul_vec(&x), tol) {
            return Err(LinalgError::NotCollinear);
        }
    }

    let r = rank(a, tol);
    if r >= 2 {
        let x = find_nonkernel_vector(a, b, tol)?;
        let ax = a.mul_vec(&x);
        let bx = b.mul_vec(&x);
        let tau = dot(&bx, &ax) / dot(&ax, &ax);
        let resid = b.sub(&a.scale(&tau));
        if !resid.is_negligible(b.inf_norm().max(a.inf_norm()), tol) {
            return Err(LinalgError::NotCollinear);
        }
        return Ok(CollinearityReport {
            case: CollinearCase::A1,
            tau: Some(tau),
            basis: None,
            g: None,
            a_normal: None,
            b_normal: None,
            commuter: h.clone(),
        });
    }

    let scale = a.inf_norm();
    let lambda = a.trace();
    let (case, basis) = if !lambda.is_negligible(scale, tol) {
        (CollinearCase::A2, rank_one_eigen_basis(a))
    } else {
        (CollinearCase::A3, rank_one_nilpotent_basis(a, b, tol)?)
    };
    let basis_inv = basis.inverse(tol).ok_or(LinalgError::Degenerate(
        "normal-form basis is singular".into(),
    ))?;
    let a_n = basis_inv.mul(a).mul(&basis);
    let b_n = basis_inv.mul(b).mul(&basis);
    let h_n = basis_inv.mul(h).mul(&basis);

    // B must be concentrated in its first row in the normal basis
    let b_scale = b_n.inf_norm();
    for i in 1..n {
        for j in 0..n {
            if !b_n.get(i, j).is_negligible(b_scale, tol) {
                return Err(LinalgError::NotCollinear);
            }
        }
    }

    let g = match case {
        CollinearCase::A2 => {
            let lam = a_n.get(0, 0).clone();
            let mut g = Matrix::<T>::zeros(n);
            g.set(0, 0, T::one());
            for j in 1..n {
                g.set(0, j, b_n.get(0, j).clone() / lam.clone());
                g.set(j, j, T::one() / lam.clone());
            }
            g
        }
        CollinearCase::A3 => {
            let q = b_n.get(0, 1).clone();
            if q.is_negligible(b_scale, tol) {
                return Err(LinalgError::Degenerate("q vanished in the A3 basis".into()));
            }
            let mut g = Matrix::<T>::zeros(n);
            g.set(0, 0, T::one());
            for j in 1..n {
                g.set(1, j, b_n.get(0, j).clone());
            }
            for j in 2..n {
                g.set(j, j, T::one() / q.clone());
            }
            g
        }
        CollinearCase::A1 => unreachable!(),
    };
    let k_n = g.mul(&h_n);
    let commuter = basis.mul(&k_n).mul(&basis_inv);
    Ok(CollinearityReport {
        case,
        tau: None,
        basis: Some(basis),
        g: Some(g),
        a_normal: Some(a_n),
        b_normal: Some(b_n),
        commuter,
    })
}

fn largest_column<T: Scalar>(m: &Matrix<T>) -> Vec<T> {
    let j = (0..m.dim())
        .max_by(|&i, &k| {
            norm_inf(&m.column(i))
                .partial_cmp(&norm_inf(&m.column(k)))
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .unwrap_or(0);
    m.column(j)
}

/// Basis of `ker r^T` for a nonzero row `r`: `e_j − (r_j / r_p) e_p`, `j != p`.
fn row_kernel_basis<T: Scalar>(r: &[T]) -> Vec<Vec<T>> {
    let n = r.len();
    let p = (0..n)
        .max_by(|&i, &k| {
            r[i].magnitude()
                .partial_cmp(&r[k].magnitude())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .unwrap_or(0);
    (0..n)
        .filter(|&j| j != p)
        .map(|j| {
            let mut v = unit::<T>(n, j);
            v[p] = -(r[j].clone() / r[p].clone());
            v
        })
        .collect()
}

fn largest_row<T: Scalar>(m: &Matrix<T>) -> Vec<T> {
    let i = (0..m.dim())
        .max_by(|&i, &k| {
            norm_inf(&m.row(i))
                .partial_cmp(&norm_inf(&m.row(k)))
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .unwrap_or(0);
    m.row(i)
}

/// Rank one with nonzero trace: the image vector is an eigenvector for `λ = tr A`
/// and the kernel of `A` supplies the remaining basis vectors.
fn rank_one_eigen_basis<T: Scalar>(a: &Matrix<T>) -> Matrix<T> {
    let col = largest_column(a);
    let pivot = col
        .iter()
        .max_by(|u, v| {
            u.magnitude()
                .partial_cmp(&v.magnitude())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .cloned()
        .unwrap_or_else(T::one);
    let mut cols = vec![col.into_iter().map(|v| v / pivot.clone()).collect()];
    cols.extend(row_kernel_basis(&largest_row(a)));
    Matrix::from_columns(&cols)
}

/// Rank one, nilpotent: `e2` with `A e2, B e2 != 0`, `e1 = A e2`, then the
/// remaining standard vectors corrected by `f_i − α_i e2` so that `A e_i = 0`.
fn rank_one_nilpotent_basis<T: Scalar>(
    a: &Matrix<T>,
    b: &Matrix<T>,
    tol: f64,
) -> Result<Matrix<T>, LinalgError> {
    let n = a.dim();
    let e2 = find_nonkernel_vector(a, b, tol)?;
    let e1 = a.mul_vec(&e2);
    let e1_sq = dot(&e1, &e1);
    let mut cols = vec![e1.clone(), e2.clone()];
    let scale = norm_inf(&e1).max(norm_inf(&e2)).max(1.0);
    for i in 0..n {
        if cols.len() == n {
            break;
        }
        let f = unit::<T>(n, i);
        let mut trial = cols.clone();
        trial.push(f.clone());
        if Matrix::rank_of_vectors(&trial, scale, tol) < trial.len() {
            continue;
        }
        let alpha = dot(&a.mul_vec(&f), &e1) / e1_sq.clone();
        let e: Vec<T> = f
            .iter()
            .zip(&e2)
            .map(|(fi, ei)| fi.clone() - alpha.clone() * ei.clone())
            .collect();
        cols.push(e);
    }
    if cols.len() != n {
        return Err(LinalgError::Degenerate("could not extend A3 basis".into()));
    }
    Ok(Matrix::from_columns(&cols))
}
