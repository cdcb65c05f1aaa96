use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::scalar::Scalar;
use super::LinalgError;

/// Dense square matrix stored row-major.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<T>,
}

/// Real square matrix.
pub type SquareMatrix = Matrix<f64>;
/// Exact rational square matrix.
pub type RationalMatrix = Matrix<BigRational>;

impl<T: Scalar> Matrix<T> {
    /// Builds an `n x n` matrix from row-major entries. Requires `n >= 2` and
    /// finite entries.
    pub fn new(n: usize, data: Vec<T>) -> Result<Self, LinalgError> {
        if n < 2 {
            return Err(LinalgError::Dimension(format!("dimension {n} < 2")));
        }
        if data.len() != n * n {
            return Err(LinalgError::Dimension(format!(
                "expected {} entries, got {}",
                n * n,
                data.len()
            )));
        }
        if !T::EXACT && data.iter().any(|v| !v.to_f64().is_finite()) {
            return Err(LinalgError::NonFinite);
        }
        Ok(Self { n, data })
    }

    /// Panics on ragged or non-square input; intended for literals.
    pub fn from_rows<R: AsRef<[T]>>(rows: &[R]) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), n, "matrix rows must be square");
            data.extend_from_slice(r);
        }
        Self::new(n, data).expect("invalid matrix literal")
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![T::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_columns(cols: &[Vec<T>]) -> Self {
        let n = cols.len();
        let mut m = Self::zeros(n);
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        self.data[i * self.n..(i + 1) * self.n].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = T::zero();
                for k in 0..n {
                    acc = acc + self.get(i, k).clone() * other.get(k, j).clone();
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| {
                (0..self.n).fold(T::zero(), |acc, k| {
                    acc + self.get(i, k).clone() * x[k].clone()
                })
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &T) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|v| v.clone() * s.clone()).collect(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(T, T) -> T) -> Self {
        assert_eq!(self.n, other.n);
        Self {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a.clone(), b.clone()))
                .collect(),
        }
    }

    pub fn trace(&self) -> T {
        (0..self.n).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    /// Maximum absolute row sum.
    pub fn inf_norm(&self) -> f64 {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).magnitude()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise absolute value.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.magnitude()).fold(0.0, f64::max)
    }

    pub fn is_negligible(&self, scale: f64, tol: f64) -> bool {
        self.data.iter().all(|v| v.is_negligible(scale, tol))
    }

    /// Gauss-Jordan inverse with partial pivoting; `None` when a pivot is
    /// negligible relative to the matrix scale.
    pub fn inverse(&self, tol: f64) -> Option<Self> {
        let n = self.n;
        let scale = self.inf_norm();
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let piv = (col..n).max_by(|&r1, &r2| {
                a.get(r1, col)
                    .magnitude()
                    .partial_cmp(&a.get(r2, col).magnitude())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })?;
            if a.get(piv, col).is_negligible(scale, tol) {
                return None;
            }
            a.swap_rows(piv, col);
            inv.swap_rows(piv, col);
            let p = a.get(col, col).clone();
            for j in 0..n {
                a.set(col, j, a.get(col, j).clone() / p.clone());
                inv.set(col, j, inv.get(col, j).clone() / p.clone());
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f == T::zero() {
                    continue;
                }
                for j in 0..n {
                    let v = a.get(r, j).clone() - f.clone() * a.get(col, j).clone();
                    a.set(r, j, v);
                    let w = inv.get(r, j).clone() - f.clone() * inv.get(col, j).clone();
                    inv.set(r, j, w);
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 == r2 {
            return;
        }
        for j in 0..self.n {
            self.data.swap(r1 * self.n + j, r2 * self.n + j);
        }
    }

    /// Rank of the column set `cols` by Gaussian elimination.
    pub fn rank_of_vectors(cols: &[Vec<T>], scale: f64, tol: f64) -> usize {
        if cols.is_empty() {
            return 0;
        }
        let rows = cols[0].len();
        let mut m: Vec<Vec<T>> = cols.to_vec();
        let mut rank = 0;
        for r in 0..rows {
            let piv = (rank..m.len()).max_by(|&a, &b| {
                m[a][r]
                    .magnitude()
                    .partial_cmp(&m[b][r].magnitude())
                    .unwrap_or(std::cmp::Ordering::Equal)
            });
            let Some(piv) = piv else { break };
            if m[piv][r].is_negligible(scale, tol) {
                continue;
            }
            m.swap(rank, piv);
            let p = m[rank][r].clone();
            for k in rank + 1..m.len() {
                let f = m[k][r].clone() / p.clone();
                for c in 0..rows {
                    let v = m[k][c].clone() - f.clone() * m[rank][c].clone();
                    m[k][c] = v;
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn to_f64(&self) -> SquareMatrix {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|v| v.to_f64()).collect(),
        }
    }
}

impl SquareMatrix {
    /// Largest absolute entrywise difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.sub(other).max_abs()
    }

    pub fn to_nalgebra(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_row_slice(self.n, self.n, &self.data)
    }
}

impl RationalMatrix {
    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let rows: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&v| BigRational::from_i64(v)).collect())
            .collect();
        Self::from_rows(&rows)
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.chunks(self.n.max(1))).finish()
    }
}

impl fmt::Display for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|v| format!("{v:>12.6}")).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

pub(crate) fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub(crate) fn norm_inf<T: Scalar>(v: &[T]) -> f64 {
    v.iter().map(|x| x.magnitude()).fold(0.0, f64::max)
}

pub(crate) fn unit<T: Scalar>(n: usize, i: usize) -> Vec<T> {
    let mut e = vec![T::zero(); n];
    e[i] = T::one();
    e
}
