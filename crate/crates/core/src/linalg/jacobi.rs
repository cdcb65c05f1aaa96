use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::matrix::SquareMatrix;
use super::LinalgError;

/// The six possible Jacobi matrices at the origin of an orbit-preserving
/// diffeomorphism, for a nonzero linear part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JacobiFamily {
    /// `[[cos bω, sin bω], [−sin bω, cos bω]]`
    Rotation,
    /// `[[cos bω, sin bω], [sin bω, −cos bω]]`
    Reflection,
    /// `[[1, bω], [0, 1]]`
    UnipotentPlus,
    /// `[[−1, bω], [0, −1]]`
    UnipotentMinus,
    /// `[[1, bω], [0, −1]]`
    MixedPlusMinus,
    /// `[[−1, bω], [0, 1]]`
    MixedMinusPlus,
}

impl JacobiFamily {
    pub const ALL: [JacobiFamily; 6] = [
        JacobiFamily::Rotation,
        JacobiFamily::Reflection,
        JacobiFamily::UnipotentPlus,
        JacobiFamily::UnipotentMinus,
        JacobiFamily::MixedPlusMinus,
        JacobiFamily::MixedMinusPlus,
    ];

    /// Whether the family belongs to the rotation-type linear part.
    pub fn is_rotation_type(self) -> bool {
        matches!(self, JacobiFamily::Rotation | JacobiFamily::Reflection)
    }

    pub fn preserves_orientation(self) -> bool {
        matches!(
            self,
            JacobiFamily::Rotation | JacobiFamily::UnipotentPlus | JacobiFamily::UnipotentMinus
        )
    }

    /// The families that coincide with the Jacobi matrix of a time-ω flow map.
    pub fn is_flow_family(self) -> bool {
        matches!(self, JacobiFamily::Rotation | JacobiFamily::UnipotentPlus)
    }
}

impl fmt::Display for JacobiFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            JacobiFamily::Rotation => "rotation",
            JacobiFamily::Reflection => "reflection",
            JacobiFamily::UnipotentPlus => "unipotent+",
            JacobiFamily::UnipotentMinus => "unipotent-",
            JacobiFamily::MixedPlusMinus => "mixed+-",
            JacobiFamily::MixedMinusPlus => "mixed-+",
        };
        f.pad(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JacobiClass {
    pub family: JacobiFamily,
    /// Flow time whose 1-jet the matrix reproduces (principal branch for the
    /// rotation-type families).
    pub omega: f64,
}

impl JacobiClass {
    /// Reconstructs the family matrix for the normal-form parameter `b`.
    pub fn matrix(&self, b: f64) -> SquareMatrix {
        family_matrix(self.family, self.omega, b)
    }
}

pub fn family_matrix(family: JacobiFamily, omega: f64, b: f64) -> SquareMatrix {
    let (s, c) = (b * omega).sin_cos();
    let bw = b * omega;
    let rows = match family {
        JacobiFamily::Rotation => [[c, s], [-s, c]],
        JacobiFamily::Reflection => [[c, s], [s, -c]],
        JacobiFamily::UnipotentPlus => [[1.0, bw], [0.0, 1.0]],
        JacobiFamily::UnipotentMinus => [[-1.0, bw], [0.0, -1.0]],
        JacobiFamily::MixedPlusMinus => [[1.0, bw], [0.0, -1.0]],
        JacobiFamily::MixedMinusPlus => [[-1.0, bw], [0.0, 1.0]],
    };
    SquareMatrix::from_rows(&rows)
}

/// Shape of a nonzero linear part of a planar field with a center.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinearPartKind {
    /// `[[0, b], [−b, 0]]`
    Rotation { b: f64 },
    /// `[[0, b], [0, 0]]`
    Nilpotent { b: f64 },
}

impl LinearPartKind {
    pub fn b(&self) -> f64 {
        match *self {
            LinearPartKind::Rotation { b } | LinearPartKind::Nilpotent { b } => b,
        }
    }

    pub fn matrix(&self) -> SquareMatrix {
        match *self {
            LinearPartKind::Rotation { b } => SquareMatrix::from_rows(&[[0.0, b], [-b, 0.0]]),
            LinearPartKind::Nilpotent { b } => SquareMatrix::from_rows(&[[0.0, b], [0.0, 0.0]]),
        }
    }
}

/// Reads `A` as one of the two normal forms, allowing a signed `b` and the
/// transposed nilpotent shape `[[0, 0], [c, 0]]`. The returned flag is true
/// when the transposed shape was matched (coordinates must then be swapped).
pub fn read_normal_form(a: &SquareMatrix, tol: f64) -> Result<(LinearPartKind, bool), LinalgError> {
    if a.dim() != 2 {
        return Err(LinalgError::Dimension("Jacobi classification needs n = 2".into()));
    }
    let scale = a.max_abs();
    if scale == 0.0 {
        return Err(LinalgError::ZeroMap);
    }
    let small = |v: f64| v.abs() <= tol * scale;
    let (p, q, r, s) = (*a.get(0, 0), *a.get(0, 1), *a.get(1, 0), *a.get(1, 1));
    if !small(p) || !small(s) {
        return Err(LinalgError::NotNormalForm);
    }
    if !small(q) && small(q + r) {
        return Ok((LinearPartKind::Rotation { b: q }, false));
    }
    if !small(q) && small(r) {
        return Ok((LinearPartKind::Nilpotent { b: q }, false));
    }
    if small(q) && !small(r) {
        return Ok((LinearPartKind::Nilpotent { b: r }, true));
    }
    Err(LinalgError::NotNormalForm)
}

/// Classifies the Jacobi matrix `H` of an orbit-preserving map against the
/// normal-form linear part `A`.
pub fn jacobi_classify(h: &SquareMatrix, a: &SquareMatrix, tol: f64) -> Result<JacobiClass, LinalgError> {
    let (kind, swapped) = read_normal_form(a, tol)?;
    let h = if swapped { swap_coordinates(h) } else { h.clone() };
    classify_in_normal_form(&h, kind, tol)
}

fn swap_coordinates(m: &SquareMatrix) -> SquareMatrix {
    SquareMatrix::from_rows(&[[*m.get(1, 1), *m.get(1, 0)], [*m.get(0, 1), *m.get(0, 0)]])
}

pub(crate) fn classify_in_normal_form(
    h: &SquareMatrix,
    kind: LinearPartKind,
    tol: f64,
) -> Result<JacobiClass, LinalgError> {
    if h.dim() != 2 {
        return Err(LinalgError::Dimension("Jacobi classification needs n = 2".into()));
    }
    let eps = tol * h.max_abs().max(1.0);
    let close = |x: f64, y: f64| (x - y).abs() <= eps;
    let (p, q, r, s) = (*h.get(0, 0), *h.get(0, 1), *h.get(1, 0), *h.get(1, 1));
    let b = kind.b();
    match kind {
        LinearPartKind::Rotation { .. } => {
            if !close(p * p + q * q, 1.0) {
                return Err(LinalgError::NotInFamily);
            }
            let omega = principal_angle(q.atan2(p)) / b;
            if close(r, -q) && close(s, p) {
                Ok(JacobiClass { family: JacobiFamily::Rotation, omega })
            } else if close(r, q) && close(s, -p) {
                Ok(JacobiClass { family: JacobiFamily::Reflection, omega })
            } else {
                Err(LinalgError::NotInFamily)
            }
        }
        LinearPartKind::Nilpotent { .. } => {
            if !close(r, 0.0) {
                return Err(LinalgError::NotInFamily);
            }
            let sign = |v: f64| {
                if close(v, 1.0) {
                    Some(true)
                } else if close(v, -1.0) {
                    Some(false)
                } else {
                    None
                }
            };
            let family = match (sign(p), sign(s)) {
                (Some(true), Some(true)) => JacobiFamily::UnipotentPlus,
                (Some(false), Some(false)) => JacobiFamily::UnipotentMinus,
                (Some(true), Some(false)) => JacobiFamily::MixedPlusMinus,
                (Some(false), Some(true)) => JacobiFamily::MixedMinusPlus,
                _ => return Err(LinalgError::NotInFamily),
            };
            Ok(JacobiClass { family, omega: q / b })
        }
    }
}

/// Maps an angle into `(−π, π]`.
pub fn principal_angle(x: f64) -> f64 {
    let mut y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y -= 2.0 * PI;
    }
    y
}

/// Change of basis `S` with `S^{-1} A S` in normal form, for any nonzero `A`
/// whose spectrum is `{±iν}` (ν > 0) or `{0, 0}`.
///
/// Rotation type: `S = [s1, −A s1 / ν]` gives `[[0, ν], [−ν, 0]]`.
/// Nilpotent: `S = [A s2, s2]` with `A s2 != 0` gives `[[0, 1], [0, 0]]`.
pub fn normalizing_basis(a: &SquareMatrix, tol: f64) -> Result<(SquareMatrix, LinearPartKind), LinalgError> {
    if a.dim() != 2 {
        return Err(LinalgError::Dimension("normal form needs n = 2".into()));
    }
    let scale = a.max_abs();
    if scale == 0.0 {
        return Err(LinalgError::ZeroMap);
    }
    let tr = a.trace();
    let det = a.get(0, 0) * a.get(1, 1) - a.get(0, 1) * a.get(1, 0);
    if tr.abs() > tol * scale {
        return Err(LinalgError::NotNormalForm);
    }
    if det > tol * scale * scale {
        let nu = det.sqrt();
        let s1 = [1.0, 0.0];
        let as1 = [*a.get(0, 0), *a.get(1, 0)];
        let s2 = [-as1[0] / nu, -as1[1] / nu];
        let s = SquareMatrix::from_rows(&[[s1[0], s2[0]], [s1[1], s2[1]]]);
        Ok((s, LinearPartKind::Rotation { b: nu }))
    } else if det.abs() <= tol * scale * scale {
        let s2 = if a.get(0, 0).abs().max(a.get(1, 0).abs()) >= a.get(0, 1).abs().max(a.get(1, 1).abs()) {
            [1.0, 0.0]
        } else {
            [0.0, 1.0]
        };
        let s1 = [
            a.get(0, 0) * s2[0] + a.get(0, 1) * s2[1],
            a.get(1, 0) * s2[0] + a.get(1, 1) * s2[1],
        ];
        let s = SquareMatrix::from_rows(&[[s1[0], s2[0]], [s1[1], s2[1]]]);
        Ok((s, LinearPartKind::Nilpotent { b: 1.0 }))
    } else {
        Err(LinalgError::NotNormalForm)
    }
}

/// Jacobi classification for an arbitrary linear part with a center-type
/// spectrum: conjugates `(H, A)` into the normal basis first.
pub fn classify_jet(h: &SquareMatrix, a: &SquareMatrix, tol: f64) -> Result<(JacobiClass, LinearPartKind), LinalgError> {
    let (s, kind) = normalizing_basis(a, tol)?;
    let s_inv = s.inverse(1e-14).ok_or(LinalgError::NotNormalForm)?;
    let h_n = s_inv.mul(h).mul(&s);
    Ok((classify_in_normal_form(&h_n, kind, tol)?, kind))
}
