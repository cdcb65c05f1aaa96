use std::f64::consts::PI;

use super::field::{
    tangency_residual, FieldMeta, FlatForm, PlanarField, ScalarField, DISK_ESCAPE, LOOSE_ESCAPE,
};
use super::spec::{FieldSpec, FlatPartSpec, Poly2};
use super::FieldError;
use crate::linalg::SquareMatrix;
use crate::point::Point;

fn invalid(msg: impl Into<String>) -> FieldError {
    FieldError::InvalidSpec(msg.into())
}

fn finite(v: f64, name: &str) -> Result<f64, FieldError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(invalid(format!("{name} must be finite")))
    }
}

/// Builds the field described by `spec`, with an analytic Jacobian.
pub fn make_field(spec: &FieldSpec) -> Result<PlanarField, FieldError> {
    let mut field = match spec {
        FieldSpec::Rotation { b } => rotation(*b)?,
        FieldSpec::MonomialHamiltonian { p, q, b } => monomial_hamiltonian(*p, *q, *b)?,
        FieldSpec::QuadraticProduct { forms } => quadratic_product(forms)?,
        FieldSpec::TakensFlat { beta, xbar, ybar } => takens_flat(beta, xbar, ybar)?,
        FieldSpec::TakensNonflat { delta, k, alpha } => takens_nonflat(*delta, *k, *alpha)?,
        FieldSpec::Custom { fx, fy } => custom(fx, fy)?,
    };
    field.meta.spec = Some(spec.clone());
    Ok(field)
}

fn rotation(b: f64) -> Result<PlanarField, FieldError> {
    if finite(b, "b")? == 0.0 {
        return Err(invalid("rotation needs b != 0"));
    }
    let mut meta = FieldMeta::new("rotation");
    meta.tangent = true;
    meta.first_integral = Some(ScalarField::half_radius_sq());
    Ok(PlanarField::new(move |p| Point::new(-b * p.y, b * p.x))
        .with_jacobian(move |_| SquareMatrix::from_rows(&[[0.0, -b], [b, 0.0]]))
        .with_meta(meta))
}

fn monomial_hamiltonian(p: i64, q: i64, b: f64) -> Result<PlanarField, FieldError> {
    if p < 1 || q < 1 {
        return Err(invalid("monomial Hamiltonian needs p, q >= 1"));
    }
    if finite(b, "b")? == 0.0 {
        return Err(invalid("monomial Hamiltonian needs b != 0"));
    }
    let (pi, qi) = (p as i32, q as i32);
    let (pf, qf) = (p as f64, q as f64);
    let f = ScalarField::new(move |z| 0.5 * b * (z.x.powi(2 * pi) + z.y.powi(2 * qi)))
        .with_gradient(move |z| Point::new(b * pf * z.x.powi(2 * pi - 1), b * qf * z.y.powi(2 * qi - 1)))
        .with_hessian(move |z| {
            SquareMatrix::from_rows(&[
                [b * pf * (2.0 * pf - 1.0) * z.x.powi(2 * pi - 2), 0.0],
                [0.0, b * qf * (2.0 * qf - 1.0) * z.y.powi(2 * qi - 2)],
            ])
        });
    let mut meta = FieldMeta::new("monomial_hamiltonian");
    meta.tangent = p == 1 && q == 1;
    meta.escape_radius = if meta.tangent { DISK_ESCAPE } else { LOOSE_ESCAPE };
    meta.first_integral = Some(f);
    Ok(PlanarField::new(move |z| {
        Point::new(-b * qf * z.y.powi(2 * qi - 1), b * pf * z.x.powi(2 * pi - 1))
    })
    .with_jacobian(move |z| {
        SquareMatrix::from_rows(&[
            [0.0, -b * qf * (2.0 * qf - 1.0) * z.y.powi(2 * qi - 2)],
            [b * pf * (2.0 * pf - 1.0) * z.x.powi(2 * pi - 2), 0.0],
        ])
    })
    .with_meta(meta))
}

fn quad_form(m: &[[f64; 2]; 2], z: Point) -> f64 {
    m[0][0] * z.x * z.x + 2.0 * m[0][1] * z.x * z.y + m[1][1] * z.y * z.y
}

fn quad_grad(m: &[[f64; 2]; 2], z: Point) -> Point {
    Point::new(
        2.0 * (m[0][0] * z.x + m[0][1] * z.y),
        2.0 * (m[0][1] * z.x + m[1][1] * z.y),
    )
}

/// Value, gradient and Hessian of `Π Q_i`.
fn product_jet(forms: &[[[f64; 2]; 2]], z: Point) -> (f64, Point, [[f64; 2]; 2]) {
    let n = forms.len();
    let vals: Vec<f64> = forms.iter().map(|m| quad_form(m, z)).collect();
    let grads: Vec<Point> = forms.iter().map(|m| quad_grad(m, z)).collect();
    let prod_except = |skip: &[usize]| -> f64 {
        (0..n).filter(|k| !skip.contains(k)).map(|k| vals[k]).product()
    };
    let value = prod_except(&[]);
    let mut grad = Point::ORIGIN;
    let mut hess = [[0.0; 2]; 2];
    for i in 0..n {
        let pi = prod_except(&[i]);
        grad = grad + grads[i] * pi;
        for r in 0..2 {
            for c in 0..2 {
                hess[r][c] += 2.0 * forms[i][r][c] * pi;
            }
        }
        for j in 0..n {
            if j == i {
                continue;
            }
            let pij = prod_except(&[i, j]);
            let (gi, gj) = (grads[i].to_array(), grads[j].to_array());
            for r in 0..2 {
                for c in 0..2 {
                    hess[r][c] += gi[r] * gj[c] * pij;
                }
            }
        }
    }
    (value, grad, hess)
}

fn quadratic_product(forms: &[[[f64; 2]; 2]]) -> Result<PlanarField, FieldError> {
    if forms.is_empty() {
        return Err(invalid("quadratic product needs at least one form"));
    }
    for (i, m) in forms.iter().enumerate() {
        if m.iter().flatten().any(|v| !v.is_finite()) {
            return Err(invalid(format!("form {i} has non-finite entries")));
        }
        if (m[0][1] - m[1][0]).abs() > 1e-12 * (m[0][1].abs() + m[1][0].abs()).max(1.0) {
            return Err(invalid(format!("form {i} is not symmetric")));
        }
        if !(m[0][0] > 0.0 && m[0][0] * m[1][1] - m[0][1] * m[1][0] > 0.0) {
            return Err(invalid(format!("form {i} is not positive definite")));
        }
    }
    let probes = [Point::new(1.0, 0.0), Point::new(0.0, 1.0), Point::new(1.0, 1.0)];
    for i in 0..forms.len() {
        for j in i + 1..forms.len() {
            let ratios: Vec<f64> = probes
                .iter()
                .map(|&d| quad_form(&forms[i], d) / quad_form(&forms[j], d))
                .collect();
            if ratios.iter().all(|r| (r - ratios[0]).abs() <= 1e-12 * ratios[0].abs()) {
                return Err(invalid(format!("forms {i} and {j} are proportional")));
            }
        }
    }
    let fv = forms.to_vec();
    let fg = forms.to_vec();
    let fh = forms.to_vec();
    let fe = forms.to_vec();
    let fj = forms.to_vec();
    let f = ScalarField::new(move |z| product_jet(&fv, z).0)
        .with_gradient(move |z| product_jet(&fg, z).1)
        .with_hessian(move |z| SquareMatrix::from_rows(&product_jet(&fh, z).2));
    let mut meta = FieldMeta::new("quadratic_product");
    meta.escape_radius = LOOSE_ESCAPE;
    meta.first_integral = Some(f);
    let mut field = PlanarField::new(move |z| {
        let g = product_jet(&fe, z).1;
        Point::new(-g.y, g.x)
    })
    .with_jacobian(move |z| {
        let h = product_jet(&fj, z).2;
        SquareMatrix::from_rows(&[[-h[1][0], -h[1][1]], [h[0][0], h[0][1]]])
    });
    field.meta = meta;
    field.meta.tangent = tangency_residual(&field, 64) <= 1e-12;
    Ok(field)
}

fn poly_t(c: &[f64], t: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * t + a)
}

fn poly_t_deriv(c: &[f64], t: f64) -> f64 {
    c.iter()
        .enumerate()
        .skip(1)
        .rev()
        .fold(0.0, |acc, (i, &a)| acc * t + i as f64 * a)
}

/// True when `xbar = x·P` and `ybar = y·P` for the same flat factor, so that
/// the flat part is radial and the field is a reparametrized rotation.
fn radial_flat_pair(xbar: &FlatPartSpec, ybar: &FlatPartSpec) -> bool {
    if xbar.is_zero() && ybar.is_zero() {
        return true;
    }
    if xbar.c != ybar.c {
        return false;
    }
    let xs = xbar.poly.normalized();
    let ys = ybar.poly.normalized();
    if xs.iter().any(|t| t.0 == 0) || ys.iter().any(|t| t.1 == 0) {
        return false;
    }
    let px: Vec<(u32, u32, f64)> = xs.iter().map(|&(i, j, c)| (i - 1, j, c)).collect();
    let py: Vec<(u32, u32, f64)> = ys.iter().map(|&(i, j, c)| (i, j - 1, c)).collect();
    px == py
}

fn flat_scalar(spec: &FlatPartSpec) -> ScalarField {
    let a = spec.clone();
    let b = spec.clone();
    ScalarField::new(move |p| a.eval(p)).with_gradient(move |p| b.gradient(p))
}

fn takens_flat(beta: &[f64], xbar: &FlatPartSpec, ybar: &FlatPartSpec) -> Result<PlanarField, FieldError> {
    if beta.is_empty() || beta[0] == 0.0 {
        return Err(invalid("takens_flat needs beta(0) != 0"));
    }
    if beta.iter().any(|v| !v.is_finite()) || !xbar.finite() || !ybar.finite() {
        return Err(invalid("takens_flat parameters must be finite"));
    }
    let (be, xe, ye) = (beta.to_vec(), xbar.clone(), ybar.clone());
    let (bj, xj, yj) = (beta.to_vec(), xbar.clone(), ybar.clone());
    let mut field = PlanarField::new(move |z| {
        let s = poly_t(&be, z.norm_sq());
        Point::new(-s * (z.y + ye.eval(z)), s * (z.x + xe.eval(z)))
    })
    .with_jacobian(move |z| {
        let t = z.norm_sq();
        let s = poly_t(&bj, t);
        let ds = poly_t_deriv(&bj, t);
        let (xv, yv) = (xj.eval(z), yj.eval(z));
        let (xg, yg) = (xj.gradient(z), yj.gradient(z));
        SquareMatrix::from_rows(&[
            [
                -2.0 * z.x * ds * (z.y + yv) - s * yg.x,
                -2.0 * z.y * ds * (z.y + yv) - s * (1.0 + yg.y),
            ],
            [
                2.0 * z.x * ds * (z.x + xv) + s * (1.0 + xg.x),
                2.0 * z.y * ds * (z.x + xv) + s * xg.y,
            ],
        ])
    });
    let mut meta = FieldMeta::new("takens_flat");
    meta.tangent = tangency_residual(&field, 64) <= 1e-14;
    meta.escape_radius = if meta.tangent { DISK_ESCAPE } else { LOOSE_ESCAPE };
    if radial_flat_pair(xbar, ybar) {
        meta.first_integral = Some(ScalarField::half_radius_sq());
    }
    meta.flat_form = Some(FlatForm {
        beta: beta.to_vec(),
        xbar: flat_scalar(xbar),
        ybar: flat_scalar(ybar),
    });
    field.meta = meta;
    Ok(field)
}

fn takens_nonflat(delta: f64, k: i64, alpha: f64) -> Result<PlanarField, FieldError> {
    if delta != 1.0 && delta != -1.0 {
        return Err(invalid("takens_nonflat needs delta = ±1"));
    }
    if k < 1 {
        return Err(invalid("takens_nonflat needs k >= 1"));
    }
    let alpha = finite(alpha, "alpha")?;
    let k = k as i32;
    let g = move |t: f64| delta * t.powi(k) + alpha * t.powi(2 * k);
    let dg = move |t: f64| delta * k as f64 * t.powi(k - 1) + 2.0 * k as f64 * alpha * t.powi(2 * k - 1);
    let two_pi = 2.0 * PI;
    let mut meta = FieldMeta::new("takens_nonflat");
    meta.escape_radius = DISK_ESCAPE;
    Ok(PlanarField::new(move |z| {
        let s = g(z.norm_sq());
        Point::new(-two_pi * z.y + s * z.x, two_pi * z.x + s * z.y)
    })
    .with_jacobian(move |z| {
        let t = z.norm_sq();
        let (s, ds) = (g(t), dg(t));
        SquareMatrix::from_rows(&[
            [s + 2.0 * z.x * z.x * ds, -two_pi + 2.0 * z.x * z.y * ds],
            [two_pi + 2.0 * z.x * z.y * ds, s + 2.0 * z.y * z.y * ds],
        ])
    })
    .with_meta(meta))
}

fn custom(fx: &Poly2, fy: &Poly2) -> Result<PlanarField, FieldError> {
    if fx.0.iter().chain(&fy.0).any(|t| !t.2.is_finite()) {
        return Err(invalid("custom coefficients must be finite"));
    }
    let (ex, ey) = (fx.clone(), fy.clone());
    let (jx, jy) = (fx.clone(), fy.clone());
    let mut field = PlanarField::new(move |z| Point::new(ex.eval(z), ey.eval(z))).with_jacobian(move |z| {
        let (gx, gy) = (jx.gradient(z), jy.gradient(z));
        SquareMatrix::from_rows(&[[gx.x, gx.y], [gy.x, gy.y]])
    });
    let mut meta = FieldMeta::new("custom");
    meta.tangent = tangency_residual(&field, 64) <= 1e-12;
    field.meta = meta;
    Ok(field)
}

/// A representative list of cataloged fields, used for catalog-wide checks.
pub fn catalog() -> Vec<FieldSpec> {
    let radial = |c: f64| {
        (
            FlatPartSpec::new(c, vec![(1, 0, 1.0)]),
            FlatPartSpec::new(c, vec![(0, 1, 1.0)]),
        )
    };
    let (xr, yr) = radial(0.3);
    vec![
        FieldSpec::Rotation { b: 1.0 },
        FieldSpec::Rotation { b: -2.0 },
        FieldSpec::MonomialHamiltonian { p: 1, q: 1, b: 1.0 },
        FieldSpec::MonomialHamiltonian { p: 1, q: 2, b: 1.0 },
        FieldSpec::MonomialHamiltonian { p: 2, q: 2, b: 1.0 },
        FieldSpec::QuadraticProduct {
            forms: vec![[[1.0, 0.0], [0.0, 1.0]], [[1.0, 0.0], [0.0, 2.0]]],
        },
        FieldSpec::TakensFlat {
            beta: vec![1.0],
            xbar: FlatPartSpec::zero(),
            ybar: FlatPartSpec::zero(),
        },
        FieldSpec::TakensFlat {
            beta: vec![1.0, 0.5],
            xbar: xr,
            ybar: yr,
        },
        FieldSpec::TakensFlat {
            beta: vec![1.0],
            xbar: FlatPartSpec::new(0.5, vec![(1, 0, 1.0)]),
            ybar: FlatPartSpec::new(0.5, vec![(1, 0, 1.0)]),
        },
        FieldSpec::TakensNonflat { delta: -1.0, k: 1, alpha: 0.0 },
        FieldSpec::TakensNonflat { delta: 1.0, k: 2, alpha: 0.5 },
    ]
}
