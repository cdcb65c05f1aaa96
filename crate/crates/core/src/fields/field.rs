use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use super::spec::FieldSpec;
use super::FieldError;
use crate::linalg::SquareMatrix;
use crate::point::{central_jacobian, JacobianFn, PlaneMap, Point, PointFn};

/// Default finite-difference step for Jacobians at the origin.
pub const FD_STEP: f64 = 1e-4;

/// Escape radius used for fields tangent to the unit circle.
pub const DISK_ESCAPE: f64 = 1.0 + 1e-6;
/// Escape radius for cataloged fields whose invariant curves leave the unit disk.
pub const LOOSE_ESCAPE: f64 = 4.0;

/// A real function on the plane with optional derivatives.
#[derive(Clone)]
pub struct ScalarField {
    eval: Arc<dyn Fn(Point) -> f64 + Send + Sync>,
    gradient: Option<PointFn>,
    hessian: Option<JacobianFn>,
}

impl ScalarField {
    pub fn new(f: impl Fn(Point) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            eval: Arc::new(f),
            gradient: None,
            hessian: None,
        }
    }

    pub fn with_gradient(mut self, g: impl Fn(Point) -> Point + Send + Sync + 'static) -> Self {
        self.gradient = Some(Arc::new(g));
        self
    }

    pub fn with_hessian(mut self, h: impl Fn(Point) -> SquareMatrix + Send + Sync + 'static) -> Self {
        self.hessian = Some(Arc::new(h));
        self
    }

    pub fn constant(c: f64) -> Self {
        Self::new(move |_| c)
            .with_gradient(|_| Point::ORIGIN)
            .with_hessian(|_| SquareMatrix::zeros(2))
    }

    /// `(x² + y²)/2`.
    pub fn half_radius_sq() -> Self {
        Self::new(|p| 0.5 * p.norm_sq())
            .with_gradient(|p| p)
            .with_hessian(|_| SquareMatrix::identity(2))
    }

    pub fn eval(&self, p: Point) -> f64 {
        (self.eval)(p)
    }

    pub fn has_gradient(&self) -> bool {
        self.gradient.is_some()
    }

    pub fn gradient(&self, p: Point) -> Option<Point> {
        self.gradient.as_ref().map(|g| g(p))
    }

    /// Analytic gradient if present, else central differences at step `h`.
    pub fn gradient_or_fd(&self, p: Point, h: f64) -> Point {
        match &self.gradient {
            Some(g) => g(p),
            None => {
                let dx = Point::new(h, 0.0);
                let dy = Point::new(0.0, h);
                Point::new(
                    (self.eval(p + dx) - self.eval(p - dx)) / (2.0 * h),
                    (self.eval(p + dy) - self.eval(p - dy)) / (2.0 * h),
                )
            }
        }
    }

    pub fn hessian(&self, p: Point) -> Option<SquareMatrix> {
        self.hessian.as_ref().map(|h| h(p))
    }
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarField")
            .field("gradient", &self.gradient.is_some())
            .field("hessian", &self.hessian.is_some())
            .finish()
    }
}

/// Flat parts `X̄`, `Ȳ` and the factor `β` of a field in flat Takens form.
#[derive(Debug, Clone)]
pub struct FlatForm {
    pub beta: Vec<f64>,
    pub xbar: ScalarField,
    pub ybar: ScalarField,
}

#[derive(Debug, Clone)]
pub struct FieldMeta {
    /// Constructor tag, e.g. `"rotation"`.
    pub kind: String,
    pub spec: Option<FieldSpec>,
    /// Whether `⟨F(z), z⟩ = 0` on the unit circle.
    pub tangent: bool,
    /// Trajectories farther than this from the origin count as escaped.
    pub escape_radius: f64,
    pub first_integral: Option<ScalarField>,
    pub flat_form: Option<FlatForm>,
}

impl FieldMeta {
    pub fn new(kind: impl Into<String>) -> Self {
        Self {
            kind: kind.into(),
            spec: None,
            tangent: false,
            escape_radius: DISK_ESCAPE,
            first_integral: None,
            flat_form: None,
        }
    }
}

/// A smooth vector field on (a neighborhood of) the closed unit disk.
#[derive(Clone)]
pub struct PlanarField {
    eval: PointFn,
    jacobian: Option<JacobianFn>,
    pub meta: FieldMeta,
}

impl PlanarField {
    pub fn new(f: impl Fn(Point) -> Point + Send + Sync + 'static) -> Self {
        Self {
            eval: Arc::new(f),
            jacobian: None,
            meta: FieldMeta::new("custom"),
        }
    }

    pub fn with_jacobian(mut self, j: impl Fn(Point) -> SquareMatrix + Send + Sync + 'static) -> Self {
        self.jacobian = Some(Arc::new(j));
        self
    }

    pub fn with_meta(mut self, meta: FieldMeta) -> Self {
        self.meta = meta;
        self
    }

    pub fn eval(&self, p: Point) -> Point {
        (self.eval)(p)
    }

    pub fn has_jacobian(&self) -> bool {
        self.jacobian.is_some()
    }

    pub fn jacobian(&self, p: Point) -> Option<SquareMatrix> {
        self.jacobian.as_ref().map(|j| j(p))
    }

    /// Analytic Jacobian where available, else central differences.
    pub fn jacobian_or_fd(&self, p: Point, h: f64) -> SquareMatrix {
        match &self.jacobian {
            Some(j) => j(p),
            None => central_jacobian(|q| self.eval(q), p, h),
        }
    }

    pub fn kind(&self) -> &str {
        &self.meta.kind
    }
}

impl fmt::Debug for PlanarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PlanarField")
            .field("kind", &self.meta.kind)
            .field("analytic_jacobian", &self.jacobian.is_some())
            .field("tangent", &self.meta.tangent)
            .finish()
    }
}

/// `∇F(O)`: the analytic Jacobian if present, otherwise central differences
/// with one Richardson level at steps `h` and `h/2`.
pub fn linearize(field: &PlanarField, h: f64) -> SquareMatrix {
    match &field.jacobian {
        Some(j) => j(Point::ORIGIN),
        None => central_jacobian(|q| field.eval(q), Point::ORIGIN, h),
    }
}

/// `F = −f'_y ∂x + f'_x ∂y`.
pub fn hamiltonian_of(f: &ScalarField) -> Result<PlanarField, FieldError> {
    let grad = f.gradient.clone().ok_or(FieldError::MissingGradient)?;
    let g = grad.clone();
    let mut field = PlanarField::new(move |p| {
        let d = g(p);
        Point::new(-d.y, d.x)
    });
    if let Some(hess) = f.hessian.clone() {
        field = field.with_jacobian(move |p| {
            let h = hess(p);
            SquareMatrix::from_rows(&[[-h.get(1, 0), -h.get(1, 1)], [*h.get(0, 0), *h.get(0, 1)]])
        });
    }
    let mut meta = FieldMeta::new("hamiltonian");
    meta.escape_radius = LOOSE_ESCAPE;
    meta.first_integral = Some(f.clone());
    Ok(field.with_meta(meta))
}

/// `(g_* F)(z) = Jg(g⁻¹(z)) · F(g⁻¹(z))`. The Jacobian of `g` comes from the
/// map itself (analytic when attached, finite differences otherwise).
pub fn pushforward(field: &PlanarField, g: &PlaneMap, g_inv: &PlaneMap) -> PlanarField {
    let f = field.clone();
    let g = g.clone();
    let g_inv_c = g_inv.clone();
    let out = PlanarField::new(move |z| {
        let w = g_inv_c.apply(z);
        let v = f.eval(w);
        let j = g.jacobian_at(w, FD_STEP);
        let m = j.mul_vec(&[v.x, v.y]);
        Point::new(m[0], m[1])
    });
    let mut meta = FieldMeta::new("pushforward");
    meta.escape_radius = field.meta.escape_radius.max(LOOSE_ESCAPE);
    if let Some(fi) = &field.meta.first_integral {
        let fi = fi.clone();
        let g_inv = g_inv.clone();
        meta.first_integral = Some(ScalarField::new(move |z| fi.eval(g_inv.apply(z))));
    }
    out.with_meta(meta)
}

/// `max |F₁ f'_x + F₂ f'_y|` over the samples.
pub fn first_integral_residual(
    field: &PlanarField,
    f: &ScalarField,
    samples: &[Point],
) -> Result<f64, FieldError> {
    let grad = f.gradient.as_ref().ok_or(FieldError::MissingGradient)?;
    Ok(samples
        .iter()
        .map(|&p| field.eval(p).dot(grad(p)).abs())
        .fold(0.0, f64::max))
}

/// `max |⟨F(z), z⟩|` over `n` equally spaced points of the unit circle.
pub fn tangency_residual(field: &PlanarField, n: usize) -> f64 {
    (0..n)
        .map(|j| {
            let a = 2.0 * PI * j as f64 / n as f64;
            let z = Point::new(a.cos(), a.sin());
            field.eval(z).dot(z).abs()
        })
        .fold(0.0, f64::max)
}

/// Shape of the linear part at the origin, up to conjugation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinearCase {
    /// Eigenvalues `±iν`, `ν > 0`.
    Rotation,
    /// Nonzero nilpotent.
    Nilpotent,
    /// The zero matrix.
    Zero,
    /// Anything else: the origin cannot be a topological center.
    NotCenter,
}

impl LinearCase {
    /// Index in the list of admissible 1-jets (1, 2, 3), or `None`.
    pub fn index(self) -> Option<u8> {
        match self {
            LinearCase::Rotation => Some(1),
            LinearCase::Nilpotent => Some(2),
            LinearCase::Zero => Some(3),
            LinearCase::NotCenter => None,
        }
    }
}

/// Trace/determinant test, relative to `max |a_ij|`.
pub fn linear_case(a: &SquareMatrix, tol: f64) -> LinearCase {
    let scale = a.max_abs();
    if scale <= tol {
        return LinearCase::Zero;
    }
    let tr = a.trace();
    let det = a.get(0, 0) * a.get(1, 1) - a.get(0, 1) * a.get(1, 0);
    if tr.abs() > tol * scale {
        return LinearCase::NotCenter;
    }
    if det > tol * scale * scale {
        LinearCase::Rotation
    } else if det.abs() <= tol * scale * scale {
        LinearCase::Nilpotent
    } else {
        LinearCase::NotCenter
    }
}
