//! Points of the plane and self-maps of the plane.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::linalg::SquareMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn dist(self, other: Point) -> f64 {
        (self - other).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    pub fn from_complex(z: Complex64) -> Self {
        Self::new(z.re, z.im)
    }

    pub fn to_array(self) -> [f64; 2] {
        [self.x, self.y]
    }

    pub fn from_array(a: [f64; 2]) -> Self {
        Self::new(a[0], a[1])
    }

    pub fn nan() -> Self {
        Self::new(f64::NAN, f64::NAN)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

pub type PointFn = Arc<dyn Fn(Point) -> Point + Send + Sync>;
pub type JacobianFn = Arc<dyn Fn(Point) -> SquareMatrix + Send + Sync>;

/// A self-map of the plane. Evaluators signal failure (for instance a flow
/// integration that could not complete) by returning a non-finite point.
#[derive(Clone)]
pub struct PlaneMap {
    eval: PointFn,
    jacobian: Option<JacobianFn>,
}

impl PlaneMap {
    pub fn new(f: impl Fn(Point) -> Point + Send + Sync + 'static) -> Self {
        Self {
            eval: Arc::new(f),
            jacobian: None,
        }
    }

    pub fn with_jacobian(mut self, j: impl Fn(Point) -> SquareMatrix + Send + Sync + 'static) -> Self {
        self.jacobian = Some(Arc::new(j));
        self
    }

    pub fn identity() -> Self {
        Self::new(|p| p).with_jacobian(|_| SquareMatrix::identity(2))
    }

    /// `z ↦ M z`.
    pub fn linear(m: SquareMatrix) -> Self {
        let (a, b, c, d) = (*m.get(0, 0), *m.get(0, 1), *m.get(1, 0), *m.get(1, 1));
        Self::new(move |p| Point::new(a * p.x + b * p.y, c * p.x + d * p.y))
            .with_jacobian(move |_| m.clone())
    }

    pub fn apply(&self, p: Point) -> Point {
        (self.eval)(p)
    }

    pub fn has_jacobian(&self) -> bool {
        self.jacobian.is_some()
    }

    /// Analytic Jacobian when supplied, otherwise central differences with
    /// one Richardson level at step `h`.
    pub fn jacobian_at(&self, p: Point, h: f64) -> SquareMatrix {
        match &self.jacobian {
            Some(j) => j(p),
            None => central_jacobian(|q| self.apply(q), p, h),
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &PlaneMap) -> PlaneMap {
        let outer = self.clone();
        let inner = inner.clone();
        PlaneMap::new(move |p| outer.apply(inner.apply(p)))
    }
}

impl fmt::Debug for PlaneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PlaneMap")
            .field("analytic_jacobian", &self.jacobian.is_some())
            .finish()
    }
}

/// Central-difference Jacobian with one Richardson level (steps `h`, `h/2`).
pub fn central_jacobian(f: impl Fn(Point) -> Point, p: Point, h: f64) -> SquareMatrix {
    let diff = |e: Point, s: f64| {
        let fp = f(p + e * s);
        let fm = f(p - e * s);
        (fp - fm) * (0.5 / s)
    };
    let mut cols = Vec::with_capacity(2);
    for e in [Point::new(1.0, 0.0), Point::new(0.0, 1.0)] {
        let d1 = diff(e, h);
        let d2 = diff(e, 0.5 * h);
        let r = (d2 * 4.0 - d1) * (1.0 / 3.0);
        cols.push(vec![r.x, r.y]);
    }
    SquareMatrix::from_columns(&cols)
}
