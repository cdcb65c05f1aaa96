use std::path::Path;

use serde::{Deserialize, Serialize};

use super::FieldError;
use crate::point::Point;

/// Bivariate polynomial `Σ c·x^i·y^j` stored as `(i, j, c)` triples.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Poly2(pub Vec<(u32, u32, f64)>);

impl Poly2 {
    pub fn eval(&self, p: Point) -> f64 {
        self.0
            .iter()
            .map(|&(i, j, c)| c * p.x.powi(i as i32) * p.y.powi(j as i32))
            .sum()
    }

    pub fn gradient(&self, p: Point) -> Point {
        let mut g = Point::ORIGIN;
        for &(i, j, c) in &self.0 {
            if i > 0 {
                g.x += c * i as f64 * p.x.powi(i as i32 - 1) * p.y.powi(j as i32);
            }
            if j > 0 {
                g.y += c * j as f64 * p.x.powi(i as i32) * p.y.powi(j as i32 - 1);
            }
        }
        g
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|t| t.2 == 0.0)
    }

    /// Terms merged by monomial, zeros dropped, sorted.
    pub fn normalized(&self) -> Vec<(u32, u32, f64)> {
        let mut terms: Vec<(u32, u32, f64)> = Vec::new();
        for &(i, j, c) in &self.0 {
            match terms.iter_mut().find(|t| t.0 == i && t.1 == j) {
                Some(t) => t.2 += c,
                None => terms.push((i, j, c)),
            }
        }
        terms.retain(|t| t.2 != 0.0);
        terms.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        terms
    }

    fn finite(&self) -> bool {
        self.0.iter().all(|t| t.2.is_finite())
    }
}

/// Flat function `c·exp(−1/r²)·poly(x, y)`, zero at the origin.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FlatPartSpec {
    #[serde(default)]
    pub c: f64,
    #[serde(default)]
    pub poly: Poly2,
}

// exp(−1/r²) underflows to zero once 1/r² exceeds this
const FLAT_CUTOFF: f64 = 745.0;

impl FlatPartSpec {
    pub fn new(c: f64, poly: Vec<(u32, u32, f64)>) -> Self {
        Self { c, poly: Poly2(poly) }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.c == 0.0 || self.poly.is_zero()
    }

    pub fn eval(&self, p: Point) -> f64 {
        let r2 = p.norm_sq();
        if self.c == 0.0 || r2 == 0.0 || 1.0 / r2 > FLAT_CUTOFF {
            return 0.0;
        }
        self.c * (-1.0 / r2).exp() * self.poly.eval(p)
    }

    pub fn gradient(&self, p: Point) -> Point {
        let r2 = p.norm_sq();
        if self.c == 0.0 || r2 == 0.0 || 1.0 / r2 > FLAT_CUTOFF {
            return Point::ORIGIN;
        }
        let e = (-1.0 / r2).exp();
        let de = 2.0 * e / (r2 * r2);
        let pv = self.poly.eval(p);
        let pg = self.poly.gradient(p);
        Point::new(
            self.c * (de * p.x * pv + e * pg.x),
            self.c * (de * p.y * pv + e * pg.y),
        )
    }

    pub(crate) fn finite(&self) -> bool {
        self.c.is_finite() && self.poly.finite()
    }
}

fn one() -> f64 {
    1.0
}

fn unit_beta() -> Vec<f64> {
    vec![1.0]
}

/// Declarative description of a cataloged field, read from JSON as
/// `{"type": "...", ...parameters}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum FieldSpec {
    /// `−b·y ∂x + b·x ∂y`
    Rotation {
        #[serde(default = "one")]
        b: f64,
    },
    /// Hamiltonian field of `(b/2)(x^{2p} + y^{2q})`.
    #[serde(alias = "monomial")]
    MonomialHamiltonian {
        p: i64,
        q: i64,
        #[serde(default = "one")]
        b: f64,
    },
    /// Hamiltonian field of the product of positive-definite quadratic forms.
    QuadraticProduct { forms: Vec<[[f64; 2]; 2]> },
    /// `β(x²+y²)·(−(y+Ȳ) ∂x + (x+X̄) ∂y)` with flat `X̄`, `Ȳ`; `beta` lists
    /// the coefficients of `β` in powers of `t = x²+y²`.
    TakensFlat {
        #[serde(default = "unit_beta")]
        beta: Vec<f64>,
        #[serde(default)]
        xbar: FlatPartSpec,
        #[serde(default)]
        ybar: FlatPartSpec,
    },
    /// `−2πy ∂x + 2πx ∂y + (δ r^{2k} + α r^{4k})(x ∂x + y ∂y)`.
    TakensNonflat {
        delta: f64,
        k: i64,
        #[serde(default)]
        alpha: f64,
    },
    /// Polynomial components.
    Custom { fx: Poly2, fy: Poly2 },
}

impl FieldSpec {
    pub fn from_json(s: &str) -> Result<Self, FieldError> {
        serde_json::from_str(s).map_err(|e| FieldError::InvalidSpec(e.to_string()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, FieldError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| FieldError::InvalidSpec(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("field spec serializes")
    }

    pub fn name(&self) -> &'static str {
        match self {
            FieldSpec::Rotation { .. } => "rotation",
            FieldSpec::MonomialHamiltonian { .. } => "monomial_hamiltonian",
            FieldSpec::QuadraticProduct { .. } => "quadratic_product",
            FieldSpec::TakensFlat { .. } => "takens_flat",
            FieldSpec::TakensNonflat { .. } => "takens_nonflat",
            FieldSpec::Custom { .. } => "custom",
        }
    }
}
