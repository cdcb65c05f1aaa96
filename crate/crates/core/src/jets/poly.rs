use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::JetError;

fn int(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// A homogeneous polynomial `Σ c_i x^i y^{n−i}` with exact rational
/// coefficients; `coeffs[i]` multiplies `x^i y^{n−i}`.
#[derive(Clone, PartialEq, Eq)]
pub struct HomogeneousPoly {
    degree: u32,
    coeffs: Vec<BigRational>,
}

impl HomogeneousPoly {
    pub fn zero(degree: u32) -> Self {
        Self {
            degree,
            coeffs: vec![BigRational::zero(); degree as usize + 1],
        }
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a homogeneous polynomial has at least one coefficient");
        Self {
            degree: coeffs.len() as u32 - 1,
            coeffs,
        }
    }

    /// `c·x^i y^j`.
    pub fn monomial(i: u32, j: u32, c: BigRational) -> Self {
        let mut p = Self::zero(i + j);
        p.coeffs[i as usize] = c;
        p
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(0, 0, c)
    }

    /// `(x² + y²)^k` expanded binomially.
    pub fn r2_power(k: u32) -> Self {
        let mut p = Self::zero(2 * k);
        let mut binom = BigInt::one();
        for m in 0..=k {
            p.coeffs[2 * m as usize] = BigRational::from_integer(binom.clone());
            binom = binom * BigInt::from(k - m) / BigInt::from(m + 1);
        }
        p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `x^i y^j`; zero off the degree.
    pub fn coeff(&self, i: u32, j: u32) -> BigRational {
        if i + j == self.degree {
            self.coeffs[i as usize].clone()
        } else {
            BigRational::zero()
        }
    }

    /// Adds `c` to the coefficient of `x^i y^j`.
    pub fn add_term(&mut self, i: u32, j: u32, c: &BigRational) -> Result<(), JetError> {
        if i + j != self.degree {
            return Err(JetError::DegreeMismatch { expected: self.degree, found: i + j });
        }
        self.coeffs[i as usize] += c;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Nonzero terms as `(i, j, c)`.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &BigRational)> {
        let n = self.degree;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (i as u32, n - i as u32, c))
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, JetError> {
        if self.degree != other.degree {
            return Err(JetError::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        Ok(Self {
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, JetError> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.degree + other.degree);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }

    pub fn mul_x(&self) -> Self {
        let mut coeffs = vec![BigRational::zero()];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::from_coeffs(coeffs)
    }

    pub fn mul_y(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.push(BigRational::zero());
        Self::from_coeffs(coeffs)
    }

    /// `∂p/∂x`, or `None` for degree 0.
    pub fn dx(&self) -> Option<Self> {
        (self.degree > 0).then(|| {
            Self::from_coeffs((1..=self.degree as usize).map(|i| &self.coeffs[i] * int(i as u64)).collect())
        })
    }

    /// `∂p/∂y`, or `None` for degree 0.
    pub fn dy(&self) -> Option<Self> {
        let n = self.degree as usize;
        (n > 0).then(|| Self::from_coeffs((0..n).map(|i| &self.coeffs[i] * int((n - i) as u64)).collect()))
    }

    /// `n·p − (x·p'_x + y·p'_y)`, identically zero by homogeneity.
    pub fn euler_residual(&self) -> Self {
        match (self.dx(), self.dy()) {
            (Some(px), Some(py)) => {
                let lhs = self.scale(&int(self.degree as u64));
                let rhs = px.mul_x().add(&py.mul_y()).expect("same degree");
                lhs.sub(&rhs).expect("same degree")
            }
            _ => Self::zero(0),
        }
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        use num_traits::ToPrimitive;
        let n = self.degree as i32;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.to_f64().unwrap_or(f64::NAN) * x.powi(i as i32) * y.powi(n - i as i32))
            .sum()
    }
}

impl fmt::Debug for HomogeneousPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for HomogeneousPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, j, c) in self.terms() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let mono = match (i, j) {
                (0, 0) => String::new(),
                _ => {
                    let px = match i {
                        0 => String::new(),
                        1 => "x".into(),
                        _ => format!("x^{i}"),
                    };
                    let py = match j {
                        0 => String::new(),
                        1 => "y".into(),
                        _ => format!("y^{j}"),
                    };
                    px + &py
                }
            };
            if mono.is_empty() || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            f.write_str(&mono)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `x·p'_y − y·p'_x`, of the same degree as `p`.
pub fn radial_relation_defect(p: &HomogeneousPoly) -> HomogeneousPoly {
    match (p.dx(), p.dy()) {
        (Some(px), Some(py)) => py.mul_x().sub(&px.mul_y()).expect("same degree"),
        _ => HomogeneousPoly::zero(p.degree()),
    }
}

/// `q` with `p = (x² + y²)·q`, via `n·x·p = (x² + y²)·p'_x`: `q = p'_x/(n·x)`.
pub fn divide_by_r2(p: &HomogeneousPoly) -> Result<HomogeneousPoly, JetError> {
    let n = p.degree();
    if n < 2 || !radial_relation_defect(p).is_zero() {
        return Err(JetError::NotDivisible(n));
    }
    let px = p.dx().expect("degree >= 2");
    if !px.coeffs()[0].is_zero() {
        return Err(JetError::NotDivisible(n));
    }
    let inv_n = BigRational::one() / int(n as u64);
    let q = HomogeneousPoly::from_coeffs(px.coeffs()[1..].iter().map(|c| c * &inv_n).collect());
    if q.mul(&HomogeneousPoly::r2_power(1)) != *p {
        return Err(JetError::NotDivisible(n));
    }
    Ok(q)
}

/// `(a, k)` with `p = a·(x² + y²)^k`, `(0, 0)` for the zero polynomial, and
/// `None` when `p` is not radial.
pub fn radial_form(p: &HomogeneousPoly) -> Option<(BigRational, u32)> {
    if p.is_zero() {
        return Some((BigRational::zero(), 0));
    }
    let mut q = p.clone();
    let mut k = 0;
    while q.degree() > 0 {
        q = divide_by_r2(&q).ok()?;
        k += 1;
    }
    Some((q.coeffs()[0].clone(), k))
}

/// The matrix of `p ↦ x·p'_y − y·p'_x` on degree-`n` polynomials in the
/// monomial basis `x^i y^{n−i}`.
pub fn defect_matrix(n: u32) -> crate::linalg::RationalMatrix {
    let dim = n as usize + 1;
    let mut m = crate::linalg::RationalMatrix::zeros(dim);
    for i in 0..dim {
        let e = HomogeneousPoly::monomial(i as u32, n - i as u32, BigRational::one());
        for (row, c) in radial_relation_defect(&e).coeffs().iter().enumerate() {
            m.set(row, i, c.clone());
        }
    }
    m
}

/// Dimension of the kernel of the defect map in degree `n`, by exact
/// elimination.
pub fn defect_kernel_dimension(n: u32) -> usize {
    let m = defect_matrix(n);
    m.dim() - crate::linalg::rank(&m, 0.0)
}
