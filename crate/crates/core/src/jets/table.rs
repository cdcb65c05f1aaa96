use std::path::Path;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::poly::{radial_form, radial_relation_defect, HomogeneousPoly};
use super::JetError;
use crate::linalg::parse_rational;

/// Truncated Taylor series `Σ_{n ≤ max_degree} p_n` at the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaylorTable {
    polys: Vec<HomogeneousPoly>,
}

#[derive(Serialize, Deserialize)]
struct TableFile {
    max_degree: u32,
    terms: Vec<(u32, u32, String)>,
}

impl TaylorTable {
    pub fn zero(max_degree: u32) -> Self {
        Self {
            polys: (0..=max_degree).map(HomogeneousPoly::zero).collect(),
        }
    }

    pub fn max_degree(&self) -> u32 {
        self.polys.len() as u32 - 1
    }

    pub fn polys(&self) -> &[HomogeneousPoly] {
        &self.polys
    }

    pub fn poly(&self, degree: u32) -> &HomogeneousPoly {
        &self.polys[degree as usize]
    }

    /// Adds `c·x^i y^j`.
    pub fn add_term(&mut self, i: u32, j: u32, c: &BigRational) -> Result<(), JetError> {
        let n = i + j;
        if n > self.max_degree() {
            return Err(JetError::DegreeMismatch { expected: self.max_degree(), found: n });
        }
        self.polys[n as usize].add_term(i, j, c)
    }

    /// Jet of `g(x² + y²)` for `g(t) = Σ a_i t^i`, truncated at `max_degree`.
    pub fn from_radial(a: &[BigRational], max_degree: u32) -> Self {
        let mut t = Self::zero(max_degree);
        for (i, ai) in a.iter().enumerate() {
            let n = 2 * i as u32;
            if n > max_degree {
                break;
            }
            t.polys[n as usize] = HomogeneousPoly::r2_power(i as u32).scale(ai);
        }
        t
    }

    pub fn from_json(text: &str) -> Result<Self, JetError> {
        let file: TableFile = serde_json::from_str(text).map_err(|e| JetError::Parse(e.to_string()))?;
        let mut t = Self::zero(file.max_degree);
        for (i, j, c) in &file.terms {
            let c = parse_rational(c).ok_or_else(|| JetError::Parse(format!("bad rational {c:?}")))?;
            t.add_term(*i, *j, &c)?;
        }
        Ok(t)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, JetError> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| JetError::Parse(format!("{}: {e}", path.as_ref().display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        let terms = self
            .polys
            .iter()
            .flat_map(|p| p.terms().map(|(i, j, c)| (i, j, c.to_string())).collect::<Vec<_>>())
            .collect();
        let file = TableFile { max_degree: self.max_degree(), terms };
        serde_json::to_string_pretty(&file).expect("table serializes")
    }
}

/// Result of reading a jet as a series in `x² + y²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Radialization {
    /// `p_{2i} = a_i (x² + y²)^i`, odd parts vanish; trailing zeros trimmed.
    Radial(Vec<BigRational>),
    /// The lowest degree whose part is not radial, with its defect.
    Fails { degree: u32, defect: HomogeneousPoly },
}

pub fn radialize_series(table: &TaylorTable) -> Radialization {
    let mut a = Vec::new();
    for (n, p) in table.polys().iter().enumerate() {
        let fail = || Radialization::Fails { degree: n as u32, defect: radial_relation_defect(p) };
        if n % 2 == 1 {
            if !p.is_zero() {
                return fail();
            }
            continue;
        }
        match radial_form(p) {
            Some((c, _)) => a.push(c),
            None => return fail(),
        }
    }
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    Radialization::Radial(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational;

    #[test]
    fn exponential_jet() {
        let a = vec![rational(1, 1), rational(1, 1), rational(1, 2)];
        let t = TaylorTable::from_radial(&a, 4);
        assert_eq!(radialize_series(&t), Radialization::Radial(a));
    }

    #[test]
    fn linear_jet_fails_at_one() {
        let mut t = TaylorTable::zero(3);
        t.add_term(1, 0, &rational(1, 1)).unwrap();
        match radialize_series(&t) {
            Radialization::Fails { degree, defect } => {
                assert_eq!(degree, 1);
                assert_eq!(defect, HomogeneousPoly::monomial(0, 1, rational(-1, 1)));
            }
            r => panic!("{r:?}"),
        }
    }

    #[test]
    fn zero_table_is_empty_series() {
        assert_eq!(radialize_series(&TaylorTable::zero(6)), Radialization::Radial(vec![]));
    }

    #[test]
    fn anisotropic_quadratic_fails_at_two() {
        let mut t = TaylorTable::from_radial(&[rational(1, 1)], 4);
        t.add_term(2, 0, &rational(1, 1)).unwrap();
        assert!(matches!(radialize_series(&t), Radialization::Fails { degree: 2, .. }));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"max_degree": 4, "terms": [[0, 0, "1"], [2, 0, "1"], [0, 2, "1"],
            [4, 0, "1/2"], [2, 2, "1"], [0, 4, "1/2"]]}"#;
        let t = TaylorTable::from_json(text).unwrap();
        assert_eq!(t, TaylorTable::from_radial(&[rational(1, 1), rational(1, 1), rational(1, 2)], 4));
        assert_eq!(TaylorTable::from_json(&t.to_json()).unwrap(), t);
    }

    #[test]
    fn json_errors() {
        assert!(matches!(TaylorTable::from_json("{"), Err(JetError::Parse(_))));
        let bad = r#"{"max_degree": 1, "terms": [[1, 1, "1"]]}"#;
        assert!(matches!(TaylorTable::from_json(bad), Err(JetError::DegreeMismatch { .. })));
        let bad = r#"{"max_degree": 1, "terms": [[1, 0, "1/0"]]}"#;
        assert!(matches!(TaylorTable::from_json(bad), Err(JetError::Parse(_))));
    }
}
