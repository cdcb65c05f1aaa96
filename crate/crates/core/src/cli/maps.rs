use serde::{Deserialize, Serialize};

use super::CliError;
use crate::fields::{PlanarField, Poly2, ScalarField};
use crate::flow::{flow_map, IntegratorConfig};
use crate::point::{PlaneMap, Point};

/// A time function on the disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum AlphaSpec {
    Constant { value: f64 },
    Polynomial { terms: Poly2 },
    /// `Σ a·cos(kx·x + ky·y) + b·sin(kx·x + ky·y)` over `(kx, ky, a, b)`.
    Trig { terms: Vec<(f64, f64, f64, f64)> },
}

impl AlphaSpec {
    pub fn to_field(&self) -> ScalarField {
        match self.clone() {
            AlphaSpec::Constant { value } => ScalarField::constant(value),
            AlphaSpec::Polynomial { terms } => {
                let g = terms.clone();
                ScalarField::new(move |p| terms.eval(p)).with_gradient(move |p| g.gradient(p))
            }
            AlphaSpec::Trig { terms } => {
                let g = terms.clone();
                ScalarField::new(move |p| {
                    terms
                        .iter()
                        .map(|&(kx, ky, a, b)| {
                            let (s, c) = (kx * p.x + ky * p.y).sin_cos();
                            a * c + b * s
                        })
                        .sum()
                })
                .with_gradient(move |p| {
                    g.iter().fold(Point::ORIGIN, |acc, &(kx, ky, a, b)| {
                        let (s, c) = (kx * p.x + ky * p.y).sin_cos();
                        let d = -a * s + b * c;
                        acc + Point::new(kx * d, ky * d)
                    })
                })
            }
        }
    }
}

/// A self-map of the disk to be analyzed by `shift`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum MapSpec {
    /// `z ↦ Ψ(z, α(z))`.
    FlowBy { alpha: AlphaSpec },
    /// Euclidean rotation about the origin; only for rotation-symmetric fields.
    RotationBy { angle: f64 },
    Translation { dx: f64, dy: f64 },
    /// Applied in the listed order, first map first.
    Composition { maps: Vec<MapSpec> },
}

fn rotation_symmetric(field: &PlanarField) -> bool {
    let (s, c) = 0.7f64.sin_cos();
    let rot = |p: Point| Point::new(c * p.x - s * p.y, s * p.x + c * p.y);
    crate::polar::probe_grid().into_iter().all(|(phi, rho)| {
        let z = crate::polar::polar_point(phi, 2.0 * rho);
        field.eval(rot(z)).dist(rot(field.eval(z))) <= 1e-9 * (1.0 + field.eval(z).norm())
    })
}

impl MapSpec {
    /// Inline JSON, a JSON file path, or one of the shorthands
    /// `flow-by:<t>`, `rotation-by:<angle>`, `translation:<dx>,<dy>`.
    pub fn parse(arg: &str) -> Result<Self, CliError> {
        let arg = arg.trim();
        let num = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Input(format!("bad number {s:?} in map spec")))
        };
        if let Some(v) = arg.strip_prefix("flow-by:") {
            return Ok(MapSpec::FlowBy { alpha: AlphaSpec::Constant { value: num(v)? } });
        }
        if let Some(v) = arg.strip_prefix("rotation-by:") {
            return Ok(MapSpec::RotationBy { angle: num(v)? });
        }
        if let Some(v) = arg.strip_prefix("translation:") {
            let (dx, dy) = v
                .split_once(',')
                .ok_or_else(|| CliError::Input("translation needs dx,dy".into()))?;
            return Ok(MapSpec::Translation { dx: num(dx)?, dy: num(dy)? });
        }
        let text = if arg.starts_with('{') {
            arg.to_string()
        } else {
            std::fs::read_to_string(arg).map_err(|e| CliError::Input(format!("{arg}: {e}")))?
        };
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("map spec: {e}")))
    }

    pub fn build(&self, field: &PlanarField, cfg: &IntegratorConfig) -> Result<PlaneMap, CliError> {
        Ok(match self {
            MapSpec::FlowBy { alpha: AlphaSpec::Constant { value } } => flow_map(field, *value, cfg),
            MapSpec::FlowBy { alpha } => crate::flow::shift_map(field, &alpha.to_field(), cfg),
            MapSpec::RotationBy { angle } => {
                if !rotation_symmetric(field) {
                    return Err(CliError::Input("rotation-by needs a rotation-symmetric field".into()));
                }
                let (s, c) = angle.sin_cos();
                PlaneMap::linear(crate::linalg::SquareMatrix::from_rows(&[[c, -s], [s, c]]))
            }
            MapSpec::Translation { dx, dy } => {
                let d = Point::new(*dx, *dy);
                PlaneMap::new(move |z| z + d)
            }
            MapSpec::Composition { maps } => {
                if maps.is_empty() {
                    return Err(CliError::Input("empty composition".into()));
                }
                let mut out = PlaneMap::identity();
                for m in maps {
                    out = m.build(field, cfg)?.compose(&out);
                }
                out
            }
        })
    }

    /// The time function when the map is a single shift along the flow.
    pub fn alpha(&self) -> Option<ScalarField> {
        match self {
            MapSpec::FlowBy { alpha } => Some(alpha.to_field()),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{make_field, FieldSpec};

    #[test]
    fn shorthands() {
        assert_eq!(
            MapSpec::parse("flow-by:0.3").unwrap(),
            MapSpec::FlowBy { alpha: AlphaSpec::Constant { value: 0.3 } }
        );
        assert_eq!(MapSpec::parse("rotation-by:0.4").unwrap(), MapSpec::RotationBy { angle: 0.4 });
        assert_eq!(MapSpec::parse("translation:0.1, 0").unwrap(), MapSpec::Translation { dx: 0.1, dy: 0.0 });
        assert!(MapSpec::parse("flow-by:x").is_err());
    }

    #[test]
    fn json_composition() {
        let m = MapSpec::parse(
            r#"{"type": "composition", "maps": [{"type": "rotation_by", "angle": 0.5},
                {"type": "flow_by", "alpha": {"type": "constant", "value": -0.5}}]}"#,
        )
        .unwrap();
        let f = make_field(&FieldSpec::Rotation { b: 1.0 }).unwrap();
        let h = m.build(&f, &IntegratorConfig::default()).unwrap();
        let z = Point::new(0.3, 0.2);
        assert!(h.apply(z).dist(z) < 1e-9);
    }

    #[test]
    fn rotation_needs_symmetry() {
        let f = make_field(&FieldSpec::MonomialHamiltonian { p: 1, q: 2, b: 1.0 }).unwrap();
        assert!(MapSpec::RotationBy { angle: 0.1 }.build(&f, &IntegratorConfig::default()).is_err());
    }

    #[test]
    fn trig_gradient() {
        let a = AlphaSpec::Trig { terms: vec![(1.0, 2.0, 0.3, -0.2)] }.to_field();
        let p = Point::new(0.2, -0.1);
        let h = 1e-6;
        let fd = (a.eval(p + Point::new(h, 0.0)) - a.eval(p - Point::new(h, 0.0))) / (2.0 * h);
        assert!((a.gradient(p).unwrap().x - fd).abs() < 1e-8);
    }
}
