use super::JetError;
use crate::fields::{PlanarField, ScalarField};
use crate::point::Point;

/// Below this both `x + X̄` and `y + Ȳ` count as vanishing.
pub const DEGENERATE_TOL: f64 = 1e-12;

fn shifted(field: &PlanarField, z: Point) -> Result<(f64, f64), JetError> {
    let flat = field.meta.flat_form.as_ref().ok_or(JetError::MissingFlatForm)?;
    Ok((z.x + flat.xbar.eval(z), z.y + flat.ybar.eval(z)))
}

/// `ν` with `f'_x = (x + X̄)ν`, `f'_y = (y + Ȳ)ν`, read from the equation
/// with the larger coefficient.
pub fn rigidity_factor(f: &ScalarField, field: &PlanarField, z: Point) -> Result<f64, JetError> {
    let g = f.gradient(z).ok_or(JetError::MissingGradient)?;
    let (u, v) = shifted(field, z)?;
    if u.abs().max(v.abs()) < DEGENERATE_TOL {
        return Err(JetError::DegeneratePoint(z));
    }
    Ok(if u.abs() >= v.abs() { g.x / u } else { g.y / v })
}

/// `max |f'_y·(x + X̄) − f'_x·(y + Ȳ)|` over the samples; the origin is
/// skipped.
pub fn rigidity_residual(f: &ScalarField, field: &PlanarField, samples: &[Point]) -> Result<f64, JetError> {
    let mut worst: f64 = 0.0;
    for &z in samples {
        if z == Point::ORIGIN {
            continue;
        }
        let g = f.gradient(z).ok_or(JetError::MissingGradient)?;
        let (u, v) = shifted(field, z)?;
        if u.abs().max(v.abs()) < DEGENERATE_TOL {
            return Err(JetError::DegeneratePoint(z));
        }
        worst = worst.max((g.y * u - g.x * v).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{make_field, FieldSpec, FlatPartSpec};

    fn plain_takens() -> PlanarField {
        make_field(&FieldSpec::TakensFlat {
            beta: vec![1.0],
            xbar: FlatPartSpec::zero(),
            ybar: FlatPartSpec::zero(),
        })
        .unwrap()
    }

    fn samples() -> Vec<Point> {
        (0..20).map(|i| Point::new(0.9 * (i as f64 * 0.7).cos(), 0.05 * i as f64 - 0.5)).collect()
    }

    #[test]
    fn radius_squared_is_rigid() {
        let f = ScalarField::new(|p: Point| p.norm_sq()).with_gradient(|p| p * 2.0);
        assert!(rigidity_residual(&f, &plain_takens(), &samples()).unwrap() < 1e-15);
        let nu = rigidity_factor(&f, &plain_takens(), Point::new(0.3, 0.1)).unwrap();
        assert!((nu - 2.0).abs() < 1e-15);
    }

    #[test]
    fn coordinate_function_is_not() {
        let f = ScalarField::new(|p: Point| p.x).with_gradient(|_| Point::new(1.0, 0.0));
        let s = samples();
        let expected = s.iter().map(|z| z.y.abs()).fold(0.0, f64::max);
        assert!((rigidity_residual(&f, &plain_takens(), &s).unwrap() - expected).abs() < 1e-15);
    }

    #[test]
    fn radial_exponential_is_rigid() {
        let f = ScalarField::new(|p: Point| p.norm_sq().exp()).with_gradient(|p| p * (2.0 * p.norm_sq().exp()));
        assert!(rigidity_residual(&f, &plain_takens(), &samples()).unwrap() <= 1e-9);
    }

    #[test]
    fn radial_flat_pair_keeps_radial_integral_rigid() {
        let field = make_field(&FieldSpec::TakensFlat {
            beta: vec![1.0],
            xbar: FlatPartSpec::new(0.3, vec![(1, 0, 1.0)]),
            ybar: FlatPartSpec::new(0.3, vec![(0, 1, 1.0)]),
        })
        .unwrap();
        let f = ScalarField::half_radius_sq();
        assert!(rigidity_residual(&f, &field, &samples()).unwrap() < 1e-15);
    }

    #[test]
    fn errors() {
        let f = ScalarField::new(|p: Point| p.x);
        assert_eq!(
            rigidity_residual(&f, &plain_takens(), &[Point::new(0.1, 0.0)]).unwrap_err(),
            JetError::MissingGradient
        );
        let rot = make_field(&FieldSpec::Rotation { b: 1.0 }).unwrap();
        let g = ScalarField::half_radius_sq();
        assert_eq!(rigidity_residual(&g, &rot, &[Point::new(0.1, 0.0)]).unwrap_err(), JetError::MissingFlatForm);
        let z = Point::new(1e-13, 0.0);
        assert_eq!(rigidity_residual(&g, &plain_takens(), &[z]).unwrap_err(), JetError::DegeneratePoint(z));
    }
}
