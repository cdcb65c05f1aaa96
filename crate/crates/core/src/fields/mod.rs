//! The catalog of planar fields with a singular point at the origin, plus
//! linearization, Hamiltonian fields, pushforwards and first-integral checks.

mod catalog;
mod field;
mod spec;

pub use catalog::{catalog, make_field};
pub use field::{
    first_integral_residual, hamiltonian_of, linear_case, linearize, pushforward,
    tangency_residual, FieldMeta, FlatForm, LinearCase, PlanarField, ScalarField, DISK_ESCAPE,
    FD_STEP, LOOSE_ESCAPE,
};
pub use spec::{FieldSpec, FlatPartSpec, Poly2};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FieldError {
    #[error("invalid field spec: {0}")]
    InvalidSpec(String),
    #[error("scalar field has no gradient")]
    MissingGradient,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{spectrum, SquareMatrix};
    use crate::point::{PlaneMap, Point};

    fn samples() -> Vec<Point> {
        (0..50)
            .map(|i| {
                let a = 0.7 * i as f64;
                let r = 0.05 + 0.9 * ((i * 37 % 50) as f64 / 50.0);
                Point::new(r * a.cos(), r * a.sin())
            })
            .collect()
    }

    fn field(spec: FieldSpec) -> PlanarField {
        make_field(&spec).unwrap()
    }

    #[test]
    fn rotation_components() {
        let f = field(FieldSpec::Rotation { b: 1.0 });
        assert_eq!(f.eval(Point::new(0.3, 0.2)), Point::new(-0.2, 0.3));
        assert_eq!(linearize(&f, FD_STEP), SquareMatrix::from_rows(&[[0.0, -1.0], [1.0, 0.0]]));
    }

    #[test]
    fn monomial_components() {
        let f = field(FieldSpec::MonomialHamiltonian { p: 1, q: 2, b: 1.0 });
        let z = Point::new(0.5, 0.4);
        assert_eq!(f.eval(z), Point::new(-2.0 * 0.4f64.powi(3), 0.5));
        assert_eq!(linearize(&f, FD_STEP), SquareMatrix::from_rows(&[[0.0, 0.0], [1.0, 0.0]]));
        let f = field(FieldSpec::MonomialHamiltonian { p: 2, q: 2, b: 1.0 });
        assert_eq!(linearize(&f, FD_STEP), SquareMatrix::zeros(2));
    }

    #[test]
    fn takens_nonflat_components() {
        let f = field(FieldSpec::TakensNonflat { delta: -1.0, k: 1, alpha: 0.0 });
        let (x, y) = (0.3, -0.4);
        let r2 = x * x + y * y;
        let two_pi = 2.0 * std::f64::consts::PI;
        let v = f.eval(Point::new(x, y));
        assert!((v.x - (-two_pi * y - x * r2)).abs() < 1e-15);
        assert!((v.y - (two_pi * x - y * r2)).abs() < 1e-15);
    }

    #[test]
    fn invalid_specs_rejected() {
        let bad = [
            FieldSpec::Rotation { b: 0.0 },
            FieldSpec::MonomialHamiltonian { p: 0, q: 2, b: 1.0 },
            FieldSpec::TakensNonflat { delta: 0.5, k: 1, alpha: 0.0 },
            FieldSpec::TakensNonflat { delta: 1.0, k: 0, alpha: 0.0 },
            FieldSpec::QuadraticProduct { forms: vec![[[1.0, 0.0], [0.0, -1.0]]] },
            FieldSpec::QuadraticProduct {
                forms: vec![[[1.0, 0.0], [0.0, 1.0]], [[2.0, 0.0], [0.0, 2.0]]],
            },
            FieldSpec::TakensFlat {
                beta: vec![0.0, 1.0],
                xbar: FlatPartSpec::zero(),
                ybar: FlatPartSpec::zero(),
            },
        ];
        for s in bad {
            assert!(matches!(make_field(&s), Err(FieldError::InvalidSpec(_))), "{s:?}");
        }
    }

    #[test]
    fn catalog_vanishes_at_origin() {
        for s in catalog() {
            assert_eq!(field(s.clone()).eval(Point::ORIGIN), Point::ORIGIN, "{s:?}");
        }
    }

    #[test]
    fn analytic_and_numeric_jacobians_agree() {
        let pts = [Point::ORIGIN, Point::new(0.3, -0.2), Point::new(-0.5, 0.6)];
        for s in catalog() {
            let f = field(s.clone());
            let numeric = PlanarField::new({
                let f = f.clone();
                move |p| f.eval(p)
            });
            for &p in &pts {
                let a = f.jacobian(p).unwrap();
                let n = numeric.jacobian_or_fd(p, FD_STEP);
                assert!(a.max_abs_diff(&n) < 1e-8, "{s:?} at {p}: {a:?} vs {n:?}");
            }
        }
    }

    #[test]
    fn tangency_on_unit_circle() {
        for (s, tol) in [
            (FieldSpec::Rotation { b: 3.0 }, 1e-12),
            (FieldSpec::MonomialHamiltonian { p: 1, q: 1, b: 2.0 }, 1e-12),
        ] {
            let f = field(s);
            assert!(f.meta.tangent);
            assert!(tangency_residual(&f, 256) <= tol);
        }
        let f = field(FieldSpec::MonomialHamiltonian { p: 2, q: 2, b: 1.0 });
        assert!(!f.meta.tangent);
        assert!(tangency_residual(&f, 256) > 0.1);
    }

    #[test]
    fn spectra_across_catalog() {
        for s in catalog() {
            let f = field(s.clone());
            let e = spectrum(&linearize(&f, FD_STEP));
            let purely_imaginary = e.iter().all(|z| z.re.abs() < 1e-12 && z.im.abs() > 1e-12);
            let has_zero = e.iter().any(|z| z.norm() < 1e-12);
            match &s {
                FieldSpec::MonomialHamiltonian { p, q, .. } if *p.max(q) >= 2 => assert!(has_zero, "{s:?}"),
                FieldSpec::QuadraticProduct { .. } => assert!(has_zero),
                _ => assert!(purely_imaginary, "{s:?}: {e:?}"),
            }
        }
    }

    #[test]
    fn hamiltonian_fields() {
        let f = ScalarField::half_radius_sq();
        let h = hamiltonian_of(&f).unwrap();
        assert_eq!(h.eval(Point::new(0.2, 0.5)), Point::new(-0.5, 0.2));

        let quartic = ScalarField::new(|p| (p.x.powi(4) + p.y.powi(4)) / 4.0)
            .with_gradient(|p| Point::new(p.x.powi(3), p.y.powi(3)));
        let h = hamiltonian_of(&quartic).unwrap();
        assert_eq!(h.eval(Point::new(0.5, 2.0)), Point::new(-8.0, 0.125));

        let q1q2 = ScalarField::new(|p| p.norm_sq() * (p.x * p.x + 2.0 * p.y * p.y)).with_gradient(|p| {
            let (q1, q2) = (p.norm_sq(), p.x * p.x + 2.0 * p.y * p.y);
            Point::new(2.0 * p.x * q2 + 2.0 * p.x * q1, 2.0 * p.y * q2 + 4.0 * p.y * q1)
        });
        let h = hamiltonian_of(&q1q2).unwrap();
        assert!(first_integral_residual(&h, &q1q2, &samples()).unwrap() < 1e-14);

        assert_eq!(
            hamiltonian_of(&ScalarField::new(|p| p.x)).unwrap_err(),
            FieldError::MissingGradient
        );
    }

    #[test]
    fn first_integral_residuals() {
        let rot = field(FieldSpec::Rotation { b: 1.0 });
        let r2 = ScalarField::new(|p| p.norm_sq()).with_gradient(|p| p * 2.0);
        assert_eq!(first_integral_residual(&rot, &r2, &samples()).unwrap(), 0.0);
        let x = ScalarField::new(|p| p.x).with_gradient(|_| Point::new(1.0, 0.0));
        let max_y = samples().iter().map(|p| p.y.abs()).fold(0.0, f64::max);
        assert_eq!(first_integral_residual(&rot, &x, &samples()).unwrap(), max_y);
        for s in catalog() {
            let f = field(s.clone());
            if let Some(fi) = &f.meta.first_integral {
                assert!(first_integral_residual(&f, fi, &samples()).unwrap() < 1e-12, "{s:?}");
            }
        }
    }

    #[test]
    fn pushforward_examples() {
        let rot = field(FieldSpec::Rotation { b: 1.0 });
        let id = pushforward(&rot, &PlaneMap::identity(), &PlaneMap::identity());
        for p in samples() {
            assert_eq!(id.eval(p), rot.eval(p));
        }
        let scale = PlaneMap::linear(SquareMatrix::from_rows(&[[2.0, 0.0], [0.0, 2.0]]));
        let unscale = PlaneMap::linear(SquareMatrix::from_rows(&[[0.5, 0.0], [0.0, 0.5]]));
        let pf = pushforward(&rot, &scale, &unscale);
        for p in samples() {
            assert!(pf.eval(p).dist(rot.eval(p)) < 1e-15);
        }
        let nil = field(FieldSpec::Custom {
            fx: Poly2(vec![(0, 1, 1.0)]),
            fy: Poly2(vec![]),
        });
        let h = SquareMatrix::from_rows(&[[1.0, 1.0], [0.0, 1.0]]);
        let h_inv = h.inverse(1e-14).unwrap();
        let pf = pushforward(&nil, &PlaneMap::linear(h.clone()), &PlaneMap::linear(h_inv.clone()));
        let expect = h.mul(&linearize(&nil, FD_STEP)).mul(&h_inv);
        assert!(linearize(&pf, FD_STEP).max_abs_diff(&expect) < 1e-10);
        assert!(expect.max_abs_diff(&SquareMatrix::from_rows(&[[0.0, 1.0], [0.0, 0.0]])) < 1e-15);
    }

    #[test]
    fn linear_cases() {
        assert_eq!(linear_case(&SquareMatrix::from_rows(&[[0.0, -1.0], [1.0, 0.0]]), 1e-9), LinearCase::Rotation);
        assert_eq!(linear_case(&SquareMatrix::from_rows(&[[0.0, 0.0], [1.0, 0.0]]), 1e-9), LinearCase::Nilpotent);
        assert_eq!(linear_case(&SquareMatrix::zeros(2), 1e-9), LinearCase::Zero);
        assert_eq!(linear_case(&SquareMatrix::identity(2), 1e-9), LinearCase::NotCenter);
    }
}
