//! Jacobi matrices of orbit-preserving maps at a center.

use centerkit::fields::{linearize, make_field, FieldSpec, FD_STEP};
use centerkit::flow::{flow_map, IntegratorConfig};
use centerkit::linalg::{classify_jet, family_matrix, jacobi_classify, spectrum, JacobiFamily, SquareMatrix};
use centerkit::point::Point;

fn main() {
    let b = 2.0;
    let a = SquareMatrix::from_rows(&[[0.0, b], [-b, 0.0]]);
    let n = SquareMatrix::from_rows(&[[0.0, b], [0.0, 0.0]]);
    for family in JacobiFamily::ALL {
        let m = family_matrix(family, 0.4, b);
        let normal = if family.is_rotation_type() { &a } else { &n };
        let class = jacobi_classify(&m, normal, 1e-9).unwrap();
        let moduli: Vec<String> = spectrum(&m).iter().map(|z| format!("{:.3}", z.norm())).collect();
        println!("{family:<12} ω = {:.6}  |μ| = {}", class.omega, moduli.join(", "));
    }

    let cfg = IntegratorConfig::default();
    let field = make_field(&FieldSpec::MonomialHamiltonian { p: 1, q: 1, b: 1.0 }).unwrap();
    let h = flow_map(&field, 0.9, &cfg);
    let (class, kind) = classify_jet(&h.jacobian_at(Point::ORIGIN, FD_STEP), &linearize(&field, FD_STEP), 1e-6).unwrap();
    println!("time-0.9 flow map of x² + y²: {} with ω = {:.6} ({kind:?})", class.family, class.omega);
}
