//! Polar blow-up of a radial normal form and of a flat perturbation.

use std::f64::consts::PI;

use centerkit::fields::{make_field, FieldSpec, FlatPartSpec};
use centerkit::polar::{flatness_order_lifted, lift_field, probe_radii};

fn main() {
    let (delta, k, alpha) = (1.0, 2, 0.5);
    let lift = lift_field(&make_field(&FieldSpec::TakensNonflat { delta, k, alpha }).unwrap());
    println!("B_φ and B_ρ for δ = {delta}, k = {k}, α = {alpha} at φ = 0.7:");
    for rho in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let (bp, br) = lift.eval(0.7, rho);
        let rk = rho.powi(2 * k as i32);
        let exact = rho * rk * (delta + alpha * rk);
        println!("  ρ = {rho:.2}  B_φ − 2π = {:+.1e}  B_ρ = {br:.12}  closed form {exact:.12}", bp - 2.0 * PI);
    }
    println!(
        "  z-invariance {:.1e}, boundary {:.1e}",
        lift.z_invariance_residual(),
        lift.boundary_residual()
    );

    let flat = lift_field(
        &make_field(&FieldSpec::TakensFlat {
            beta: vec![1.0],
            xbar: FlatPartSpec::new(0.5, vec![(1, 0, 1.0)]),
            ybar: FlatPartSpec::new(0.5, vec![(1, 0, 1.0)]),
        })
        .unwrap(),
    );
    let checks = flatness_order_lifted(|phi, rho| flat.phi_rate(phi, rho) - 1.0, &[1, 2, 4, 6], &probe_radii());
    println!("flat perturbation, B_φ − 1:");
    for c in checks {
        println!("  order {}: {}", c.order, if c.pass { "flat" } else { "not flat" });
    }
}
