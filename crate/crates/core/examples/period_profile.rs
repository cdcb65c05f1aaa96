//! Period functions along a ray for three kinds of centers.

use centerkit::fields::{make_field, FieldSpec, FlatPartSpec};
use centerkit::flow::{halving_radii, period_profile, IntegratorConfig};

fn main() {
    let cases = [
        ("unit rotation", FieldSpec::Rotation { b: 1.0 }, IntegratorConfig::default()),
        (
            "flat perturbation",
            FieldSpec::TakensFlat {
                beta: vec![1.0],
                xbar: FlatPartSpec::new(0.5, vec![(1, 0, 1.0)]),
                ybar: FlatPartSpec::new(0.5, vec![(1, 0, 1.0)]),
            },
            IntegratorConfig::default(),
        ),
        (
            "degenerate hamiltonian",
            FieldSpec::MonomialHamiltonian { p: 2, q: 2, b: 1.0 },
            IntegratorConfig::default().with_max_time(1e6).with_max_step(100.0),
        ),
    ];
    for (label, spec, cfg) in cases {
        let field = make_field(&spec).expect("valid spec");
        let profile = period_profile(&field, 0.3, &halving_radii(0.32, 6), &cfg).expect("profile");
        println!("{label}: {:?}", profile.verdict);
        for s in &profile.samples {
            match s.theta {
                Some(t) => println!("  r = {:<10.6} θ = {t:.12}", s.radius),
                None => println!("  r = {:<10.6} no period ({})", s.radius, s.failure.as_deref().unwrap_or("")),
            }
        }
    }
}
