//! Recovering a shift function from the orbit-preserving map it generates.

use std::f64::consts::PI;

use centerkit::fields::{make_field, FieldSpec, FlatPartSpec, ScalarField};
use centerkit::flow::{shift_map, IntegratorConfig};
use centerkit::point::{PlaneMap, Point};
use centerkit::polar::polar_point;
use centerkit::shift::{gamma_set_membership, recover_shift};

fn main() {
    let cfg = IntegratorConfig::default();
    let field = make_field(&FieldSpec::TakensFlat {
        beta: vec![1.0, 0.5],
        xbar: FlatPartSpec::new(0.3, vec![(1, 0, 1.0)]),
        ybar: FlatPartSpec::new(0.3, vec![(0, 1, 1.0)]),
    })
    .unwrap();
    let alpha = ScalarField::new(|p| 1.2 + 0.3 * (2.0 * p.x).sin() - 0.2 * p.y * p.y);
    let samples: Vec<Point> = (0..12).map(|i| polar_point(0.5 * i as f64, 0.08 * (i + 1) as f64)).collect();
    println!("α in the admissible set: {}", gamma_set_membership(&field, &alpha, &samples));

    let h = shift_map(&field, &alpha, &cfg);
    let grid = recover_shift(&field, &h, &samples, &cfg).expect("recovery");
    println!("ω = {:.12}, period limit {:.12} (2π = {:.12})", grid.omega, grid.period_limit, 2.0 * PI);
    for (z, s) in grid.points.iter().zip(&grid.sigma) {
        println!("  {z}  σ = {s:.12}  |σ − α| = {:.1e}", (s - alpha.eval(*z)).abs());
    }
    println!("max orbit residual {:.1e}", grid.residual);

    let translation = PlaneMap::new(|p| Point::new(p.x + 0.05, p.y));
    match recover_shift(&field, &translation, &samples, &cfg) {
        Ok(_) => println!("translation: unexpectedly recovered"),
        Err(e) => println!("translation: {e}"),
    }
}
