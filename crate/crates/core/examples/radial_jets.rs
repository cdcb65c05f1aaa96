//! Exact radial jets: the defect kernel, radial forms and series radialization.

use centerkit::jets::{
    defect_kernel_dimension, radial_form, radial_relation_defect, radialize_series, HomogeneousPoly, Radialization,
    TaylorTable,
};
use centerkit::linalg::rational;

fn main() {
    let dims: Vec<usize> = (0..=10).map(defect_kernel_dimension).collect();
    println!("kernel of x∂y − y∂x on degree n, n = 0..10: {dims:?}");

    let p = HomogeneousPoly::r2_power(3).scale(&rational(5, 2));
    println!("p = {p}");
    if let Some((a, k)) = radial_form(&p) {
        println!("radial form: {a}·(x² + y²)^{k}");
    }
    let q = HomogeneousPoly::monomial(3, 0, rational(1, 1));
    println!("defect of {q}: {}", radial_relation_defect(&q));

    // exp(x² + y²) up to degree 8
    let a: Vec<_> = [1, 1, 2, 6, 24].iter().map(|&d| rational(1, d)).collect();
    let table = TaylorTable::from_radial(&a, 8);
    match radialize_series(&table) {
        Radialization::Radial(c) => {
            let shown: Vec<String> = c.iter().map(|v| v.to_string()).collect();
            println!("exp(x² + y²) series coefficients: {}", shown.join(", "));
        }
        Radialization::Fails { degree, .. } => println!("unexpected failure at degree {degree}"),
    }

    let mut bad = table.clone();
    bad.add_term(2, 1, &rational(1, 3)).unwrap();
    if let Radialization::Fails { degree, defect } = radialize_series(&bad) {
        println!("with x²y/3 added: fails at degree {degree}, defect {defect}");
    }
}
