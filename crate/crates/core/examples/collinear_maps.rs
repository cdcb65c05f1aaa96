//! Conjugate linear maps with collinear images, in exact arithmetic.

use centerkit::linalg::{collinear_classify, RationalMatrix};

fn show(label: &str, a: &RationalMatrix, h: &RationalMatrix) {
    let b = h.mul(a).mul(&h.inverse(0.0).expect("invertible"));
    let rep = collinear_classify(a, &b, h, 0.0).expect("collinear pair");
    println!("{label}: case {:?}", rep.case);
    if let Some(tau) = &rep.tau {
        println!("  τ = {tau}");
    }
    println!("  commutation residual zero: {}", rep.commutation_residual(a) == RationalMatrix::zeros(a.dim()));
    if let Some((r1, r2)) = rep.normal_form_residuals() {
        let zero = RationalMatrix::zeros(a.dim());
        println!("  normal form identities hold: {}", r1 == zero && r2 == zero);
    }
}

fn main() {
    // B = −A via the swap of the eigenvectors of diag(2, −2)
    show(
        "full rank",
        &RationalMatrix::from_i64_rows(&[[2, 0], [0, -2]]),
        &RationalMatrix::from_i64_rows(&[[0, 1], [1, 0]]),
    );
    // nilpotent of rank two rescaled by diag(4, 2, 1)
    show(
        "rank two nilpotent",
        &RationalMatrix::from_i64_rows(&[[0, 1, 0], [0, 0, 1], [0, 0, 0]]),
        &RationalMatrix::from_i64_rows(&[[4, 0, 0], [0, 2, 0], [0, 0, 1]]),
    );
    show(
        "rank one, nonzero trace",
        &RationalMatrix::from_i64_rows(&[[3, 0, 0], [0, 0, 0], [0, 0, 0]]),
        &RationalMatrix::from_i64_rows(&[[1, 2, -1], [0, 1, 3], [0, 1, 2]]),
    );
    show(
        "rank one, nilpotent",
        &RationalMatrix::from_i64_rows(&[[0, 1], [0, 0]]),
        &RationalMatrix::from_i64_rows(&[[2, 5], [0, 3]]),
    );
}
