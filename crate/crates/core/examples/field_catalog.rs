//! The built-in fields: linear part at the origin, tangency and JSON form.

use centerkit::fields::{catalog, linear_case, linearize, make_field, tangency_residual, FD_STEP};

fn main() {
    for spec in catalog() {
        let field = make_field(&spec).expect("catalog spec");
        let a = linearize(&field, FD_STEP);
        println!(
            "{:<22} linear part {:?}, tangent {} (residual {:.1e}), first integral {}",
            spec.name(),
            linear_case(&a, 1e-9),
            field.meta.tangent,
            tangency_residual(&field, 64),
            field.meta.first_integral.is_some(),
        );
        println!("  {}", spec.to_json().replace('\n', " "));
    }
}
