//! Acceptance suite: one line per criterion, all criteria must pass.

use std::f64::consts::PI;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use centerkit::fields::{catalog, make_field, FieldSpec, FlatPartSpec, PlanarField, ScalarField};
use centerkit::flow::{
    flow, halving_radii, kernel_residual, period, period_profile, shift_map, FlowError, IntegratorConfig, Verdict,
};
use centerkit::jets::{defect_kernel_dimension, radial_form, radialize_series, HomogeneousPoly, Radialization, TaylorTable};
use centerkit::linalg::{
    collinear_classify, family_matrix, jacobi_classify, rational, spectrum, CollinearCase, JacobiFamily, Matrix,
    RationalMatrix, SquareMatrix,
};
use centerkit::point::Point;
use centerkit::polar::{lift_field, polar_point};
use centerkit::shift::{gamma_set_membership, recover_shift};

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn rotation(b: f64) -> PlanarField {
    make_field(&FieldSpec::Rotation { b }).unwrap()
}

fn radial_takens_flat() -> PlanarField {
    make_field(&FieldSpec::TakensFlat {
        beta: vec![1.0, 0.5],
        xbar: FlatPartSpec::new(0.3, vec![(1, 0, 1.0)]),
        ybar: FlatPartSpec::new(0.3, vec![(0, 1, 1.0)]),
    })
    .unwrap()
}

fn disk_samples(rng: &mut ChaCha8Rng, n: usize, radius: f64) -> Vec<Point> {
    (0..n)
        .map(|_| {
            let r = radius * rng.gen::<f64>().sqrt();
            let a = rng.gen_range(0.0..2.0 * PI);
            polar_point(a, r)
        })
        .collect()
}

fn period_constancy() -> Outcome {
    let start = Instant::now();
    let f = rotation(1.0);
    let cfg = IntegratorConfig::default();
    let mut worst: f64 = 0.0;
    for i in 0..20 {
        let r = 0.02f64.powf(i as f64 / 19.0);
        let z = polar_point(0.7 * i as f64, r);
        let t = period(&f, z, &cfg).map_err(|e| format!("r = {r}: {e}"))?;
        worst = worst.max((t - 2.0 * PI).abs());
    }
    let secs = start.elapsed().as_secs_f64();
    check(worst <= 1e-6 && secs < 2.0, format!("max |θ − 2π| = {worst:.2e}, {secs:.3} s"))
}

fn linear_scaling() -> Outcome {
    let cfg = IntegratorConfig::default();
    let mut worst: f64 = 0.0;
    for b in [0.5, 2.0, 3.0] {
        let f = rotation(b);
        for r in [0.9, 0.5, 0.1, 0.02] {
            let t = period(&f, polar_point(1.1, r), &cfg).map_err(|e| e.to_string())?;
            worst = worst.max((t - 2.0 * PI / b).abs());
        }
    }
    check(worst <= 1e-6, format!("max |θ − 2π/b| = {worst:.2e}"))
}

fn ptc_flatness() -> Outcome {
    let f = make_field(&FieldSpec::TakensFlat {
        beta: vec![1.0],
        xbar: FlatPartSpec::new(0.5, vec![(1, 0, 1.0)]),
        ybar: FlatPartSpec::new(0.5, vec![(1, 0, 1.0)]),
    })
    .unwrap();
    let radii = halving_radii(0.2, 6);
    let p = period_profile(&f, 0.4, &radii, &IntegratorConfig::default()).map_err(|e| e.to_string())?;
    let Verdict::Ptc { limit } = p.verdict else {
        return Err(format!("verdict {}", p.verdict.label()));
    };
    let mut ok = true;
    let mut worst_ratio: f64 = 0.0;
    for (r, t) in radii.iter().zip(p.theta()) {
        let gap = (t - limit).abs();
        ok &= gap <= r.powi(4);
        worst_ratio = worst_ratio.max(gap / r.powi(4));
    }
    check(ok, format!("PTC, limit {limit:.12}, max |θ − L|/r⁴ = {worst_ratio:.2e}"))
}

fn divergence() -> Outcome {
    let cfg = IntegratorConfig::default().with_max_time(1e6).with_max_step(100.0);
    let radii = halving_radii(0.32, 6);
    let specs = [
        FieldSpec::QuadraticProduct {
            forms: vec![[[1.0, 0.0], [0.0, 1.0]], [[1.0, 0.0], [0.0, 2.0]]],
        },
        FieldSpec::MonomialHamiltonian { p: 2, q: 2, b: 1.0 },
    ];
    let mut details = Vec::new();
    let mut ok = true;
    for spec in &specs {
        let f = make_field(spec).unwrap();
        let p = period_profile(&f, 0.3, &radii, &cfg).map_err(|e| e.to_string())?;
        let theta = p.theta();
        let ratios: Vec<f64> = theta.windows(2).map(|w| w[1] / w[0]).collect();
        let tail = &ratios[ratios.len() - 3..];
        let min_ratio = tail.iter().copied().fold(f64::INFINITY, f64::min);
        ok &= p.verdict == Verdict::Divergent && min_ratio >= 1.1;
        details.push(format!("{}: {}, min ratio {min_ratio:.3}", spec.name(), p.verdict.label()));
    }
    check(ok, details.join("; "))
}

fn polar_closed_form() -> Outcome {
    let mut worst: f64 = 0.0;
    for (delta, k, alpha) in [(1.0, 1, 0.0), (-1.0, 1, 0.0), (1.0, 2, 0.5)] {
        let lift = lift_field(&make_field(&FieldSpec::TakensNonflat { delta, k, alpha }).unwrap());
        for i in 0..24 {
            let phi = -PI + 4.0 * PI * i as f64 / 24.0;
            for j in 0..=20 {
                let rho = j as f64 / 20.0;
                let (bp, br) = lift.eval(phi, rho);
                let rk = rho.powi(2 * k as i32);
                worst = worst.max((bp - 2.0 * PI).abs());
                worst = worst.max((br - rho * rk * (delta + alpha * rk)).abs());
            }
        }
    }
    check(worst <= 1e-9, format!("max grid discrepancy {worst:.2e}"))
}

fn spiral_orbits() -> Outcome {
    let f = make_field(&FieldSpec::TakensNonflat { delta: -1.0, k: 1, alpha: 0.0 }).unwrap();
    let cfg = IntegratorConfig::default();
    for i in 0..10 {
        let z = polar_point(0.9 * i as f64, 0.05 + 0.05 * i as f64);
        match period(&f, z, &cfg) {
            Err(FlowError::NoReturn(_)) => {}
            other => return Err(format!("{z}: expected NoReturn, got {other:?}")),
        }
        let mut last = z.norm();
        for j in 1..=20 {
            let w = flow(&f, z, 5.0 * j as f64, &cfg).map_err(|e| e.to_string())?;
            if w.norm() >= last {
                return Err(format!("{z}: |Ψ(z, T)| not decreasing at T = {}", 5 * j));
            }
            last = w.norm();
        }
    }
    Ok("10 starting points: NoReturn, |Ψ(z, T)| decreasing over 20 checkpoints".into())
}

/// `α(z) = α₀ + s·Σ a (cos(k·z) − 1) + b sin(k·z)`.
fn trig_alpha(alpha0: f64, terms: &[(f64, f64, f64, f64)], s: f64) -> ScalarField {
    let terms = terms.to_vec();
    ScalarField::new(move |z| {
        alpha0
            + s * terms
                .iter()
                .map(|&(kx, ky, a, b)| {
                    let u = kx * z.x + ky * z.y;
                    a * (u.cos() - 1.0) + b * u.sin()
                })
                .sum::<f64>()
    })
}

fn shift_round_trip() -> Outcome {
    let start = Instant::now();
    let cfg = IntegratorConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let fields = [rotation(1.0), radial_takens_flat()];
    let check_set = disk_samples(&mut ChaCha8Rng::seed_from_u64(5), 400, 1.0);
    let mut worst: f64 = 0.0;
    let mut normalized = 0;
    for case in 0..50 {
        let f = &fields[case % 2];
        let alpha0 = rng.gen_range(-2.4..2.4);
        let terms: Vec<(f64, f64, f64, f64)> = (0..3)
            .map(|_| {
                (
                    rng.gen_range(-2i32..=2) as f64,
                    rng.gen_range(-2i32..=2) as f64,
                    rng.gen_range(-0.5..0.5),
                    rng.gen_range(-0.5..0.5),
                )
            })
            .collect();
        let mut s = 1.0;
        let alpha = loop {
            let a = trig_alpha(alpha0, &terms, s);
            if gamma_set_membership(f, &a, &check_set) {
                break a;
            }
            s *= 0.5;
        };
        let samples = disk_samples(&mut rng, 20, 0.95);
        let h = shift_map(f, &alpha, &cfg);
        let grid = recover_shift(f, &h, &samples, &cfg).map_err(|e| format!("case {case}: {e}"))?;
        for (z, sigma) in samples.iter().zip(&grid.sigma) {
            let mut d = sigma - alpha.eval(*z);
            if d.abs() > 1e-6 {
                let theta = period(f, *z, &cfg).map_err(|e| e.to_string())?;
                let k = (d / theta).round();
                if k != 0.0 {
                    normalized += 1;
                    d -= k * theta;
                }
            }
            worst = worst.max(d.abs());
        }
    }
    let secs = start.elapsed().as_secs_f64();
    check(
        worst <= 1e-6 && secs < 30.0,
        format!("max |σ − α| = {worst:.2e} over 1000 samples ({normalized} branch shifts), {secs:.2} s"),
    )
}

fn kernel_identity() -> Outcome {
    let cfg = IntegratorConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let samples = disk_samples(&mut rng, 20, 0.95);
    let mut worst: f64 = 0.0;
    for f in [rotation(1.0), radial_takens_flat()] {
        let g = f.clone();
        let mu = ScalarField::new(move |z| period(&g, z, &IntegratorConfig::default()).unwrap_or(f64::NAN));
        for n in [-2, -1, 1, 2] {
            let r = kernel_residual(&f, &mu, n, &samples, &cfg).map_err(|e| e.to_string())?;
            worst = worst.max(r);
        }
    }
    check(worst <= 1e-6, format!("max ‖Ψ(z, nθ(z)) − z‖ = {worst:.2e}"))
}

// random conjugate pairs with collinear images

trait Sample: Clone {
    fn draw(rng: &mut ChaCha8Rng) -> Self;
    fn from_int(v: i64) -> Self;
}

impl Sample for f64 {
    fn draw(rng: &mut ChaCha8Rng) -> Self {
        rng.gen_range(-1.0..1.0)
    }
    fn from_int(v: i64) -> Self {
        v as f64
    }
}

impl Sample for BigRational {
    fn draw(rng: &mut ChaCha8Rng) -> Self {
        rational(rng.gen_range(-3..=3), rng.gen_range(1..=3))
    }
    fn from_int(v: i64) -> Self {
        rational(v, 1)
    }
}

fn nonzero<T: Sample + centerkit::linalg::Scalar>(rng: &mut ChaCha8Rng) -> T {
    loop {
        let v = T::draw(rng);
        if v.magnitude() > 0.25 {
            return v;
        }
    }
}

/// An invertible matrix whose first column is `c·e₁` when `pin_first` is set.
fn random_invertible<T: Sample + centerkit::linalg::Scalar>(
    rng: &mut ChaCha8Rng,
    n: usize,
    pin_first: bool,
) -> (Matrix<T>, Matrix<T>) {
    loop {
        let mut m = Matrix::<T>::identity(n);
        for i in 0..n {
            for j in 0..n {
                let v = m.get(i, j).clone() + T::draw(rng);
                m.set(i, j, v);
            }
        }
        if pin_first {
            m.set(0, 0, nonzero(rng));
            for i in 1..n {
                m.set(i, 0, T::zero());
            }
        }
        if let Some(inv) = m.inverse(1e-12) {
            if inv.max_abs() * m.max_abs() < 50.0 {
                return (m, inv);
            }
        }
    }
}

fn conj<T: centerkit::linalg::Scalar>(s: &Matrix<T>, m: &Matrix<T>, s_inv: &Matrix<T>) -> Matrix<T> {
    s.mul(m).mul(s_inv)
}

/// `(A, H, case)` with `B = H A H⁻¹` collinear with `A`.
fn collinear_pair<T: Sample + centerkit::linalg::Scalar>(
    rng: &mut ChaCha8Rng,
    n: usize,
    case: CollinearCase,
    variant: usize,
) -> (Matrix<T>, Matrix<T>) {
    let (s, s_inv) = random_invertible::<T>(rng, n, false);
    match case {
        CollinearCase::A1 => match (variant % 3, n) {
            (0, _) => {
                // H a polynomial in A
                let (a, _) = random_invertible::<T>(rng, n, false);
                let h = Matrix::<T>::identity(n).scale(&T::from_int(2)).add(&a.scale(&nonzero(rng)));
                if h.inverse(1e-12).is_none() {
                    return collinear_pair(rng, n, case, variant);
                }
                (a, h)
            }
            (1, _) | (2, 2) => {
                // spectrum {d, −d, 0...}, H swaps the two eigenvectors
                let d: T = nonzero(rng);
                let mut dm = Matrix::<T>::zeros(n);
                dm.set(0, 0, d.clone());
                dm.set(1, 1, -d);
                let mut p = Matrix::<T>::zeros(n);
                p.set(0, 1, T::one());
                p.set(1, 0, T::one());
                for i in 2..n {
                    p.set(i, i, nonzero(rng));
                }
                (conj(&s, &dm, &s_inv), conj(&s, &p, &s_inv))
            }
            _ => {
                // nilpotent of rank two, H = diag(τ², τ, 1) rescales it to τ A
                let tau: T = nonzero(rng);
                let mut nm = Matrix::<T>::zeros(3);
                nm.set(0, 1, T::one());
                nm.set(1, 2, T::one());
                let mut dm = Matrix::<T>::zeros(3);
                dm.set(0, 0, tau.clone() * tau.clone());
                dm.set(1, 1, tau);
                dm.set(2, 2, T::one());
                (conj(&s, &nm, &s_inv), conj(&s, &dm, &s_inv))
            }
        },
        CollinearCase::A2 | CollinearCase::A3 => {
            let mut an = Matrix::<T>::zeros(n);
            if case == CollinearCase::A2 {
                an.set(0, 0, nonzero(rng));
            } else {
                an.set(0, 1, nonzero(rng));
            }
            let (hn, _) = random_invertible::<T>(rng, n, true);
            (conj(&s, &an, &s_inv), conj(&s, &hn, &s_inv))
        }
    }
}

fn collinear_maps() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst: f64 = 0.0;
    let mut exact = 0;
    for case in [CollinearCase::A1, CollinearCase::A2, CollinearCase::A3] {
        for n in [2, 3] {
            for i in 0..1000 {
                let (a, h) = collinear_pair::<f64>(&mut rng, n, case, i);
                let h_inv = h.inverse(1e-12).ok_or("singular H")?;
                let b = h.mul(&a).mul(&h_inv);
                let rep = collinear_classify(&a, &b, &h, 1e-8).map_err(|e| format!("{case:?} n={n} #{i}: {e}"))?;
                if rep.case != case {
                    return Err(format!("{case:?} n={n} #{i}: classified as {:?}", rep.case));
                }
                let scale = a.max_abs() * rep.commuter.max_abs();
                let c = rep.commutation_residual(&a).max_abs() / scale;
                let mut nf = 0.0f64;
                if let Some((r1, r2)) = rep.normal_form_residuals() {
                    let g = rep.g.as_ref().unwrap().max_abs();
                    let s = g * rep.b_normal.as_ref().unwrap().max_abs().max(rep.a_normal.as_ref().unwrap().max_abs());
                    nf = r1.max_abs().max(r2.max_abs()) / s;
                }
                worst = worst.max(c).max(nf);
            }
            for i in 0..100 {
                let (a, h) = collinear_pair::<BigRational>(&mut rng, n, case, i);
                let h_inv = h.inverse(0.0).ok_or("singular H")?;
                let b = h.mul(&a).mul(&h_inv);
                let rep = collinear_classify(&a, &b, &h, 0.0).map_err(|e| format!("exact {case:?} n={n}: {e}"))?;
                let zero = RationalMatrix::zeros(n);
                let mut ok = rep.case == case && rep.commutation_residual(&a) == zero;
                if let Some((r1, r2)) = rep.normal_form_residuals() {
                    ok &= r1 == zero && r2 == zero;
                }
                if !ok {
                    return Err(format!("exact {case:?} n={n} #{i}: identity fails"));
                }
                exact += 1;
            }
        }
    }
    check(
        worst <= 1e-9,
        format!("6000 float pairs, max relative residual {worst:.2e}; {exact} exact pairs hold exactly"),
    )
}

fn jacobi_families() -> Outcome {
    let mut count = 0;
    let mut worst_omega: f64 = 0.0;
    let mut worst_modulus: f64 = 0.0;
    for family in JacobiFamily::ALL {
        for b in [0.5, 1.0, 2.0, -1.5, 3.0] {
            let a = if family.is_rotation_type() {
                SquareMatrix::from_rows(&[[0.0, b], [-b, 0.0]])
            } else {
                SquareMatrix::from_rows(&[[0.0, b], [0.0, 0.0]])
            };
            for j in -4..=5 {
                let omega = if family.is_rotation_type() {
                    j as f64 * PI / (5.0 * b)
                } else {
                    0.37 * j as f64
                };
                let m = family_matrix(family, omega, b);
                let class = jacobi_classify(&m, &a, 1e-9).map_err(|e| format!("{family} ω={omega}: {e}"))?;
                if class.family != family {
                    return Err(format!("{family} ω={omega} b={b}: read back as {}", class.family));
                }
                worst_omega = worst_omega.max((class.omega - omega).abs());
                if class.matrix(b).max_abs_diff(&m) > 1e-12 {
                    return Err(format!("{family} ω={omega} b={b}: matrix differs"));
                }
                for mu in spectrum(&m) {
                    worst_modulus = worst_modulus.max((mu.norm() - 1.0).abs());
                }
                count += 1;
            }
        }
    }
    check(
        worst_omega <= 1e-12 && worst_modulus <= 1e-9,
        format!("{count} grid points, max |Δω| = {worst_omega:.1e}, max ||μ| − 1| = {worst_modulus:.1e}"),
    )
}

fn r2() -> HomogeneousPoly {
    HomogeneousPoly::from_coeffs(vec![rational(1, 1), rational(0, 1), rational(1, 1)])
}

/// `a·(x² + y²)^k` by repeated multiplication.
fn r2_power_oracle(a: &BigRational, k: u32) -> HomogeneousPoly {
    let mut p = HomogeneousPoly::constant(a.clone());
    for _ in 0..k {
        p = p.mul(&r2());
    }
    p
}

fn radial_polynomials() -> Outcome {
    for n in 0..=10 {
        let want = usize::from(n % 2 == 0);
        let got = defect_kernel_dimension(n);
        if got != want {
            return Err(format!("n = {n}: kernel dimension {got}, expected {want}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..100 {
        let a = loop {
            let a = rational(rng.gen_range(-20..=20), rng.gen_range(1..=9));
            if !a.is_zero() {
                break a;
            }
        };
        let k = rng.gen_range(0..=5);
        let p = r2_power_oracle(&a, k);
        if radial_form(&p) != Some((a.clone(), k)) {
            return Err(format!("case {i}: radial_form({p}) wrong"));
        }
        let mut q = p.clone();
        if k == 0 {
            continue;
        }
        let j = rng.gen_range(0..=2 * k);
        q.add_term(j, 2 * k - j, &rational(1, 7)).unwrap();
        if radial_form(&q).is_some() {
            return Err(format!("case {i}: perturbed {q} accepted"));
        }
    }
    Ok("kernel dimensions for n ≤ 10 exact; 100 radial forms match the expansion oracle".into())
}

fn series_table(a: &[BigRational], max_degree: u32) -> TaylorTable {
    let mut t = TaylorTable::zero(max_degree);
    for (i, c) in a.iter().enumerate() {
        for (x, y, v) in r2_power_oracle(c, i as u32).terms() {
            t.add_term(x, y, v).unwrap();
        }
    }
    t
}

fn series_radialization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for case in 0..100 {
        let mut a: Vec<BigRational> = (0..=5)
            .map(|_| rational(rng.gen_range(-9..=9), rng.gen_range(1..=5)))
            .collect();
        let table = series_table(&a, 11);
        while a.last().is_some_and(Zero::is_zero) {
            a.pop();
        }
        if radialize_series(&table) != Radialization::Radial(a.clone()) {
            return Err(format!("case {case}: coefficients not recovered"));
        }
        // corrupt one degree: an odd term or a non-radial even term
        let d: u32 = rng.gen_range(1..=11);
        let i = rng.gen_range(0..=d);
        let mut bad = table.clone();
        bad.add_term(i, d - i, &BigRational::one()).unwrap();
        if d % 2 == 0 && radial_form(bad.poly(d)).is_some() {
            continue;
        }
        match radialize_series(&bad) {
            Radialization::Fails { degree, .. } if degree == d => {}
            other => return Err(format!("case {case}: corruption at degree {d} gave {other:?}")),
        }
    }
    Ok("100 radial tables recovered exactly; corrupted tables rejected at the corrupted degree".into())
}

fn flow_lift_conjugacy() -> Outcome {
    let cfg = IntegratorConfig::default();
    let mut worst: f64 = 0.0;
    let mut compared = 0;
    let mut skipped = 0;
    for spec in catalog() {
        let f = make_field(&spec).unwrap();
        let lift = lift_field(&f);
        for &rho in &[0.05, 0.2, 0.5, 0.8, 1.0] {
            for &phi in &[0.0, 1.3, 2.9, 4.4] {
                for &t in &[0.5, PI, 2.0 * PI] {
                    let z = polar_point(phi, rho);
                    let cart = match flow(&f, z, t, &cfg) {
                        Ok(w) => w,
                        Err(FlowError::Escape { .. }) => {
                            skipped += 1;
                            continue;
                        }
                        Err(e) => return Err(format!("{}: {e}", spec.name())),
                    };
                    let (p2, r2) = lift.flow(phi, rho, t, &cfg).map_err(|e| e.to_string())?;
                    worst = worst.max(polar_point(p2, r2).dist(cart));
                    compared += 1;
                }
            }
        }
    }
    check(
        worst <= 1e-6,
        format!("{compared} comparisons ({skipped} escaping skipped), max ‖P∘Ψ̃ − Ψ∘P‖ = {worst:.2e}"),
    )
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 13] = [
        ("period constancy", period_constancy),
        ("linear-flow scaling", linear_scaling),
        ("PTC flatness", ptc_flatness),
        ("divergence", divergence),
        ("polar-lift closed form", polar_closed_form),
        ("spiral orbits", spiral_orbits),
        ("shift round trip", shift_round_trip),
        ("kernel identity", kernel_identity),
        ("collinear maps", collinear_maps),
        ("jacobi classification", jacobi_families),
        ("radial polynomials", radial_polynomials),
        ("series radialization", series_radialization),
        ("flow/lift conjugacy", flow_lift_conjugacy),
    ];
    let mut failed = Vec::new();
    let mut err = std::io::stderr();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        let _ = writeln!(err, "[{tag}] {:>2}. {name} ({secs:.2} s): {detail}", i + 1);
        if outcome.is_err() {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
