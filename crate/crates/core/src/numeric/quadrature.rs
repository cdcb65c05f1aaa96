//! Globally adaptive Gauss–Kronrod (7, 15) quadrature.

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

const MAX_INTERVALS: usize = 4000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn gk15<E>(f: &mut impl FnMut(f64) -> Result<f64, E>, a: f64, b: f64) -> Result<Panel, E> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c)?;
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx)? + f(c + dx)?;
        kron += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    Ok(Panel {
        a,
        b,
        value: kron * h,
        error: ((kron - gauss) * h).abs(),
    })
}

/// Integrates `f` over `[a, b]` until the summed error estimate drops below
/// `abs_tol`. Integrand failures propagate immediately.
pub fn integrate<E>(mut f: impl FnMut(f64) -> Result<f64, E>, a: f64, b: f64, abs_tol: f64) -> Result<Quadrature, E> {
    if a == b {
        return Ok(Quadrature { value: 0.0, error: 0.0, intervals: 0 });
    }
    let mut panels = vec![gk15(&mut f, a, b)?];
    loop {
        let total_err: f64 = panels.iter().map(|p| p.error).sum();
        if total_err <= abs_tol || panels.len() >= MAX_INTERVALS {
            break;
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("at least one panel");
        let p = panels.swap_remove(worst);
        let m = 0.5 * (p.a + p.b);
        if m == p.a || m == p.b {
            panels.push(p);
            break;
        }
        panels.push(gk15(&mut f, p.a, m)?);
        panels.push(gk15(&mut f, m, p.b)?);
    }
    // sum small panels first to limit rounding
    panels.sort_by(|x, y| x.value.abs().total_cmp(&y.value.abs()));
    Ok(Quadrature {
        value: panels.iter().map(|p| p.value).sum(),
        error: panels.iter().map(|p| p.error).sum(),
        intervals: panels.len(),
    })
}

/// Infallible convenience wrapper.
pub fn integrate_fn(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, abs_tol: f64) -> Quadrature {
    match integrate::<std::convert::Infallible>(|x| Ok(f(x)), a, b, abs_tol) {
        Ok(q) => q,
        Err(e) => match e {},
    }
}
