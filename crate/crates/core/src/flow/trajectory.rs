use std::f64::consts::PI;

use super::{FlowError, IntegratorConfig};
use crate::fields::{PlanarField, ScalarField};
use crate::numeric::{integrate, single_step, Control, DenseStep, OdeError, State};
use crate::point::{PlaneMap, Point};
use crate::polar::{lift_field, unpolar, PolarField};

fn ode_failure(e: OdeError) -> FlowError {
    FlowError::StepFailure(e.to_string())
}

fn escape_radius(field: &PlanarField, cfg: &IntegratorConfig) -> f64 {
    cfg.escape_radius.unwrap_or(field.meta.escape_radius)
}

/// `Ψ(z, t)`: the time-`t` flow of `field` (negative `t` runs backward).
pub fn flow(field: &PlanarField, z: Point, t: f64, cfg: &IntegratorConfig) -> Result<Point, FlowError> {
    if t == 0.0 {
        return Ok(z);
    }
    if !z.is_finite() || !t.is_finite() {
        return Err(FlowError::InvalidInput("non-finite point or time".into()));
    }
    let radius = escape_radius(field, cfg);
    let mut escaped = None;
    let out = integrate(
        |y: &State| field.eval(Point::from_array(*y)).to_array(),
        z.to_array(),
        t,
        &cfg.ode_options(),
        |s: &DenseStep| {
            if Point::from_array(s.y1).norm() > radius {
                escaped = Some(s.t1);
                Control::Stop
            } else {
                Control::Continue
            }
        },
    )
    .map_err(ode_failure)?;
    if let Some(t) = escaped {
        return Err(FlowError::Escape { t, radius });
    }
    Ok(Point::from_array(out.y))
}

/// The time-`t` map `Ψ_t`; failed integrations evaluate to a non-finite point.
pub fn flow_map(field: &PlanarField, t: f64, cfg: &IntegratorConfig) -> PlaneMap {
    let field = field.clone();
    let cfg = *cfg;
    PlaneMap::new(move |z| flow(&field, z, t, &cfg).unwrap_or_else(|_| Point::nan()))
}

/// The shift map `Sh(α): z ↦ Ψ(z, α(z))`.
pub fn shift_map(field: &PlanarField, alpha: &ScalarField, cfg: &IntegratorConfig) -> PlaneMap {
    let field = field.clone();
    let alpha = alpha.clone();
    let cfg = *cfg;
    PlaneMap::new(move |z| flow(&field, z, alpha.eval(z), &cfg).unwrap_or_else(|_| Point::nan()))
}

/// Where an angular target was reached along a lifted trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleHit {
    /// Signed flow time.
    pub time: f64,
    pub phi: f64,
    pub rho: f64,
}

/// Follows the polar lift from `(phi0, rho0)` until the angular coordinate
/// has advanced by `delta` (either sign), in whichever time direction moves
/// the angle that way. The crossing is bracketed by bisection on the dense
/// output and polished with Newton steps on fresh single steps.
pub fn advance_angle(
    lift: &PolarField,
    phi0: f64,
    rho0: f64,
    delta: f64,
    escape: f64,
    cfg: &IntegratorConfig,
) -> Result<AngleHit, FlowError> {
    if delta == 0.0 {
        return Ok(AngleHit { time: 0.0, phi: phi0, rho: rho0 });
    }
    let rate0 = lift.phi_rate(phi0, rho0);
    if !rate0.is_finite() || rate0 == 0.0 {
        return Err(FlowError::NoReturn("angular rate vanishes at the start point".into()));
    }
    let target = phi0 + delta;
    let sgn = delta.signum();
    let dir = sgn * rate0.signum();
    let rhs = |y: &State| {
        let (a, b) = lift.eval(y[0], y[1]);
        [a, b]
    };
    let mut hit: Option<DenseStep> = None;
    let mut escaped = None;
    let out = integrate(rhs, [phi0, rho0], dir * cfg.max_time, &cfg.ode_options(), |s| {
        if s.y1[1] > escape {
            escaped = Some(s.t1);
            return Control::Stop;
        }
        if (s.y1[0] - target) * sgn >= 0.0 {
            hit = Some(*s);
            return Control::Stop;
        }
        Control::Continue
    })
    .map_err(ode_failure)?;
    if let Some(t) = escaped {
        return Err(FlowError::Escape { t, radius: escape });
    }
    let Some(step) = hit else {
        return Err(FlowError::NoReturn(format!(
            "angle advanced by {:.6} of {:.6} within time {}",
            (out.y[0] - phi0).abs(),
            delta.abs(),
            cfg.max_time
        )));
    };

    // bisection on the continuous extension
    let g = |t: f64| (step.eval(t)[0] - target) * sgn;
    let (mut lo, mut hi) = (step.t0, step.t1);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if g(mid) >= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let mut t = 0.5 * (lo + hi);
    let mut y = single_step(rhs, &step.y0, t - step.t0);
    for _ in 0..3 {
        let rate = lift.phi_rate(y[0], y[1]);
        if !rate.is_finite() || rate == 0.0 {
            break;
        }
        let dt = (y[0] - target) / rate;
        let t_new = t - dt;
        // stay within the accepted step, where single steps are accurate
        if (t_new - step.t0) * (t_new - step.t1) > 0.0 {
            break;
        }
        t = t_new;
        y = single_step(rhs, &step.y0, t - step.t0);
    }
    Ok(AngleHit { time: t, phi: y[0], rho: y[1] })
}

/// Minimal positive return time of the orbit through `z`, measured as the
/// time for the lifted angle to advance by one full turn; the orbit must then
/// close up radially within `cfg.closure_tol` (relative).
pub fn period(field: &PlanarField, z: Point, cfg: &IntegratorConfig) -> Result<f64, FlowError> {
    let lift = lift_field(field);
    period_lifted(&lift, z, escape_radius(field, cfg), cfg)
}

pub(crate) fn period_lifted(
    lift: &PolarField,
    z: Point,
    escape: f64,
    cfg: &IntegratorConfig,
) -> Result<f64, FlowError> {
    let (phi0, rho0) = unpolar(z, 0.0).map_err(|_| FlowError::AtOrigin)?;
    let rate = lift.phi_rate(phi0, rho0);
    if !rate.is_finite() || rate == 0.0 {
        return Err(FlowError::NoReturn("angular rate vanishes at the start point".into()));
    }
    let hit = advance_angle(lift, phi0, rho0, 2.0 * PI * rate.signum(), escape, cfg)?;
    let mismatch = (hit.rho - rho0).abs() / rho0;
    if mismatch > cfg.closure_tol {
        return Err(FlowError::NoReturn(format!(
            "orbit does not close: relative radial gap {mismatch:.3e} after one turn"
        )));
    }
    Ok(hit.time.abs())
}

/// `Ψ(z, α(z))`.
pub fn shift_apply(
    field: &PlanarField,
    alpha: &ScalarField,
    z: Point,
    cfg: &IntegratorConfig,
) -> Result<Point, FlowError> {
    flow(field, z, alpha.eval(z), cfg)
}

/// `max ‖Ψ(z, n·μ(z)) − z‖` over the samples.
pub fn kernel_residual(
    field: &PlanarField,
    mu: &ScalarField,
    n: i64,
    samples: &[Point],
    cfg: &IntegratorConfig,
) -> Result<f64, FlowError> {
    let mut worst: f64 = 0.0;
    for &z in samples {
        let w = flow(field, z, n as f64 * mu.eval(z), cfg)?;
        worst = worst.max(w.dist(z));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{make_field, FieldSpec};

    fn rotation(b: f64) -> PlanarField {
        make_field(&FieldSpec::Rotation { b }).unwrap()
    }

    #[test]
    fn quarter_turn() {
        let w = flow(&rotation(1.0), Point::new(1.0, 0.0), PI / 2.0, &IntegratorConfig::default()).unwrap();
        assert!(w.dist(Point::new(0.0, 1.0)) < 1e-8, "{w}");
    }

    #[test]
    fn zero_time_is_exact() {
        let z = Point::new(0.123, -0.456);
        assert_eq!(flow(&rotation(1.0), z, 0.0, &IntegratorConfig::default()).unwrap(), z);
    }

    #[test]
    fn double_rate_half_period() {
        let w = flow(&rotation(2.0), Point::new(0.5, 0.0), PI, &IntegratorConfig::default()).unwrap();
        assert!(w.dist(Point::new(0.5, 0.0)) < 1e-8);
    }

    #[test]
    fn periods_of_linear_flows() {
        let cfg = IntegratorConfig::default();
        let t = period(&rotation(1.0), Point::new(0.3, 0.0), &cfg).unwrap();
        assert!((t - 2.0 * PI).abs() < 1e-8, "{t}");
        let t = period(&rotation(2.0), Point::new(0.5, 0.1), &cfg).unwrap();
        assert!((t - PI).abs() < 1e-8, "{t}");
        let t = period(&rotation(-2.0), Point::new(0.5, 0.1), &cfg).unwrap();
        assert!((t - PI).abs() < 1e-8, "{t}");
    }

    #[test]
    fn spiral_has_no_return() {
        let f = make_field(&FieldSpec::TakensNonflat { delta: -1.0, k: 1, alpha: 0.0 }).unwrap();
        let err = period(&f, Point::new(0.5, 0.0), &IntegratorConfig::default()).unwrap_err();
        assert!(matches!(err, FlowError::NoReturn(_)), "{err}");
    }

    #[test]
    fn origin_has_no_period() {
        let err = period(&rotation(1.0), Point::ORIGIN, &IntegratorConfig::default()).unwrap_err();
        assert_eq!(err, FlowError::AtOrigin);
    }

    #[test]
    fn escape_is_reported() {
        let f = PlanarField::new(|p| p);
        let err = flow(&f, Point::new(0.5, 0.0), 5.0, &IntegratorConfig::default()).unwrap_err();
        assert!(matches!(err, FlowError::Escape { .. }), "{err}");
    }

    #[test]
    fn shift_examples() {
        let f = rotation(1.0);
        let cfg = IntegratorConfig::default();
        let z = Point::new(0.2, 0.3);
        assert_eq!(shift_apply(&f, &ScalarField::constant(0.0), z, &cfg).unwrap(), z);
        let w = shift_apply(&f, &ScalarField::constant(PI), z, &cfg).unwrap();
        assert!(w.dist(-z) < 1e-8);
        let w = shift_apply(&f, &ScalarField::constant(2.0 * PI), z, &cfg).unwrap();
        assert!(w.dist(z) < 1e-7);
        let w = shift_map(&f, &ScalarField::new(|p| p.x), &cfg).apply(z);
        assert!(w.dist(flow(&f, z, 0.2, &cfg).unwrap()) < 1e-15);
    }

    #[test]
    fn kernel_examples() {
        let cfg = IntegratorConfig::default();
        let samples: Vec<Point> = (1..=5).map(|i| Point::new(0.1 * i as f64, 0.05)).collect();
        let two_pi = ScalarField::constant(2.0 * PI);
        assert!(kernel_residual(&rotation(1.0), &two_pi, 1, &samples, &cfg).unwrap() <= 1e-7);
        assert_eq!(kernel_residual(&rotation(1.0), &two_pi, 0, &samples, &cfg).unwrap(), 0.0);
        let pi = ScalarField::constant(PI);
        assert!(kernel_residual(&rotation(2.0), &pi, -2, &samples, &cfg).unwrap() <= 1e-7);
    }

    #[test]
    fn angle_advance_lands_on_target() {
        let lift = lift_field(&rotation(1.0));
        let hit = advance_angle(&lift, 0.3, 0.5, -1.1, 2.0, &IntegratorConfig::default()).unwrap();
        assert!((hit.time + 1.1).abs() < 1e-10 && (hit.phi - (0.3 - 1.1)).abs() < 1e-10, "{hit:?}");
    }
}
