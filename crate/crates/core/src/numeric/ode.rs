//! Dormand–Prince 5(4) for autonomous two-dimensional systems, with the
//! fourth-order continuous extension of Hairer, Nørsett and Wanner.

use thiserror::Error;

pub type State = [f64; 2];

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_step: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-11,
            abs_tol: 1e-13,
            max_step: 1.0,
            max_steps: 5_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OdeError {
    #[error("step size underflow at t = {t}")]
    StepFailure { t: f64 },
    #[error("non-finite state at t = {t}")]
    NonFinite { t: f64 },
    #[error("step budget of {0} exhausted")]
    TooManySteps(usize),
}

/// One accepted step together with its continuous extension.
#[derive(Debug, Clone, Copy)]
pub struct DenseStep {
    pub t0: f64,
    pub t1: f64,
    pub y0: State,
    pub y1: State,
    /// Derivative at `y0`.
    pub f0: State,
    rcont: [State; 5],
}

impl DenseStep {
    /// Interpolated state at `t` in `[t0, t1]` (either orientation).
    pub fn eval(&self, t: f64) -> State {
        let h = self.t1 - self.t0;
        let th = if h == 0.0 { 0.0 } else { (t - self.t0) / h };
        let th1 = 1.0 - th;
        let r = &self.rcont;
        let mut out = [0.0; 2];
        for i in 0..2 {
            out[i] = r[0][i] + th * (r[1][i] + th1 * (r[2][i] + th * (r[3][i] + th1 * r[4][i])));
        }
        out
    }
}

pub enum Control {
    Continue,
    Stop,
}

#[derive(Debug, Clone, Copy)]
pub struct Outcome {
    pub t: f64,
    pub y: State,
    /// True when the observer stopped the integration before `t_end`.
    pub stopped: bool,
    pub steps: usize,
}

struct Stages {
    k: [State; 7],
    y1: State,
    err: State,
}

fn axpy(y: &State, h: f64, terms: &[(f64, &State)]) -> State {
    let mut out = *y;
    for (c, k) in terms {
        out[0] += h * c * k[0];
        out[1] += h * c * k[1];
    }
    out
}

fn stages(rhs: &impl Fn(&State) -> State, y: &State, k1: &State, h: f64) -> Stages {
    let k2 = rhs(&axpy(y, h, &[(A21, k1)]));
    let k3 = rhs(&axpy(y, h, &[(A31, k1), (A32, &k2)]));
    let k4 = rhs(&axpy(y, h, &[(A41, k1), (A42, &k2), (A43, &k3)]));
    let k5 = rhs(&axpy(y, h, &[(A51, k1), (A52, &k2), (A53, &k3), (A54, &k4)]));
    let k6 = rhs(&axpy(y, h, &[(A61, k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]));
    let y1 = axpy(y, h, &[(A71, k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)]);
    let k7 = rhs(&y1);
    let err = axpy(
        &[0.0, 0.0],
        h,
        &[(E1, k1), (E3, &k3), (E4, &k4), (E5, &k5), (E6, &k6), (E7, &k7)],
    );
    Stages {
        k: [*k1, k2, k3, k4, k5, k6, k7],
        y1,
        err,
    }
}

/// The fifth-order solution after a single step of size `h` from `y`.
pub fn single_step(rhs: impl Fn(&State) -> State, y: &State, h: f64) -> State {
    let k1 = rhs(y);
    stages(&rhs, y, &k1, h).y1
}

fn error_norm(err: &State, y0: &State, y1: &State, opts: &OdeOptions) -> f64 {
    let mut acc = 0.0;
    for i in 0..2 {
        let sc = opts.abs_tol + opts.rel_tol * y0[i].abs().max(y1[i].abs());
        acc += (err[i] / sc).powi(2);
    }
    (acc / 2.0).sqrt()
}

fn initial_step(rhs: &impl Fn(&State) -> State, y0: &State, f0: &State, dir: f64, opts: &OdeOptions) -> f64 {
    let sc = |i: usize| opts.abs_tol + opts.rel_tol * y0[i].abs();
    let norm = |v: &State| ((v[0] / sc(0)).powi(2) / 2.0 + (v[1] / sc(1)).powi(2) / 2.0).sqrt();
    let d0 = norm(y0);
    let d1 = norm(f0);
    let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    let h0 = h0.min(opts.max_step);
    let y1 = axpy(y0, dir * h0, &[(1.0, f0)]);
    let f1 = rhs(&y1);
    let d2 = norm(&[f1[0] - f0[0], f1[1] - f0[1]]) / h0;
    let h1 = if d1.max(d2) <= 1e-15 {
        (h0 * 1e-3).max(1e-6)
    } else {
        (0.01 / d1.max(d2)).powf(0.2)
    };
    (100.0 * h0).min(h1).min(opts.max_step)
}

/// Integrates `y' = rhs(y)` from `(0, y0)` to `t_end` (negative for backward
/// time). `observer` sees every accepted step and may stop early.
pub fn integrate(
    rhs: impl Fn(&State) -> State,
    y0: State,
    t_end: f64,
    opts: &OdeOptions,
    mut observer: impl FnMut(&DenseStep) -> Control,
) -> Result<Outcome, OdeError> {
    if t_end == 0.0 {
        return Ok(Outcome { t: 0.0, y: y0, stopped: false, steps: 0 });
    }
    let dir = t_end.signum();
    let mut t = 0.0;
    let mut y = y0;
    let mut k1 = rhs(&y);
    if !(k1[0].is_finite() && k1[1].is_finite()) {
        return Err(OdeError::NonFinite { t });
    }
    let mut h = initial_step(&rhs, &y, &k1, dir, opts);
    let mut steps = 0usize;
    let mut rejected_last = false;
    loop {
        if steps >= opts.max_steps {
            return Err(OdeError::TooManySteps(opts.max_steps));
        }
        let remaining = (t_end - t).abs();
        let last = h >= remaining;
        let h_try = if last { remaining } else { h };
        if h_try <= 1e-14 * t.abs().max(1.0) && !last {
            return Err(OdeError::StepFailure { t });
        }
        let s = stages(&rhs, &y, &k1, dir * h_try);
        let err = error_norm(&s.err, &y, &s.y1, opts);
        if !err.is_finite() {
            if h_try <= 1e-14 * t.abs().max(1.0) {
                return Err(OdeError::NonFinite { t });
            }
            h = 0.2 * h_try;
            rejected_last = true;
            continue;
        }
        if err <= 1.0 {
            let hs = dir * h_try;
            let t1 = if last { t_end } else { t + hs };
            let k = &s.k;
            let mut rcont = [[0.0; 2]; 5];
            for i in 0..2 {
                let dy = s.y1[i] - y[i];
                let bspl = hs * k[0][i] - dy;
                rcont[0][i] = y[i];
                rcont[1][i] = dy;
                rcont[2][i] = bspl;
                rcont[3][i] = dy - hs * k[6][i] - bspl;
                rcont[4][i] = hs
                    * (D1 * k[0][i] + D3 * k[2][i] + D4 * k[3][i] + D5 * k[4][i] + D6 * k[5][i] + D7 * k[6][i]);
            }
            let step = DenseStep { t0: t, t1, y0: y, y1: s.y1, f0: k1, rcont };
            steps += 1;
            t = t1;
            y = s.y1;
            k1 = s.k[6];
            if let Control::Stop = observer(&step) {
                return Ok(Outcome { t, y, stopped: true, steps });
            }
            if last {
                return Ok(Outcome { t, y, stopped: false, steps });
            }
            let mut fac = (0.9 * err.max(1e-10).powf(-0.2)).clamp(0.2, 5.0);
            if rejected_last {
                fac = fac.min(1.0);
            }
            h = (h_try * fac).min(opts.max_step);
            rejected_last = false;
        } else {
            h = h_try * (0.9 * err.powf(-0.2)).clamp(0.2, 1.0);
            rejected_last = true;
        }
    }
}
