//! Complex-path propagation of `u'' = (V(z) - lambda) u`.
//!
//! Solutions are carried as `(u, u')` together with an accumulated real
//! exponent `log_scale`; the true values are `u e^{log_scale}` and
//! `u' e^{log_scale}`. Whenever the working pair leaves the window
//! `[e^-L, e^L]` it is renormalized, which changes no ratio and lets the
//! integrator traverse regions where the solution spans thousands of orders
//! of magnitude.
//!
//! The stepper is the Dormand-Prince 5(4) embedded pair with PI step-size
//! control. Boundary data at large `|z|` comes from the leading asymptotics
//!
//! ```text
//!     u ~ z^{-(2n+1)/4} exp[ +- (2/(2n+3)) sqrt(kappa) (iz)^{(2n+3)/2} ]
//! ```
//!
//! (`kappa = g b_n (-1)^{n+1}`, equal to 1 for the canonical spec), whose
//! logarithmic derivative initializes the decaying or growing solution on a
//! ray inside a Stokes region.

use crate::error::{Error, Result};
use crate::path::ComplexPath;
use crate::potential::PotentialSpec;
use crate::stokes::StokesChart;
use crate::C64;

/// Solution sample: position, scaled value pair, and the accumulated
/// rescaling exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolutionState {
    pub z: C64,
    pub u: C64,
    pub du: C64,
    pub log_scale: f64,
}

impl SolutionState {
    pub fn new(z: C64, u: C64, du: C64) -> Result<Self> {
        let st = SolutionState { z, u, du, log_scale: 0.0 };
        st.validate()?;
        Ok(st)
    }

    fn validate(&self) -> Result<()> {
        let finite = self.u.is_finite() && self.du.is_finite() && self.log_scale.is_finite();
        if !finite {
            return Err(Error::NonFinite { at: self.z });
        }
        // A nontrivial solution of a second-order linear ODE cannot have a
        // double zero.
        if self.u.norm() == 0.0 && self.du.norm() == 0.0 {
            return Err(Error::invalid("solution state (u, u') = (0, 0)"));
        }
        Ok(())
    }

    /// Logarithmic derivative `u'/u`.
    pub fn log_deriv(&self) -> C64 {
        self.du / self.u
    }

    /// `ln(|u| + |u'|) + log_scale`, a scale-free magnitude.
    pub fn magnitude_ln(&self) -> f64 {
        (self.u.norm() + self.du.norm()).ln() + self.log_scale
    }

    /// Re-express with a given `log_scale` (same mathematical solution).
    pub fn with_log_scale(&self, target: f64) -> SolutionState {
        let f = (self.log_scale - target).exp();
        SolutionState {
            z: self.z,
            u: self.u * f,
            du: self.du * f,
            log_scale: target,
        }
    }
}

/// Wronskian of two states at the same point: `(u1 u2' - u1' u2, ls1 + ls2)`
/// as a log-scaled value.
pub fn wronskian(a: &SolutionState, b: &SolutionState) -> (C64, f64) {
    (a.u * b.du - a.du * b.u, a.log_scale + b.log_scale)
}

#[derive(Debug, Clone, Copy)]
pub struct IntegratorOptions {
    /// Relative local error per step.
    pub tol: f64,
    /// Renormalize when `max(|u|, |u'|)` leaves `[e^-rescale_ln, e^rescale_ln]`.
    pub rescale_ln: f64,
    /// Hard cap on accepted + rejected steps per `integrate` call.
    pub max_steps: usize,
}

impl Default for IntegratorOptions {
    fn default() -> Self {
        IntegratorOptions {
            tol: 1e-12,
            rescale_ln: 30.0,
            max_steps: 4_000_000,
        }
    }
}

impl IntegratorOptions {
    pub fn with_tol(tol: f64) -> Self {
        IntegratorOptions { tol, ..Default::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitMode {
    /// The solution decaying to zero as `z -> infinity` along the ray.
    Decaying,
    /// The dominant (blowing-up) solution.
    Growing,
}

const DOMINANCE_RATIO: f64 = 100.0;

/// Boundary state from the leading asymptotics, Eq.-(2)-style, for potentials
/// whose top term is the odd one. `z0` must lie strictly inside a shrunk
/// Stokes sector and far enough out that `|V(z0)| >= 100 |lambda|`.
pub fn asymptotic_init(
    spec: &PotentialSpec,
    lambda: C64,
    z0: C64,
    mode: InitMode,
) -> Result<SolutionState> {
    if !spec.has_odd_top() {
        return Err(Error::BadStartPoint(
            "asymptotic_init requires an odd top term; use wkb_init".into(),
        ));
    }
    let n = spec.n();
    let kappa = spec.g() * spec.b()[n] * if n % 2 == 1 { 1.0 } else { -1.0 };
    if kappa <= 0.0 {
        return Err(Error::BadStartPoint(
            "odd coefficient orientation rotates the Stokes regions away from the real axis"
                .into(),
        ));
    }
    let w0 = z0 - spec.xi();
    let chart = StokesChart::with_default_margin(n)?;
    let ri = chart.region_index(w0)?;
    if ri.on_critical_ray || !ri.in_shrunk {
        return Err(Error::BadStartPoint(format!(
            "z0 = {} is on or within eps = {:.4} of a critical ray",
            z0,
            chart.epsilon()
        )));
    }
    let vmag = spec.eval(z0).norm();
    if vmag < DOMINANCE_RATIO * lambda.norm() {
        return Err(Error::BadStartPoint(format!(
            "|V(z0)| = {:.3e} < {} |lambda| = {:.3e}; increase |z0|",
            vmag,
            DOMINANCE_RATIO,
            DOMINANCE_RATIO * lambda.norm()
        )));
    }

    let m2 = (2 * n + 3) as f64;
    let iw = C64::i() * w0;
    // exponent E(z) = (2/(2n+3)) sqrt(kappa) (iz)^{(2n+3)/2}, principal branch
    let e_big = iw.powf(m2 / 2.0) * (2.0 / m2) * kappa.sqrt();
    // dE/dz = sqrt(kappa) i (iz)^{(2n+1)/2}
    let de = C64::i() * iw.powf((2 * n + 1) as f64 / 2.0) * kappa.sqrt();
    // decaying branch: Re[s E(z0)] < 0 (the exponent sign is constant along
    // the ray, so decay at infinity is decay already at z0)
    let s_decay = if e_big.re < 0.0 { 1.0 } else { -1.0 };
    let sign = match mode {
        InitMode::Decaying => s_decay,
        InitMode::Growing => -s_decay,
    };
    let du = -((2 * n + 1) as f64) / (4.0 * w0) + sign * de;
    SolutionState::new(z0, C64::new(1.0, 0.0), du)
}

/// WKB boundary state for even-top (real on the real axis) potentials; test
/// adapter for closed-form spectra. Includes the `-V'/(4(V-lambda))`
/// prefactor term.
pub fn wkb_init(
    spec: &PotentialSpec,
    lambda: C64,
    z0: C64,
    mode: InitMode,
) -> Result<SolutionState> {
    let v = spec.eval(z0);
    if v.norm() < DOMINANCE_RATIO * lambda.norm() {
        return Err(Error::BadStartPoint(format!(
            "|V(z0)| = {:.3e} too small against |lambda|; increase |z0|",
            v.norm()
        )));
    }
    let root = (v - lambda).sqrt();
    let e_out = z0 / z0.norm();
    let s_decay = if (root * e_out).re > 0.0 { -1.0 } else { 1.0 };
    let sign = match mode {
        InitMode::Decaying => s_decay,
        InitMode::Growing => -s_decay,
    };
    let du = sign * root - spec.eval_deriv(z0) / (4.0 * (v - lambda));
    SolutionState::new(z0, C64::new(1.0, 0.0), du)
}

/// Boundary state dispatching on the potential shape.
pub fn boundary_init(
    spec: &PotentialSpec,
    lambda: C64,
    z0: C64,
    mode: InitMode,
) -> Result<SolutionState> {
    if spec.has_odd_top() {
        asymptotic_init(spec, lambda, z0, mode)
    } else {
        wkb_init(spec, lambda, z0, mode)
    }
}

/// Start radius for shooting: far enough out that the asymptotic exponent
/// magnitude reaches ~40 (truncation below double precision), the potential
/// dominates `lambda` by the factor 100, and the top term dominates the
/// lower coefficients.
pub fn default_radius(spec: &PotentialSpec, lambda: C64) -> f64 {
    let m = spec.top_degree() as f64;
    let ctop = spec.top_coeff();
    let q = (m + 2.0) / 2.0;
    let l_exp = if spec.has_odd_top() {
        // (1/q) sqrt(c) L^q |cos(q pi / 2)| = 40 with |cos| = sqrt(1/2)
        (40.0 * q * std::f64::consts::SQRT_2 / ctop.sqrt()).powf(1.0 / q)
    } else {
        (40.0 * q / ctop.sqrt()).powf(1.0 / q)
    };
    let l_dom = (DOMINANCE_RATIO * (1.0 + lambda.norm()) / ctop).powf(1.0 / m);
    let mut l = l_exp.max(l_dom).max(1.0);
    // enforce top-term dominance over the lower-degree terms by evaluation
    for _ in 0..200 {
        let ok = [C64::new(-l, 0.0), C64::new(l, 0.0)].iter().all(|&z| {
            let w = z - spec.xi();
            let top = if spec.has_odd_top() {
                C64::i() * w * w.powu(2 * spec.n() as u32) * spec.g() * spec.b()[spec.n()]
            } else {
                w.powu(2 * spec.n() as u32) * spec.a()[spec.n()]
            };
            let rest = (spec.eval(z) - top).norm();
            top.norm() >= 20.0 * rest
        });
        if ok {
            break;
        }
        l *= 1.15;
    }
    l
}

// Dormand-Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A2: [f64; 1] = [1.0 / 5.0];
const A3: [f64; 2] = [3.0 / 40.0, 9.0 / 40.0];
const A4: [f64; 3] = [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0];
const A5: [f64; 4] = [
    19372.0 / 6561.0,
    -25360.0 / 2187.0,
    64448.0 / 6561.0,
    -212.0 / 729.0,
];
const A6: [f64; 5] = [
    9017.0 / 3168.0,
    -355.0 / 33.0,
    46732.0 / 5247.0,
    49.0 / 176.0,
    -5103.0 / 18656.0,
];
const B5: [f64; 6] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
];
// b5 - b4 error coefficients
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

#[derive(Clone, Copy)]
struct Pair {
    u: C64,
    v: C64,
}

impl Pair {
    fn mul_add(self, h: f64, k: &[Pair], w: &[f64]) -> Pair {
        let mut u = self.u;
        let mut v = self.v;
        for (ki, wi) in k.iter().zip(w.iter()) {
            u += h * wi * ki.u;
            v += h * wi * ki.v;
        }
        Pair { u, v }
    }

    fn norm(self) -> f64 {
        self.u.norm() + self.v.norm()
    }
}

struct Stepper<'a, F: Fn(C64) -> C64> {
    v_eval: &'a F,
    lambda: C64,
    opts: IntegratorOptions,
    steps: usize,
    err_old: f64,
}

impl<'a, F: Fn(C64) -> C64> Stepper<'a, F> {
    fn rhs(&self, z: C64, dir: C64, y: Pair) -> Pair {
        Pair {
            u: dir * y.v,
            v: dir * ((self.v_eval)(z) - self.lambda) * y.u,
        }
    }

    /// Integrate one straight segment from `za` to `zb`, updating the state
    /// and `log_scale`, optionally emitting nothing (endpoint collected by
    /// the caller).
    fn segment(
        &mut self,
        za: C64,
        zb: C64,
        y: &mut Pair,
        log_scale: &mut f64,
        h: &mut f64,
        h_max: f64,
    ) -> Result<()> {
        let seg = zb - za;
        let len = seg.norm();
        let dir = seg / len;
        let mut s = 0.0;
        let mut k1 = self.rhs(za, dir, *y);
        let h_min = 1e-13 * (1.0 + len);

        while s < len {
            if self.steps >= self.opts.max_steps {
                return Err(Error::StepUnderflow { at: za + s * dir, h: *h });
            }
            self.steps += 1;
            let hh = h.min(h_max).min(len - s);
            if hh < h_min {
                // tail clipping: snap to the endpoint
                if len - s < h_min {
                    break;
                }
                return Err(Error::StepUnderflow { at: za + s * dir, h: hh });
            }
            let z = |c: f64| za + (s + c * hh) * dir;

            let k2 = self.rhs(z(C[1]), dir, y.mul_add(hh, &[k1], &A2));
            let k3 = self.rhs(z(C[2]), dir, y.mul_add(hh, &[k1, k2], &A3));
            let k4 = self.rhs(z(C[3]), dir, y.mul_add(hh, &[k1, k2, k3], &A4));
            let k5 = self.rhs(z(C[4]), dir, y.mul_add(hh, &[k1, k2, k3, k4], &A5));
            let k6 = self.rhs(z(C[5]), dir, y.mul_add(hh, &[k1, k2, k3, k4, k5], &A6));
            let y5 = y.mul_add(hh, &[k1, k2, k3, k4, k5, k6], &B5);
            let k7 = self.rhs(z(1.0), dir, y5);

            let ks = [k1, k2, k3, k4, k5, k6, k7];
            let mut eu = C64::new(0.0, 0.0);
            let mut ev = C64::new(0.0, 0.0);
            for (ki, ei) in ks.iter().zip(E.iter()) {
                eu += hh * ei * ki.u;
                ev += hh * ei * ki.v;
            }
            let sc = 1e-300 + self.opts.tol * y.norm().max(y5.norm());
            let err = (eu.norm().max(ev.norm())) / sc * self.opts.tol;
            // err is now relative to tol: accept iff err <= tol
            if !err.is_finite() || !y5.u.is_finite() || !y5.v.is_finite() {
                return Err(Error::NonFinite { at: z(1.0) });
            }

            if err <= self.opts.tol {
                s += hh;
                *y = y5;
                k1 = k7;
                // PI controller (Hairer-style)
                let e_new = (err / self.opts.tol).max(1e-10);
                let e_old = (self.err_old / self.opts.tol).max(1e-10);
                let fac = 0.9 * e_new.powf(-0.17) * e_old.powf(0.04);
                *h = hh * fac.clamp(0.2, 5.0);
                self.err_old = err;

                let m = y.u.norm().max(y.v.norm());
                if m > self.opts.rescale_ln.exp() || m < (-self.opts.rescale_ln).exp() {
                    y.u /= m;
                    y.v /= m;
                    k1.u /= m;
                    k1.v /= m;
                    *log_scale += m.ln();
                }
            } else {
                let fac = 0.9 * (self.opts.tol / err).powf(0.2);
                *h = hh * fac.clamp(0.1, 1.0);
            }
        }
        Ok(())
    }
}

fn run<F: Fn(C64) -> C64>(
    v_eval: &F,
    lambda: C64,
    path: &ComplexPath,
    init: &SolutionState,
    opts: IntegratorOptions,
    mut collect: impl FnMut(&SolutionState),
) -> Result<SolutionState> {
    if (init.z - path.start()).norm() > 1e-9 * (1.0 + path.start().norm()) {
        return Err(Error::invalid(format!(
            "initial state is at {} but the path starts at {}",
            init.z,
            path.start()
        )));
    }
    init.validate()?;
    if !(opts.tol > 0.0) {
        return Err(Error::invalid("tolerance must be positive"));
    }

    let h_max = path.total_length() / 16.0;
    let mut y = Pair { u: init.u, v: init.du };
    let mut log_scale = init.log_scale;
    let mut stepper = Stepper {
        v_eval,
        lambda,
        opts,
        steps: 0,
        err_old: opts.tol,
    };
    // initial step guess from the local oscillation rate
    let k0 = ((v_eval)(path.start()) - lambda).norm().sqrt();
    let mut h = (0.1 / (1.0 + k0)).min(h_max);

    let mut state = *init;
    collect(&state);
    for (za, zb) in path.segments() {
        stepper.segment(za, zb, &mut y, &mut log_scale, &mut h, h_max)?;
        state = SolutionState { z: zb, u: y.u, du: y.v, log_scale };
        state.validate()?;
        collect(&state);
    }
    Ok(state)
}

/// Propagate a state along a path; returns the endpoint state.
pub fn integrate(
    spec: &PotentialSpec,
    lambda: C64,
    path: &ComplexPath,
    init: &SolutionState,
    opts: IntegratorOptions,
) -> Result<SolutionState> {
    run(&|z| spec.eval(z), lambda, path, init, opts, |_| {})
}

/// Propagate along a path collecting the state at every waypoint
/// (including the first).
pub fn integrate_through(
    spec: &PotentialSpec,
    lambda: C64,
    path: &ComplexPath,
    init: &SolutionState,
    opts: IntegratorOptions,
) -> Result<Vec<SolutionState>> {
    let mut out = Vec::with_capacity(path.waypoints().len());
    run(&|z| spec.eval(z), lambda, path, init, opts, |s| out.push(*s))?;
    Ok(out)
}

/// Same as [`integrate_through`] for an arbitrary coefficient function; used
/// by tests with closed-form potentials.
pub fn integrate_through_with<F: Fn(C64) -> C64>(
    v_eval: F,
    lambda: C64,
    path: &ComplexPath,
    init: &SolutionState,
    opts: IntegratorOptions,
) -> Result<Vec<SolutionState>> {
    let mut out = Vec::with_capacity(path.waypoints().len());
    run(&v_eval, lambda, path, init, opts, |s| out.push(*s))?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num_complex::Complex64;

    fn canonical() -> PotentialSpec {
        PotentialSpec::canonical(1).unwrap()
    }

    #[test]
    fn free_equation_cosh() {
        // u'' = u with u(0) = 1, u'(0) = 0 -> cosh
        let init = SolutionState::new(C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0))
            .unwrap();
        let path = ComplexPath::line(C64::new(0.0, 0.0), C64::new(1.0, 0.0)).unwrap();
        let out = integrate_through_with(
            |_| C64::new(0.0, 0.0),
            C64::new(-1.0, 0.0),
            &path,
            &init,
            IntegratorOptions::default(),
        )
        .unwrap();
        let u = out.last().unwrap().u * out.last().unwrap().log_scale.exp();
        assert_relative_eq!(u.re, 1f64.cosh(), max_relative = 1e-11);
        assert!(u.im.abs() < 1e-12);
    }

    #[test]
    fn free_equation_cosine_node() {
        // u'' = -u with u(0) = 1, u'(0) = 0 -> cos; cos(pi/2) = 0
        let init = SolutionState::new(C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0))
            .unwrap();
        let path =
            ComplexPath::line(C64::new(0.0, 0.0), C64::new(std::f64::consts::FRAC_PI_2, 0.0))
                .unwrap();
        let out = integrate_through_with(
            |_| C64::new(0.0, 0.0),
            C64::new(1.0, 0.0),
            &path,
            &init,
            IntegratorOptions::default(),
        )
        .unwrap();
        let end = out.last().unwrap();
        assert!(end.u.norm() * end.log_scale.exp() < 1e-10);
    }

    #[test]
    fn decaying_init_signs_on_the_real_axis() {
        let spec = canonical();
        let lambda = C64::new(1.0, 0.0);
        let left = asymptotic_init(&spec, lambda, C64::new(-12.0, 0.0), InitMode::Decaying)
            .unwrap();
        assert!(left.log_deriv().re > 0.0);
        let right = asymptotic_init(&spec, lambda, C64::new(12.0, 0.0), InitMode::Decaying)
            .unwrap();
        assert!(right.log_deriv().re < 0.0);
        // growing mode flips the exponent branch
        let grow = asymptotic_init(&spec, lambda, C64::new(-12.0, 0.0), InitMode::Growing)
            .unwrap();
        assert!(grow.log_deriv().re < 0.0);
    }

    #[test]
    fn init_accepts_interior_ray_and_rejects_bad_points() {
        let spec = canonical();
        let lambda = C64::new(1.0, 0.0);
        let z0 = Complex64::from_polar(12.0, std::f64::consts::PI / 20.0);
        assert!(asymptotic_init(&spec, lambda, z0, InitMode::Decaying).is_ok());
        // on a critical ray
        let ray = Complex64::from_polar(12.0, std::f64::consts::PI / 10.0);
        assert!(asymptotic_init(&spec, lambda, ray, InitMode::Decaying).is_err());
        // too small: |V| = |z|^3 < 100 |lambda|
        assert!(
            asymptotic_init(&spec, lambda, C64::new(-3.0, 0.0), InitMode::Decaying).is_err()
        );
    }

    #[test]
    fn eigen_path_grows_inward() {
        let spec = canonical();
        let lambda = C64::new(1.156267071989, 0.0);
        let init = asymptotic_init(&spec, lambda, C64::new(-12.0, 0.0), InitMode::Decaying)
            .unwrap();
        let path = ComplexPath::line(C64::new(-12.0, 0.0), C64::new(0.0, 0.0)).unwrap();
        let end = integrate(&spec, lambda, &path, &init, IntegratorOptions::default()).unwrap();
        assert!(end.u.is_finite() && end.du.is_finite());
        assert!(end.log_scale > 0.0);
    }

    #[test]
    fn wronskian_is_conserved() {
        // Conservation is bilinear in the pair, so it is testable only on
        // paths of bounded amplification; otherwise cancellation noise
        // (~eps * growth^2) buries the true Wronskian.
        let spec = canonical();
        let lambda = C64::new(0.9, 0.4);
        let opts = IntegratorOptions::default();
        let za = C64::new(-1.2, -0.4);
        let path =
            ComplexPath::new(vec![za, C64::new(0.3, 0.5), C64::new(1.2, -0.1)]).unwrap();
        let s1 = SolutionState::new(za, C64::new(1.0, 0.0), C64::new(0.3, -0.2)).unwrap();
        let s2 = SolutionState::new(za, C64::new(0.1, 0.9), C64::new(1.0, 0.0)).unwrap();
        let (w0, ls0) = wronskian(&s1, &s2);
        let e1 = integrate(&spec, lambda, &path, &s1, opts).unwrap();
        let e2 = integrate(&spec, lambda, &path, &s2, opts).unwrap();
        let (w1, ls1) = wronskian(&e1, &e2);
        let rel = ((w1 * (ls1 - ls0).exp()) - w0).norm() / w0.norm();
        assert!(rel < 10.0 * opts.tol, "wronskian drift {rel:.3e}");
    }

    #[test]
    fn path_independence() {
        let spec = canonical();
        let lambda = C64::new(0.7, 0.2);
        let opts = IntegratorOptions::default();
        let l = default_radius(&spec, lambda);
        let a = C64::new(-l, 0.0);
        let b = C64::new(l, 0.0);
        let init = asymptotic_init(&spec, lambda, a, InitMode::Decaying).unwrap();

        let direct = ComplexPath::line(a, b).unwrap();
        let detour = ComplexPath::new(vec![a, C64::new(-l, 0.2), C64::new(l, 0.2), b]).unwrap();
        let e1 = integrate(&spec, lambda, &direct, &init, opts).unwrap();
        let e2 = integrate(&spec, lambda, &detour, &init, opts).unwrap();
        let f = (e2.log_scale - e1.log_scale).exp();
        let rel = ((e2.u * f - e1.u).norm() + (e2.du * f - e1.du).norm())
            / (e1.u.norm() + e1.du.norm());
        assert!(rel < 100.0 * opts.tol, "path dependence {rel:.3e}");
    }

    #[test]
    fn reversal_returns_initial_state() {
        // Like Wronskian conservation, meaningful on paths whose one-way
        // amplification stays well below 1/tol.
        let spec = canonical();
        let lambda = C64::new(1.4, -0.3);
        let opts = IntegratorOptions::default();
        let za = C64::new(-1.5, 0.3);
        let path =
            ComplexPath::new(vec![za, C64::new(-0.2, -0.5), C64::new(1.4, 0.2)]).unwrap();
        let init = SolutionState::new(za, C64::new(0.8, -0.1), C64::new(0.2, 0.7)).unwrap();
        let fwd = integrate(&spec, lambda, &path, &init, opts).unwrap();
        let back = integrate(&spec, lambda, &path.reversed(), &fwd, opts).unwrap();
        let f = (back.log_scale - init.log_scale).exp();
        let rel = ((back.u * f - init.u).norm() + (back.du * f - init.du).norm())
            / (init.u.norm() + init.du.norm());
        assert!(rel < 100.0 * opts.tol, "reversal error {rel:.3e}");
    }

    #[test]
    fn rescaling_threshold_is_immaterial() {
        let spec = canonical();
        let lambda = C64::new(1.3, 0.0);
        let a = C64::new(-9.0, 0.0);
        let path = ComplexPath::line(a, C64::new(0.0, 0.0)).unwrap();
        let init = asymptotic_init(&spec, lambda, a, InitMode::Decaying).unwrap();
        let mut o1 = IntegratorOptions::default();
        o1.rescale_ln = 30.0;
        let mut o2 = o1;
        o2.rescale_ln = 20.0;
        let e1 = integrate(&spec, lambda, &path, &init, o1).unwrap();
        let e2 = integrate(&spec, lambda, &path, &init, o2).unwrap();
        let f = (e2.log_scale - e1.log_scale).exp();
        let rel = ((e2.u * f - e1.u).norm() + (e2.du * f - e1.du).norm())
            / (e1.u.norm() + e1.du.norm());
        assert!(rel < 10.0 * o1.tol, "rescaling sensitivity {rel:.3e}");
    }

    #[test]
    fn init_position_must_match_path_start() {
        let spec = canonical();
        let lambda = C64::new(1.0, 0.0);
        let init = asymptotic_init(&spec, lambda, C64::new(-12.0, 0.0), InitMode::Decaying)
            .unwrap();
        let path = ComplexPath::line(C64::new(-11.0, 0.0), C64::new(0.0, 0.0)).unwrap();
        assert!(integrate(&spec, lambda, &path, &init, IntegratorOptions::default()).is_err());
    }

    #[test]
    fn default_radius_reaches_dominance() {
        let spec = canonical();
        for &lm in &[0.0, 1.0, 10.0, 42.7] {
            let lambda = C64::new(lm, 0.0);
            let l = default_radius(&spec, lambda);
            assert!(spec.eval(C64::new(l, 0.0)).norm() >= 100.0 * lambda.norm());
            assert!(
                asymptotic_init(&spec, lambda, C64::new(-l, 0.0), InitMode::Decaying).is_ok()
            );
        }
    }
}
