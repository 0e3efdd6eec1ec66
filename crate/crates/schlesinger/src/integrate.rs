//! Adaptive Dormand–Prince 5(4) integration of the equation along straight
//! segments in the complex x-plane.

use num_complex::Complex64 as C;

use crate::error::{Error, Result};
use crate::pvi::{params_from_theta, rhs_unchecked, Jet, ParameterVector, SolutionTrace, GUARD_MIN};
use crate::rational::ThetaVector;

#[derive(Clone, Debug)]
pub struct IntegrateOptions {
    /// Local error tolerance, used both as absolute and relative tolerance.
    pub tol: f64,
    pub max_samples: usize,
    /// Each segment gets at least this many steps (caps the step size).
    pub min_steps_per_segment: usize,
}

impl Default for IntegrateOptions {
    fn default() -> Self {
        IntegrateOptions { tol: 1e-10, max_samples: 1_000_000, min_steps_per_segment: 16 }
    }
}

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
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

type Y = [C; 2];

fn axpy(y: &Y, terms: &[(f64, &Y)], h: f64) -> Y {
    let mut out = *y;
    for (c, k) in terms {
        out[0] += k[0] * (c * h);
        out[1] += k[1] * (c * h);
    }
    out
}

struct Segment {
    a: C,
    d: C,
    p: ParameterVector,
}

impl Segment {
    fn x(&self, t: f64) -> C {
        self.a + self.d * t
    }

    /// dy/dt for y = (u, du/dx); `None` when the state is singular.
    fn f(&self, t: f64, y: &Y) -> Option<Y> {
        let x = self.x(t);
        let j = Jet::new(x, y[0], y[1]);
        if !j.is_regular() {
            return None;
        }
        let dd = rhs_unchecked(x, y[0], y[1], &self.p);
        if !(dd.re.is_finite() && dd.im.is_finite()) {
            return None;
        }
        Some([y[1] * self.d, dd * self.d])
    }
}

/// Distance from a point to the segment [a, b].
fn dist_to_segment(p: C, a: C, b: C) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    let t = if len2 == 0.0 { 0.0 } else { (((p - a) * d.conj()).re / len2).clamp(0.0, 1.0) };
    (a + d * t - p).norm()
}

/// Integrates from `start` through the waypoints; `path[0]` must equal `start.x`.
pub fn integrate(start: Jet, theta: [C; 4], path: &[C], tol: f64, max_samples: usize) -> Result<SolutionTrace> {
    let opts = IntegrateOptions { tol, max_samples, ..IntegrateOptions::default() };
    integrate_with(start, theta, None, path, &opts)
}

pub fn integrate_with(
    start: Jet,
    theta: [C; 4],
    theta_exact: Option<ThetaVector>,
    path: &[C],
    opts: &IntegrateOptions,
) -> Result<SolutionTrace> {
    if path.len() < 2 {
        return Err(Error::InvalidInput("path needs at least two waypoints".into()));
    }
    if path[0] != start.x {
        return Err(Error::InvalidInput(format!("path starts at {} but the jet is at {}", path[0], start.x)));
    }
    if !(opts.tol > 0.0) {
        return Err(Error::InvalidInput("tolerance must be positive".into()));
    }
    for w in path.windows(2) {
        if w[0] == w[1] {
            return Err(Error::InvalidInput(format!("repeated waypoint {}", w[0])));
        }
        for s in [C::new(0.0, 0.0), C::new(1.0, 0.0)] {
            if dist_to_segment(s, w[0], w[1]) < GUARD_MIN {
                return Err(Error::ForbiddenWaypoint(format!("{} -> {}", w[0], w[1])));
            }
        }
    }
    start.check_guards()?;

    let p = params_from_theta(&theta);
    let mut trace = SolutionTrace { theta, theta_exact, samples: vec![start], tol: opts.tol };
    let mut y: Y = [start.u, start.du];
    let h_max = 1.0 / opts.min_steps_per_segment.max(1) as f64;

    for w in path.windows(2) {
        let seg = Segment { a: w[0], d: w[1] - w[0], p };
        let mut t = 0.0f64;
        let mut h = h_max.min(1e-2);
        let mut k1 = match seg.f(0.0, &y) {
            Some(k) => k,
            None => return Err(pole(&trace)),
        };
        while t < 1.0 {
            if h < 1e-14 {
                return Err(Error::StepUnderflow { last: *trace.samples.last().unwrap(), partial: Box::new(trace) });
            }
            // Never leave a sliver at the segment end: near-coincident samples
            // ruin the difference stencils used downstream.
            let rem = 1.0 - t;
            let (hh, last_step) = if h >= rem * (1.0 - 1e-12) {
                (rem, true)
            } else if 2.0 * h > rem {
                (0.5 * rem, false)
            } else {
                (h, false)
            };
            match dopri_step(&seg, t, &y, &k1, hh) {
                None => {
                    // a stage landed on a singular configuration
                    h = hh * 0.25;
                    continue;
                }
                Some((y_new, k7, err_vec)) => {
                    let mut err: f64 = 0.0;
                    for i in 0..2 {
                        let sc = opts.tol + opts.tol * y[i].norm().max(y_new[i].norm());
                        err = err.max(err_vec[i].norm() / sc);
                    }
                    if !err.is_finite() {
                        h = hh * 0.25;
                        continue;
                    }
                    if err <= 1.0 {
                        t = if last_step { 1.0 } else { t + hh };
                        y = y_new;
                        k1 = k7;
                        let x = if last_step { w[1] } else { seg.x(t) };
                        let j = Jet::new(x, y[0], y[1]);
                        if j.check_guards().is_err() {
                            return Err(pole(&trace));
                        }
                        trace.samples.push(j);
                        if trace.samples.len() > opts.max_samples {
                            let last = *trace.samples.last().unwrap();
                            return Err(Error::MaxSamples { last, limit: opts.max_samples, partial: Box::new(trace) });
                        }
                    }
                    let fac = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
                    h = (hh * fac).min(h_max);
                }
            }
        }
    }
    Ok(trace)
}

fn pole(trace: &SolutionTrace) -> Error {
    Error::PoleDetected { last: *trace.samples.last().unwrap(), partial: Box::new(trace.clone()) }
}

fn dopri_step(seg: &Segment, t: f64, y: &Y, k1: &Y, h: f64) -> Option<(Y, Y, Y)> {
    let k2 = seg.f(t + C2 * h, &axpy(y, &[(A21, k1)], h))?;
    let k3 = seg.f(t + C3 * h, &axpy(y, &[(A31, k1), (A32, &k2)], h))?;
    let k4 = seg.f(t + C4 * h, &axpy(y, &[(A41, k1), (A42, &k2), (A43, &k3)], h))?;
    let k5 = seg.f(t + C5 * h, &axpy(y, &[(A51, k1), (A52, &k2), (A53, &k3), (A54, &k4)], h))?;
    let k6 = seg.f(t + h, &axpy(y, &[(A61, k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)], h))?;
    let y_new = axpy(y, &[(B1, k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)], h);
    let k7 = seg.f(t + h, &y_new)?;
    let zero = [C::new(0.0, 0.0); 2];
    let err = axpy(&zero, &[(E1, k1), (E3, &k3), (E4, &k4), (E5, &k5), (E6, &k6), (E7, &k7)], h);
    Some((y_new, k7, err))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> C {
        C::new(x, 0.0)
    }

    #[test]
    fn constant_solution() {
        let theta = [c(0.0), c(0.0), c(0.0), c(1.0)];
        let tr = integrate(Jet::real(2.0, 5.0, 0.0), theta, &[c(2.0), c(3.0)], 1e-10, 10_000).unwrap();
        let last = tr.samples.last().unwrap();
        assert_eq!(last.x, c(3.0));
        assert!((last.u - c(5.0)).norm() < 1e-10);
        assert!(last.du.norm() < 1e-10);
    }

    #[test]
    fn forbidden_waypoint() {
        let theta = [c(0.5); 4];
        let r = integrate(Jet::real(0.5, 2.0, 0.0), theta, &[c(0.5), c(1.5)], 1e-10, 10_000);
        assert!(matches!(r, Err(Error::ForbiddenWaypoint(_))));
    }

    #[test]
    fn path_must_start_at_jet() {
        let r = integrate(Jet::real(0.5, 2.0, 0.0), [c(0.5); 4], &[c(0.4), c(0.6)], 1e-10, 100);
        assert!(matches!(r, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn max_samples() {
        let r = integrate(Jet::new(c(0.3), C::new(2.0, 1.0), c(0.0)), [c(0.5); 4], &[c(0.3), c(0.7)], 1e-10, 5);
        match r {
            Err(Error::MaxSamples { partial, .. }) => assert_eq!(partial.samples.len(), 6),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn pole_is_reported_with_last_jet() {
        // u' large pushes u into 1 quickly: u ≈ 0.9 + 50(x − 0.3)
        let r = integrate(Jet::real(0.3, 0.9, 50.0), [c(0.0), c(0.0), c(0.0), c(1.0)], &[c(0.3), c(0.7)], 1e-10, 100_000);
        match r {
            Err(Error::PoleDetected { last, .. }) | Err(Error::StepUnderflow { last, .. }) => {
                assert!(last.x.re > 0.3 && last.x.re < 0.7)
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
