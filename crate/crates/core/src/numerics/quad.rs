//! Double-exponential quadrature on `(0, ∞)`.
//!
//! The exp-sinh map `t = c·exp(π/2·sinh u)` clusters nodes at both ends of the
//! half line, so algebraic endpoint singularities at `0` and exponential or
//! algebraic decay at infinity are both handled by a plain trapezoid rule in
//! `u`. The step is halved until two successive levels agree.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::C64;

/// Value of a semi-infinite integral with a self-reported absolute error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: C64,
    pub err_estimate: f64,
    pub evaluations: usize,
}

/// Configurable exp-sinh integrator.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    rel_tol: f64,
    abs_tol: f64,
    max_level: u32,
    scale: Option<f64>,
    origin_power: Option<C64>,
}

const TINY: f64 = 1e-20;
const TAIL_RUN: usize = 3;
const U_LIMIT: f64 = 7.0;
/// Leading exponents below this real part get the origin treatment.
const NEAR_CRITICAL: f64 = -0.9;
const ORIGIN_CUT: f64 = 1e-30;

impl Quadrature {
    pub fn new(rel_tol: f64) -> Self {
        Quadrature {
            rel_tol,
            abs_tol: 0.0,
            max_level: 10,
            scale: None,
            origin_power: None,
        }
    }

    /// Absolute tolerance used when the integral is close to zero.
    pub fn abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    /// Location of the bulk of the integrand. Found by a coarse scan when unset.
    pub fn scale(mut self, scale: f64) -> Self {
        if scale.is_finite() && scale > 0.0 {
            self.scale = Some(scale);
        }
        self
    }

    pub fn max_level(mut self, level: u32) -> Self {
        self.max_level = level;
        self
    }

    /// Leading exponent `e` of the integrand at the origin, `f(t) ~ C t^e`.
    /// For `Re e` close to `-1` the part below `1e-30` is taken as `f(t₀) t₀/(e+1)`.
    pub fn origin_power(mut self, e: C64) -> Self {
        self.origin_power = Some(e);
        self
    }

    pub fn integrate<F: FnMut(f64) -> C64>(&self, mut f: F) -> Result<QuadratureResult> {
        if let Some(e) = self.origin_power.filter(|e| e.re < NEAR_CRITICAL) {
            if !(e.re > -1.0) {
                return Err(Error::domain(format!("integrand exponent {e} at the origin is not integrable")));
            }
            let head = f(ORIGIN_CUT) * ORIGIN_CUT / (e + 1.0);
            if !head.re.is_finite() || !head.im.is_finite() {
                return Err(Error::domain("integrand is not finite near the origin"));
            }
            let rest = self.integrate_plain(|x| f(ORIGIN_CUT + x))?;
            return Ok(QuadratureResult {
                value: rest.value + head,
                err_estimate: rest.err_estimate + f64::EPSILON * head.norm(),
                evaluations: rest.evaluations + 1,
            });
        }
        self.integrate_plain(f)
    }

    fn integrate_plain<F: FnMut(f64) -> C64>(&self, mut f: F) -> Result<QuadratureResult> {
        if !(1e-16..=1e-1).contains(&self.rel_tol) {
            return Err(Error::domain(format!(
                "relative tolerance {} outside [1e-16, 1e-1]",
                self.rel_tol
            )));
        }
        let mut evaluations = 0usize;
        let c = match self.scale {
            Some(c) => c,
            None => match find_scale(&mut f, &mut evaluations) {
                Some(c) => c,
                None => {
                    return Ok(QuadratureResult {
                        value: C64::new(0.0, 0.0),
                        err_estimate: 0.0,
                        evaluations: evaluations.max(1),
                    })
                }
            },
        };

        let mut h = 0.5;
        let node = |u: f64| -> (f64, f64) {
            let e = (FRAC_PI_2 * u.sinh()).exp();
            (c * e, c * e * FRAC_PI_2 * u.cosh())
        };

        let (t0, w0) = node(0.0);
        let f0 = f(t0) * w0;
        evaluations += 1;
        if !f0.re.is_finite() || !f0.im.is_finite() {
            return Err(Error::domain("integrand is not finite at the scale point"));
        }
        let mut sum = f0;
        let mut abs_sum = f0.norm();
        let mut max_seen = f0.norm();
        let mut limits = [0.0f64; 2];
        for (side, dir) in [-1.0f64, 1.0].iter().enumerate() {
            let mut run = 0usize;
            let mut last = f0.norm();
            let mut k = 1usize;
            loop {
                let u = dir * k as f64 * h;
                if u.abs() > U_LIMIT {
                    break;
                }
                let (t, w) = node(u);
                if t == 0.0 || !t.is_finite() || !w.is_finite() {
                    break;
                }
                let v = f(t) * w;
                evaluations += 1;
                if !v.re.is_finite() || !v.im.is_finite() {
                    if last <= 1e-8 * max_seen {
                        break;
                    }
                    return Err(Error::domain(format!("integrand is not finite at t = {t:e}")));
                }
                let m = v.norm();
                sum += v;
                abs_sum += m;
                max_seen = max_seen.max(m);
                last = m;
                limits[side] = u;
                if m <= TINY * max_seen {
                    run += 1;
                    if run >= TAIL_RUN {
                        break;
                    }
                } else {
                    run = 0;
                }
                k += 1;
            }
        }
        let (u_lo, u_hi) = (limits[0], limits[1]);

        let mut prev = sum * h;
        let mut abs_total = abs_sum * h;
        for level in 1..=self.max_level {
            h *= 0.5;
            let mut fresh = C64::new(0.0, 0.0);
            let mut fresh_abs = 0.0;
            let mut u = u_lo + h;
            while u < u_hi {
                let (t, w) = node(u);
                if t > 0.0 && t.is_finite() && w.is_finite() {
                    let v = f(t) * w;
                    evaluations += 1;
                    if !v.re.is_finite() || !v.im.is_finite() {
                        return Err(Error::domain(format!("integrand is not finite at t = {t:e}")));
                    }
                    fresh += v;
                    fresh_abs += v.norm();
                }
                u += 2.0 * h;
            }
            let current = prev * 0.5 + fresh * h;
            abs_total = abs_total * 0.5 + fresh_abs * h;
            let diff = (current - prev).norm();
            let floor = 8.0 * f64::EPSILON * abs_total;
            let target = (self.rel_tol * current.norm()).max(self.abs_tol).max(floor);
            if level >= 2 && diff <= target {
                return Ok(QuadratureResult {
                    value: current,
                    err_estimate: diff.max(floor),
                    evaluations,
                });
            }
            prev = current;
            if level == self.max_level {
                return Err(Error::Unconverged {
                    what: "semi-infinite quadrature",
                    estimate: diff,
                });
            }
        }
        Err(Error::Unconverged {
            what: "semi-infinite quadrature",
            estimate: f64::INFINITY,
        })
    }
}

/// Integrates `f` over `(0, ∞)` with the default configuration.
pub fn integrate_semi_infinite<F: FnMut(f64) -> C64>(f: F, rel_tol: f64) -> Result<QuadratureResult> {
    if !(1e-14..=1e-3).contains(&rel_tol) {
        return Err(Error::domain(format!(
            "relative tolerance {rel_tol} outside [1e-14, 1e-3]"
        )));
    }
    Quadrature::new(rel_tol).integrate(f)
}

fn find_scale<F: FnMut(f64) -> C64>(f: &mut F, evaluations: &mut usize) -> Option<f64> {
    let mut best = None;
    let mut best_mag = 0.0;
    for k in -30..=40 {
        let t = 2f64.powi(k);
        let m = f(t).norm() * t;
        *evaluations += 1;
        if m.is_finite() && m > best_mag {
            best_mag = m;
            best = Some(t);
        }
    }
    best
}
