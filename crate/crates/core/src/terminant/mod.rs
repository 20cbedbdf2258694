//! The basic terminant
//!
//! `Π_p(w) = (w^p/2)(e^{πip/2} e^{iw} Γ(1-p, we^{πi/2}) + e^{-πip/2} e^{-iw} Γ(1-p, we^{-πi/2}))`
//!
//! and the catalogue of bounds on `|Π_p(w)|` that depend only on `p` and `arg w`.
//!
//! Evaluation uses `Π_p(w) = Γ(p)^{-1} ∫_0^∞ t^{p-1} e^{-t} / (1 + (t/w)²) dt`.
//! Near `|arg w| = π/2` the path is rotated away from the pole, and for
//! `|arg w| > π/2` the connection formula
//! `Π_p(w) = Π_p(we^{∓πi}) ± πi Γ(p)^{-1} (∓iw)^p e^{±iw}` reduces to the
//! right half plane. [`terminant_via_incomplete_gamma`] evaluates the
//! defining formula directly and serves as an independent check.

mod bounds;
mod incgamma;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};

use serde::{Deserialize, Serialize};

pub use bounds::{
    chi, piecewise_factor, hyp_half, phi_angle, phi_bound, terminant_bound_catalogue,
    terminant_sup_bound, TerminantBound, TerminantTag,
};
pub use incgamma::{ln_upper_gamma, terminant_via_incomplete_gamma};

use crate::error::{Error, Result};
use crate::numerics::{c, log_gamma, Quadrature};
use crate::C64;

const DEFAULT_TOL: f64 = 1e-13;

/// A validated terminant argument pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TerminantQuery {
    pub p: C64,
    pub w: C64,
}

impl TerminantQuery {
    pub fn new(p: C64, w: C64) -> Result<Self> {
        check_order(p)?;
        check_arg(w)?;
        Ok(TerminantQuery { p, w })
    }
}

pub(crate) fn check_order(p: C64) -> Result<()> {
    if !(p.re > 0.0) || !p.im.is_finite() {
        return Err(Error::domain(format!("terminant order needs Re p > 0, got {p}")));
    }
    Ok(())
}

fn check_arg(w: C64) -> Result<f64> {
    if w.norm() == 0.0 || !w.re.is_finite() || !w.im.is_finite() {
        return Err(Error::domain("terminant argument must be finite and non-zero"));
    }
    let theta = w.arg();
    if theta.abs() >= PI {
        return Err(Error::domain("terminant argument on the negative real axis"));
    }
    Ok(theta)
}

/// `Π_p(w)` for `Re p > 0`, `|arg w| < π`.
pub fn terminant_eval(p: C64, w: C64) -> Result<C64> {
    terminant_eval_tol(p, w, DEFAULT_TOL)
}

pub fn terminant_eval_query(q: TerminantQuery) -> Result<C64> {
    terminant_eval(q.p, q.w)
}

/// `Π_p(w)` with an explicit quadrature tolerance.
pub fn terminant_eval_tol(p: C64, w: C64, rel_tol: f64) -> Result<C64> {
    check_order(p)?;
    let theta = check_arg(w)?;
    let lg = log_gamma(p)?;
    if theta.abs() <= FRAC_PI_2 {
        return right_half(p, w, theta, lg, rel_tol);
    }
    let s = theta.signum();
    let reflected = C64::from_polar(w.norm(), theta - s * PI);
    let base = right_half(p, reflected, theta - s * PI, lg, rel_tol)?;
    let log_jump = p * C64::new(w.norm().ln(), theta - s * FRAC_PI_2) + c(0.0, s) * w - lg;
    Ok(base + c(0.0, s * PI) * log_jump.exp())
}

/// `Γ(p) Π_p(w)`, the integral `∫_0^∞ t^{p-1} e^{-t} / (1 + (t/w)²) dt`.
pub fn gamma_terminant(p: C64, w: C64) -> Result<C64> {
    Ok(terminant_eval(p, w)? * log_gamma(p)?.exp())
}

fn right_half(p: C64, w: C64, theta: f64, lg: C64, rel_tol: f64) -> Result<C64> {
    let alpha = theta.signum() * (theta.abs() - FRAC_PI_3).max(0.0);
    let rot = C64::from_polar(1.0, alpha);
    let w_inv = w.inv();
    let phase = c(0.0, alpha) * p - lg;
    let scale = (p.re - 1.0).max(1.0);
    let r = Quadrature::new(rel_tol).abs_tol(1e-300).scale(scale).integrate(|s| {
        let t = rot * s;
        let q = t * w_inv;
        ((p - 1.0) * s.ln() - t + phase).exp() / (1.0 + q * q)
    })?;
    Ok(r.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::r;

    #[test]
    fn unit_order_unit_argument() {
        let v = terminant_eval(r(1.0), r(1.0)).unwrap();
        assert!((v.re - 0.621_449_624_235_813_3).abs() < 1e-12);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn positive_inputs_in_unit_interval() {
        let v = terminant_eval(r(2.0), r(2.0)).unwrap();
        assert!(v.re > 0.0 && v.re < 1.0 && v.im == 0.0);
    }

    #[test]
    fn recurrence_across_sectors() {
        for (p, w) in [
            (c(0.7, 0.3), C64::from_polar(3.0, 0.2)),
            (c(2.5, -1.0), C64::from_polar(1.5, 1.3)),
            (c(4.0, 0.0), C64::from_polar(6.0, FRAC_PI_2)),
            (c(1.2, 0.5), C64::from_polar(2.0, 2.4)),
            (c(3.0, 0.0), C64::from_polar(0.7, -2.9)),
        ] {
            let lhs = p * (p + 1.0) * terminant_eval(p + 2.0, w).unwrap();
            let rhs = w * w * (1.0 - terminant_eval(p, w).unwrap());
            assert!((lhs - rhs).norm() <= 1e-10 * w.norm_sqr(), "p={p} w={w}");
        }
    }

    #[test]
    fn continuous_across_right_angle() {
        let p = c(2.3, 0.4);
        let below = terminant_eval(p, C64::from_polar(5.0, FRAC_PI_2 - 1e-9)).unwrap();
        let above = terminant_eval(p, C64::from_polar(5.0, FRAC_PI_2 + 1e-9)).unwrap();
        assert!((below - above).norm() < 1e-7);
    }

    #[test]
    fn domain_checks() {
        assert!(terminant_eval(r(0.0), r(1.0)).is_err());
        assert!(terminant_eval(r(1.0), r(-1.0)).is_err());
        assert!(terminant_eval(r(1.0), r(0.0)).is_err());
        assert!(TerminantQuery::new(r(1.0), c(0.0, 1.0)).is_ok());
    }
}
