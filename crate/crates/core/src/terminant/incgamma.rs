//! Upper incomplete gamma function for complex parameters and the terminant
//! assembled from its defining formula.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::numerics::{c, is_gamma_pole, log_gamma, rgamma};
use crate::C64;

const CF_MAX_ITER: usize = 20_000;
const SERIES_MAX_ITER: usize = 2_000;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `ln Γ(a, x)` on the principal branch of `x`, up to a multiple of `2πi`.
pub fn ln_upper_gamma(a: C64, x: C64) -> Result<C64> {
    if x.norm() == 0.0 {
        return Err(Error::domain("incomplete gamma at x = 0"));
    }
    if x.norm() > a.norm().max(4.0) {
        return continued_fraction(a, x);
    }
    Ok(upper_gamma_small(a, x)?.ln())
}

/// Legendre continued fraction, modified Lentz evaluation.
fn continued_fraction(a: C64, x: C64) -> Result<C64> {
    let tiny = C64::new(1e-300, 0.0);
    let mut b = x + 1.0 - a;
    let mut cc = C64::new(1.0 / 1e-300, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for i in 1..=CF_MAX_ITER {
        let an = -(i as f64) * (c(i as f64, 0.0) - a);
        b += 2.0;
        d = an * d + b;
        if d.norm() < 1e-300 {
            d = tiny;
        }
        cc = b + an / cc;
        if cc.norm() < 1e-300 {
            cc = tiny;
        }
        d = d.inv();
        let del = d * cc;
        h *= del;
        if (del - 1.0).norm() < 1e-16 {
            return Ok(-x + a * x.ln() + h.ln());
        }
    }
    Err(Error::Unconverged {
        what: "incomplete gamma continued fraction",
        estimate: h.norm(),
    })
}

/// `Γ(a, x)` for moderate `|x|`: raise `a` into `[0, 1)`, use the series,
/// then recur down with `Γ(a, x) = (Γ(a+1, x) - x^a e^{-x}) / a`.
fn upper_gamma_small(a: C64, x: C64) -> Result<C64> {
    let shift = if a.re < 0.0 { (-a.re).ceil() as usize } else { 0 };
    let top = a + shift as f64;
    let mut value = if is_gamma_pole(top) {
        exp_integral_e1(x)?
    } else {
        log_gamma(top)?.exp() - lower_gamma(top, x)?
    };
    let lnx = x.ln();
    for k in (0..shift).rev() {
        let ak = a + k as f64;
        value = (value - (ak * lnx - x).exp()) / ak;
    }
    Ok(value)
}

/// `γ(a, x) = x^a e^{-x} Σ x^n / (a (a+1) ... (a+n))`.
fn lower_gamma(a: C64, x: C64) -> Result<C64> {
    let mut term = a.inv();
    let mut sum = term;
    for n in 1..SERIES_MAX_ITER {
        term *= x / (a + n as f64);
        sum += term;
        if term.norm() < 1e-17 * sum.norm() {
            return Ok(sum * (a * x.ln() - x).exp());
        }
    }
    Err(Error::Unconverged {
        what: "incomplete gamma series",
        estimate: sum.norm(),
    })
}

/// `E_1(x) = Γ(0, x)` by its ascending series.
fn exp_integral_e1(x: C64) -> Result<C64> {
    let mut term = C64::new(1.0, 0.0);
    let mut sum = C64::new(0.0, 0.0);
    for n in 1..SERIES_MAX_ITER {
        term *= -x / n as f64;
        let add = term / n as f64;
        sum += add;
        if add.norm() < 1e-17 * sum.norm().max(1e-300) {
            return Ok(-EULER_GAMMA - x.ln() - sum);
        }
    }
    Err(Error::Unconverged {
        what: "exponential integral series",
        estimate: sum.norm(),
    })
}

/// `Π_p(w)` from the incomplete-gamma definition, continuing `Γ(1-p, ·)`
/// across the negative axis when `arg(we^{±πi/2})` leaves `(-π, π]`.
pub fn terminant_via_incomplete_gamma(p: C64, w: C64) -> Result<C64> {
    super::check_order(p)?;
    let theta = w.arg();
    if w.norm() == 0.0 || theta.abs() >= PI {
        return Err(Error::domain("terminant argument must satisfy |arg w| < π"));
    }
    let a = 1.0 - p;
    let lnw = C64::new(w.norm().ln(), theta);
    let mut total = C64::new(0.0, 0.0);
    for sigma in [1.0f64, -1.0] {
        let outer = p * lnw + c(0.0, sigma * FRAC_PI_2) * p + c(0.0, sigma) * w;
        let arg_x = theta + sigma * FRAC_PI_2;
        let term = if arg_x > -PI && arg_x <= PI {
            (outer + ln_upper_gamma(a, C64::from_polar(w.norm(), arg_x))?).exp()
        } else {
            let k = if arg_x > PI { 1.0 } else { -1.0 };
            let x = C64::from_polar(w.norm(), arg_x - 2.0 * PI * k);
            let rotated = (outer + c(0.0, 2.0 * PI * k) * a + ln_upper_gamma(a, x)?).exp();
            let jump = (outer + c(0.0, PI * k) * a).exp() * c(0.0, 2.0 * PI * k) * rgamma(p);
            rotated - jump
        };
        total += term;
    }
    Ok(total * 0.5)
}
