//! Regularized Gauss function `F(a,b;c;x) = ₂F₁(a,b;c;x)/Γ(c)` on `x ≤ 0`.
//!
//! The power series is summed for `|x| ≤ 1/2`. Further out the solution is
//! carried along the negative axis by Taylor steps of the hypergeometric
//! differential equation, each step at most half the distance to the
//! singular point `0`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numerics::{c, is_gamma_pole, rgamma};
use crate::C64;

const SERIES_RADIUS: f64 = 0.5;
const MAX_TERMS: usize = 600;

/// Value and derivative of the regularized series at `|x| ≤ 1/2`.
fn series(a: C64, b: C64, cc: C64, x: f64) -> Result<(C64, C64)> {
    let (n0, mut term) = if is_gamma_pole(cc) {
        let n0 = (-cc.re) as usize + 1;
        let mut t = c(1.0, 0.0);
        for k in 0..n0 {
            t *= (a + k as f64) * (b + k as f64) * x / (k + 1) as f64;
        }
        (n0, t)
    } else {
        (0, rgamma(cc))
    };
    let mut sum = term;
    if x == 0.0 {
        return Ok((sum, c(0.0, 0.0)));
    }
    let mut deriv = term * (n0 as f64 / x);
    let mut small = 0;
    for n in n0..n0 + MAX_TERMS {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) * x / ((nf + 1.0) * (cc + nf));
        sum += term;
        deriv += term * ((nf + 1.0) / x);
        if term.norm() <= 1e-17 * sum.norm() {
            small += 1;
            if small >= 2 {
                return Ok((sum, deriv));
            }
        } else {
            small = 0;
        }
        if term.norm() == 0.0 {
            return Ok((sum, deriv));
        }
    }
    Err(Error::Unconverged {
        what: "hypergeometric series",
        estimate: sum.norm(),
    })
}

/// One Taylor step of `x(1-x)y'' + (c-(a+b+1)x)y' - ab y = 0` from `x0` to `x0+h`,
/// in the scaled coefficients `d_k = y^{(k)}(x0) h^k / k!`.
fn taylor_step(a: C64, b: C64, cc: C64, x0: f64, h: f64, y: C64, dy: C64) -> Result<(C64, C64)> {
    let h_over_p0 = (h / x0) / (1.0 - x0);
    let h2_over_p0 = h * h_over_p0;
    let p1 = 1.0 - 2.0 * x0;
    let q0 = cc - (a + b + 1.0) * x0;
    let q1 = -(a + b + 1.0);
    let rr = -(a * b);
    let (mut d0, mut d1) = (y, dy * h);
    let mut value = d0 + d1;
    let mut deriv = d1;
    let mut small = 0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let d2 = -((q0 + p1 * kf) * (kf + 1.0) * d1 * h_over_p0
            + (rr + q1 * kf - kf * (kf - 1.0)) * d0 * h2_over_p0)
            / ((kf + 2.0) * (kf + 1.0));
        value += d2;
        deriv += d2 * (kf + 2.0);
        if d2.norm() * (kf + 2.0) <= 1e-17 * value.norm().min(deriv.norm()).max(1e-300) {
            small += 1;
            if small >= 3 {
                return Ok((value, deriv / h));
            }
        } else {
            small = 0;
        }
        d0 = d1;
        d1 = d2;
    }
    Err(Error::Unconverged {
        what: "hypergeometric continuation",
        estimate: value.norm(),
    })
}

/// Regularized hypergeometric function `F(a,b;c;x)` for real `x ≤ 0`,
/// entire in `c` (including `c = 0, -1, ...`).
pub fn reg_hyp_f(a: C64, b: C64, cc: C64, x: f64) -> Result<C64> {
    if !(x <= 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("reg_hyp_f supports finite x ≤ 0, got {x}")));
    }
    if x >= -SERIES_RADIUS {
        return Ok(series(a, b, cc, x)?.0);
    }
    let mut x0 = -SERIES_RADIUS;
    let (mut y, mut dy) = series(a, b, cc, x0)?;
    while x0 > x {
        let next = (1.5 * x0).max(x);
        let (ny, ndy) = taylor_step(a, b, cc, x0, next - x0, y, dy)?;
        y = ny;
        dy = ndy;
        x0 = next;
    }
    Ok(y)
}

/// Closed form of `F(ν+1/2, -ν+1/2; 1/2; -s)` for `s ≥ 0`:
/// `(((1+s)^{1/2}+s^{1/2})^{2ν} + ((1+s)^{1/2}-s^{1/2})^{2ν}) / (2(1+s)^{1/2}√π)`.
///
/// The `1/√π` is the regularization `1/Γ(1/2)`; without it the expression is
/// the ordinary Gauss function.
pub fn half_order_kernel(nu: C64, s: f64) -> C64 {
    let root1 = (1.0 + s).sqrt();
    let roots = s.sqrt();
    let up = root1 + roots;
    // √(1+s) - √s = 1/(√(1+s) + √s)
    let lu = up.ln();
    let two_nu = nu * 2.0;
    ((two_nu * lu).exp() + (-two_nu * lu).exp()) / (2.0 * root1 * PI.sqrt())
}
