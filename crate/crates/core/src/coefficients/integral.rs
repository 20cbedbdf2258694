//! Integral representations of `a_N(-μ,ν)` and `b_N(-μ,ν)`, used as
//! independent checks of the closed-form products.

use std::f64::consts::PI;

use super::{reg_hyp_f, OrderPair};
use crate::error::{Error, Result};
use crate::numerics::{c, log_gamma, rgamma, Quadrature};
use crate::C64;

const TOL: f64 = 1e-12;

fn prefactor(pair: OrderPair, shift: f64, order: C64) -> Result<C64> {
    let (a, b) = pair.gamma_args();
    let two_pow = ((pair.mu + shift) * 2f64.ln()).exp();
    Ok(two_pow * PI.sqrt() * log_gamma(order)?.exp() * rgamma(a) * rgamma(b))
}

/// True where `t^{λ-1} (1+t)^{-order}` times the growth of the Gauss
/// functions is below the smallest double.
fn negligible(t: f64, lambda: f64, order: C64, nu: C64) -> bool {
    let growth = (nu.re.abs() + 1.5) * (1.0 + 0.5 * t).ln();
    (lambda - 1.0) * t.ln() - order.re * (1.0 + t).ln() + growth < -745.0
}

fn check_pre(n: usize, pair: OrderPair, lambda: f64, extra: f64) -> Result<()> {
    if !pair.lommel_valid(n) {
        return Err(Error::precondition("Re μ + |Re ν| < 2N + 1"));
    }
    if !(lambda >= 0.0) {
        return Err(Error::precondition("λ ≥ 0"));
    }
    if !(pair.mu.re < 2.0 * n as f64 + lambda + extra) {
        return Err(Error::precondition("Re μ < 2N + λ + 1/2"));
    }
    Ok(())
}

/// `a_N(-μ,ν)` from
/// `2^{μ+1/2} √π Γ(2N-μ+λ+1/2) / (Γ((-μ+ν+1)/2) Γ((-μ-ν+1)/2))
///  × ∫_0^∞ t^{λ-1} (1+t)^{-(2N-μ+λ+1/2)} F(ν+1/2, -ν+1/2; λ; -t/2) dt`, `λ > 0`.
pub fn coeff_integral_check_a(n: usize, mu: C64, nu: C64, lambda: f64) -> Result<C64> {
    let pair = OrderPair::new(mu, nu);
    check_pre(n, pair, lambda, 0.5)?;
    if lambda == 0.0 {
        return Err(Error::precondition("λ > 0"));
    }
    let order = -mu + (2 * n) as f64 + lambda + 0.5;
    let (fa, fb, lam) = (nu + 0.5, -nu + 0.5, c(lambda, 0.0));
    let mut failure = None;
    let res = Quadrature::new(TOL).integrate(|t| {
        if negligible(t, lambda, order, nu) {
            return c(0.0, 0.0);
        }
        match reg_hyp_f(fa, fb, lam, -0.5 * t) {
            Ok(f) => ((lambda - 1.0) * t.ln() - order * (1.0 + t).ln()).exp() * f,
            Err(e) => {
                failure.get_or_insert(e);
                c(0.0, 0.0)
            }
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(prefactor(pair, 0.5, order)? * res.value)
}

/// `b_N(-μ,ν)` from the analogous representation with the pair
/// `F(ν-1/2, -ν+3/2; λ; ·) + F(ν+3/2, -ν-1/2; λ; ·)`; `λ = 0` uses the
/// limiting form with the extra constant `2`.
pub fn coeff_integral_check_b(n: usize, mu: C64, nu: C64, lambda: f64) -> Result<C64> {
    let pair = OrderPair::new(mu, nu);
    check_pre(n, pair, lambda, 0.5)?;
    let order = -mu + (2 * n) as f64 + lambda + 1.5;
    let lam = c(lambda, 0.0);
    let mut failure = None;
    let res = Quadrature::new(TOL).integrate(|t| {
        if negligible(t, lambda, order, nu) {
            return c(0.0, 0.0);
        }
        let x = -0.5 * t;
        let pair_sum = reg_hyp_f(nu - 0.5, -nu + 1.5, lam, x)
            .and_then(|f1| Ok(f1 + reg_hyp_f(nu + 1.5, -nu - 0.5, lam, x)?));
        match pair_sum {
            Ok(f) => ((lambda - 1.0) * t.ln() - order * (1.0 + t).ln()).exp() * f,
            Err(e) => {
                failure.get_or_insert(e);
                c(0.0, 0.0)
            }
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    let inner = if lambda == 0.0 { res.value + 2.0 } else { res.value };
    Ok(-prefactor(pair, -0.5, order)? * inner)
}
