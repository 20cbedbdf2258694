//! Modified Bessel function `K_ν(t)` for complex order and positive argument.
//!
//! Uses `e^t K_ν(t) = ∫_0^∞ e^{-t(cosh u - 1)} cosh(νu) du` with the trapezoid
//! rule, whose error decays exponentially in `1/h` for this analytic integrand.

use crate::error::{Error, Result};
use crate::C64;

const MAX_HALVINGS: u32 = 10;

/// `e^t K_ν(t)`.
pub fn bessel_k_scaled(nu: C64, t: f64) -> Result<C64> {
    bessel_k_weighted(nu, t, 0.0)
}

/// `e^{w+t} K_ν(t)`, with the weight folded into the integrand so that
/// `t^a K_ν(t)` stays finite for small `t` when `K_ν(t)` alone would overflow.
pub fn bessel_k_weighted(nu: C64, t: f64, ln_weight: f64) -> Result<C64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::domain(format!("bessel_k needs t > 0, got {t}")));
    }
    let term = |u: f64| -> C64 {
        let sh = (0.5 * u).sinh();
        let g = 2.0 * t * sh * sh;
        ((nu * u - g + ln_weight).exp() + (-nu * u - g + ln_weight).exp()) * 0.5
    };

    // Truncation point: past the peak of e^{|Re ν|u - t(cosh u - 1)} and
    // far enough that the integrand is negligible.
    let a = nu.re.abs() + 1.0;
    let peak = (a / t).asinh();
    let peak_mag = term(peak).norm().max(term(0.0).norm());
    let mut upper = peak.max(1.0);
    while term(upper).norm() > 1e-19 * peak_mag && upper < 1e3 {
        upper *= 1.25;
    }

    let mut h = (0.5f64).min(1.0 / t.sqrt());
    let mut n = (upper / h).ceil() as usize;
    h = upper / n as f64;
    let mut sum = term(0.0) * 0.5;
    for k in 1..=n {
        sum += term(k as f64 * h);
    }
    let mut prev = sum * h;
    for _ in 0..MAX_HALVINGS {
        h *= 0.5;
        for k in 0..n {
            sum += term((2 * k + 1) as f64 * h);
        }
        n *= 2;
        let current = sum * h;
        if (current - prev).norm() <= 1e-13 * current.norm() {
            return Ok(current);
        }
        prev = current;
    }
    Err(Error::Unconverged {
        what: "bessel_k trapezoid rule",
        estimate: prev.norm(),
    })
}

/// `K_ν(t)`. Underflows to zero beyond `t ≈ 745`; use [`bessel_k_scaled`] there.
pub fn bessel_k(nu: C64, t: f64) -> Result<C64> {
    Ok(bessel_k_scaled(nu, t)? * (-t).exp())
}

/// `e^t K'_ν(t)` from `-2K'_ν = K_{ν-1} + K_{ν+1}`.
pub fn bessel_k_prime_scaled(nu: C64, t: f64) -> Result<C64> {
    Ok(-(bessel_k_scaled(nu - 1.0, t)? + bessel_k_scaled(nu + 1.0, t)?) * 0.5)
}

/// `e^{w+t} K'_ν(t)`.
pub fn bessel_k_prime_weighted(nu: C64, t: f64, ln_weight: f64) -> Result<C64> {
    Ok(-(bessel_k_weighted(nu - 1.0, t, ln_weight)? + bessel_k_weighted(nu + 1.0, t, ln_weight)?) * 0.5)
}

/// `K'_ν(t)`.
pub fn bessel_k_prime(nu: C64, t: f64) -> Result<C64> {
    Ok(bessel_k_prime_scaled(nu, t)? * (-t).exp())
}

/// Exponent `e` of `K_ν(t) ~ C t^e` (or of `K'_ν`) as `t → 0`, for `ν ≠ 0`.
pub fn bessel_k_origin_exponent(nu: C64, derivative: bool) -> C64 {
    let dominant = if nu.re >= 0.0 { nu } else { -nu };
    -dominant - if derivative { 1.0 } else { 0.0 }
}
