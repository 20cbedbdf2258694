//! Re-expansion of the remainders in terminants,
//!
//! `R_N^{(S)} = C z^{-2N} (Σ_{m<M} a_m(ν) Γ(q_m) Π_{q_m}(z) + R_{N,M}^{(S)})`,
//! `q_m = 2N-m-μ+1/2`, `C = (-1)^N 2^{μ+1/2} √π / (Γ(A)Γ(B))`,
//!
//! and the analogue for `R_N^{(S')}` with `b_m(ν)`, `q_m = 2N-m-μ+3/2` and
//! the sign `(-1)^{N+1}`. Here `a_m`, `b_m` are the coefficients of the
//! large-argument expansions of `K_ν` and `-K'_ν`:
//!
//! `K_ν(x) = (π/(2x))^{1/2} e^{-x} (Σ_{m<M} a_m(ν)/x^m + R_M^{(K)}(x,ν))`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, LN_2, PI};

use serde::{Deserialize, Serialize};

use crate::coefficients::{besselk_a, besselk_b, sign, OrderPair};
use crate::error::{Error, Result};
use crate::lommel::{auto_truncation, round_half_down, TruncationScheme, Which};
use crate::numerics::{
    bessel_k_origin_exponent, bessel_k_prime_scaled, bessel_k_prime_weighted, bessel_k_scaled, bessel_k_weighted, c,
    cos_pi,
    ln_gamma_real, log_gamma, rgamma, Quadrature,
};
use crate::terminant::terminant_eval_tol;
use crate::C64;

const TOL: f64 = 1e-11;
const TERMINANT_TOL: f64 = 1e-13;
/// Largest `|z|` for which `|z|^M |R_M^{(K)}(|z|,ν)|` is taken from quadrature.
const K_QUADRATURE_LIMIT: f64 = 200.0;

/// `K_ν` or `K'_ν`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KWhich {
    K,
    KPrime,
}

/// Source of `|z|^M |R_M^{(K)}(|z|,ν)|` in the tail bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KInput {
    Quadrature,
    Coefficient,
    /// The smaller of the two; quadrature only for `|z| ≤ 200`.
    Best,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TruncationMode {
    /// `N ≈ |z|/2`.
    Plain,
    /// `N ≈ 3|z|/2`, `M ≈ 2|z|`.
    Hyper,
}

/// Re-expanded remainder: `remainder_approx ≈ R_N` with
/// `|R_N - remainder_approx| ≤ tail_bound`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReexpansionResult {
    pub remainder_approx: C64,
    pub tail_bound: f64,
    pub terms_used: usize,
}

fn k_which(which: Which) -> KWhich {
    match which {
        Which::S => KWhich::K,
        Which::SPrime => KWhich::KPrime,
    }
}

fn check_k(nu: C64, m: usize, which: KWhich) -> Result<()> {
    let (mf, nr) = (m as f64, nu.re.abs());
    match which {
        KWhich::K if !(nr < mf + 0.5) => Err(Error::precondition(format!("|Re ν| < M + 1/2 fails for M = {m}"))),
        KWhich::KPrime if m == 0 => Err(Error::precondition("M ≥ 1 required for the derivative")),
        KWhich::KPrime if !(nr < mf - 0.5) => {
            Err(Error::precondition(format!("|Re ν| < M - 1/2 fails for M = {m}")))
        }
        _ => Ok(()),
    }
}

fn check_reexp(z: C64, pair: OrderPair, n: usize, m: usize, which: Which) -> Result<f64> {
    if !(z.re.is_finite() && z.im.is_finite()) || z.norm() == 0.0 {
        return Err(Error::domain("z must be finite and non-zero"));
    }
    let theta = z.arg();
    if theta.abs() > FRAC_PI_2 {
        return Err(Error::domain("re-expansions need |arg z| ≤ π/2"));
    }
    check_k(pair.nu, m, k_which(which))?;
    let limit = 2.0 * n as f64 - m as f64 + shift(which);
    if !(pair.mu.re < limit) {
        return Err(Error::precondition(format!(
            "Re μ < 2N - M + {} fails for (N, M) = ({n}, {m})",
            if which == Which::S { "1/2" } else { "3/2" }
        )));
    }
    Ok(theta)
}

fn shift(which: Which) -> f64 {
    match which {
        Which::S => 0.5,
        Which::SPrime => 1.5,
    }
}

fn k_coefficient(m: usize, nu: C64, which: KWhich) -> C64 {
    match which {
        KWhich::K => besselk_a(m, nu),
        KWhich::KPrime => besselk_b(m, nu),
    }
}

/// `ln |C|`, or `None` when the expansion terminates.
fn ln_abs_prefactor(pair: OrderPair) -> Option<f64> {
    let (a, b) = pair.gamma_args();
    let rg = rgamma(a) * rgamma(b);
    if rg.norm() == 0.0 {
        return None;
    }
    Some((pair.mu.re + 0.5) * LN_2 + 0.5 * PI.ln() + rg.norm().ln())
}

fn prefactor(pair: OrderPair, n: usize, which: Which) -> C64 {
    let (a, b) = pair.gamma_args();
    let s = match which {
        Which::S => sign(n),
        Which::SPrime => -sign(n),
    };
    ((pair.mu + 0.5) * LN_2).exp() * PI.sqrt() * rgamma(a) * rgamma(b) * s
}

/// `C z^{-2N} Σ_{m<M} coef_m(ν) Γ(q_m) Π_{q_m}(z)`.
pub fn reexpansion_sum(z: C64, pair: OrderPair, n: usize, m: usize, which: Which) -> Result<C64> {
    check_reexp(z, pair, n, m, which)?;
    let pref = prefactor(pair, n, which);
    if pref.norm() == 0.0 {
        return Ok(c(0.0, 0.0));
    }
    let ln_z2n = z.ln() * (2 * n) as f64;
    let mut sum = c(0.0, 0.0);
    for k in 0..m {
        let q = -pair.mu + (2 * n) as f64 - k as f64 + shift(which);
        let coef = k_coefficient(k, pair.nu, k_which(which));
        if coef.norm() == 0.0 {
            continue;
        }
        let pi = terminant_eval_tol(q, z, TERMINANT_TOL)?;
        sum += coef * (log_gamma(q)? - ln_z2n).exp() * pi;
    }
    Ok(pref * sum)
}

/// Re-expansion of `R_N` with `M` terms and the tail bound.
pub fn reexpand_remainder(z: C64, pair: OrderPair, n: usize, m: usize, which: Which) -> Result<ReexpansionResult> {
    Ok(ReexpansionResult {
        remainder_approx: reexpansion_sum(z, pair, n, m, which)?,
        tail_bound: reexpand_bound(z, pair, n, m, which)?,
        terms_used: m,
    })
}

/// `√(2/π) |cos πν|/π ∫_0^∞ s^{M-1/2} e^{-s} K_x(s) ds`, the closed form of
/// `|cos πν|/|cos πx| · |a_M(x)|` that stays finite when `cos πx = 0`.
fn coefficient_integral(nu: C64, x: f64, m: usize) -> Result<f64> {
    let mf = m as f64;
    let ln_i = 0.5 * PI.ln() + ln_gamma_real(mf + 0.5 + x)? + ln_gamma_real(mf + 0.5 - x)?
        - (mf + 0.5) * LN_2
        - ln_gamma_real(mf + 1.0)?;
    Ok((2.0 / PI).sqrt() * cos_pi(nu).norm() / PI * ln_i.exp())
}

/// `|cos πν|/|cos π Re ν| · |a_M(Re ν)|` (or `|b_M(Re ν)|`).
pub fn k_coefficient_bound(nu: C64, m: usize, which: KWhich) -> Result<f64> {
    check_k(nu, m, which)?;
    let x = nu.re;
    match which {
        KWhich::K => coefficient_integral(nu, x, m),
        KWhich::KPrime => Ok(0.5 * (coefficient_integral(nu, x - 1.0, m)? + coefficient_integral(nu, x + 1.0, m)?)),
    }
}

/// Tail bound with the default source for `|z|^M |R_M^{(K)}(|z|,ν)|`.
pub fn reexpand_bound(z: C64, pair: OrderPair, n: usize, m: usize, which: Which) -> Result<f64> {
    reexpand_bound_with(z, pair, n, m, which, KInput::Best)
}

/// `|C| |z|^{-2N} (|z|^M |R_M^{(K)}(|z|,ν)| |Γ(q)| |Π_q(z)| + k_M Γ(Re q))`, `q = q_M`,
/// where `k_M` is [`k_coefficient_bound`]; the bound on `|R_N - remainder_approx|`.
pub fn reexpand_bound_with(
    z: C64,
    pair: OrderPair,
    n: usize,
    m: usize,
    which: Which,
    input: KInput,
) -> Result<f64> {
    check_reexp(z, pair, n, m, which)?;
    let ln_c = match ln_abs_prefactor(pair) {
        None => return Ok(0.0),
        Some(v) => v - 2.0 * n as f64 * z.norm().ln(),
    };
    let kw = k_which(which);
    let coef = k_coefficient_bound(pair.nu, m, kw)?;
    let x = z.norm();
    let scaled_remainder = match input {
        KInput::Coefficient => coef,
        KInput::Quadrature => besselk_remainder_oracle(x, pair.nu, m, kw)?.norm() * x.powi(m as i32),
        KInput::Best if x <= K_QUADRATURE_LIMIT => {
            coef.min(besselk_remainder_oracle(x, pair.nu, m, kw)?.norm() * x.powi(m as i32))
        }
        KInput::Best => coef,
    };
    let q = -pair.mu + ((2 * n) as f64 - m as f64) + shift(which);
    let pi = terminant_eval_tol(q, z, TERMINANT_TOL)?.norm();
    let first = (ln_c + log_gamma(q)?.re).exp() * scaled_remainder * pi;
    let second = (ln_c + ln_gamma_real(q.re)?).exp() * coef;
    Ok(first + second)
}

/// Exponent of `s^{M-1/2} K_ν(s)` (or `K'_ν`) at the origin.
fn origin_power(nu: C64, m: usize, which: KWhich) -> C64 {
    bessel_k_origin_exponent(nu, which == KWhich::KPrime) + (m as f64 - 0.5)
}

/// `R_M^{(K)}(x,ν)` (or `R_M^{(K')}`) from
/// `(-1)^M √(2/π) cos(πν)/π x^{-M} ∫_0^∞ t^{M-1/2} e^{-t} K_ν(t) / (1+t/x) dt`.
pub fn besselk_remainder_oracle(x: f64, nu: C64, m: usize, which: KWhich) -> Result<C64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("x must be positive, got {x}")));
    }
    check_k(nu, m, which)?;
    let cp = cos_pi(nu);
    if cp.norm() == 0.0 {
        return Ok(c(0.0, 0.0));
    }
    let mf = m as f64;
    let mut failure = None;
    let res = Quadrature::new(TOL).scale((0.5 * mf).max(1.0)).origin_power(origin_power(nu, m, which)).integrate(|t| {
        let ln_w = (mf - 0.5) * t.ln() - 2.0 * t;
        let k = match which {
            KWhich::K => bessel_k_weighted(nu, t, ln_w),
            KWhich::KPrime => bessel_k_prime_weighted(nu, t, ln_w),
        };
        match k {
            Ok(k) => k / (1.0 + t / x),
            Err(e) => {
                failure.get_or_insert(e);
                c(0.0, 0.0)
            }
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(res.value * cp * (sign(m) * (2.0 / PI).sqrt() / PI * (-mf * x.ln()).exp()))
}

/// `R_M^{(K)}(x,ν)` from its definition, `K_ν(x)/((π/(2x))^{1/2} e^{-x}) - Σ_{m<M} a_m(ν)/x^m`.
pub fn besselk_remainder_direct(x: f64, nu: C64, m: usize, which: KWhich) -> Result<C64> {
    let k = match which {
        KWhich::K => bessel_k_scaled(nu, x)?,
        KWhich::KPrime => -bessel_k_prime_scaled(nu, x)?,
    };
    let mut sum = k / (PI / (2.0 * x)).sqrt();
    let mut power = 1.0;
    for j in 0..m {
        sum -= k_coefficient(j, nu, which) * power;
        power /= x;
    }
    Ok(sum)
}

/// `R_{N,M}` by direct quadrature of
/// `(-1)^M √(2/π) cos(πν)/π ∫_0^∞ s^{M-1/2} e^{-s} K_ν(s) J(s) ds`,
/// `J(s) = ∫_0^∞ t^{q-1} e^{-t} / ((1+(t/z)²)(1+s/t)) dt`, `q = q_M`.
pub fn reexpansion_tail_oracle(z: C64, pair: OrderPair, n: usize, m: usize, which: Which) -> Result<C64> {
    let theta = check_reexp(z, pair, n, m, which)?;
    let cp = cos_pi(pair.nu);
    if cp.norm() == 0.0 {
        return Ok(c(0.0, 0.0));
    }
    let q = -pair.mu + ((2 * n) as f64 - m as f64) + shift(which);
    let lg = log_gamma(q)?;
    let alpha = theta.signum() * (theta.abs() - FRAC_PI_3).max(0.0);
    let rot = C64::from_polar(1.0, alpha);
    let inv_z = z.inv();
    let phase = c(0.0, alpha) * q - lg;
    let j_scale = (q.re - 1.0).max(1.0);
    let inner = |s: f64| -> Result<C64> {
        let r = Quadrature::new(TOL).scale(j_scale).integrate(|u| {
            let t = rot * u;
            let w = t * inv_z;
            ((q - 1.0) * u.ln() - t + phase).exp() / ((1.0 + w * w) * (1.0 + s / t))
        })?;
        Ok(r.value)
    };
    let mf = m as f64;
    let nu = pair.nu;
    let kw = k_which(which);
    let mut failure = None;
    let res = Quadrature::new(TOL).scale((0.5 * mf).max(1.0)).origin_power(origin_power(nu, m, kw)).integrate(|s| {
        let ln_w = (mf - 0.5) * s.ln() - 2.0 * s;
        let k = match kw {
            KWhich::K => bessel_k_weighted(nu, s, ln_w),
            KWhich::KPrime => bessel_k_prime_weighted(nu, s, ln_w),
        };
        match k.and_then(|k| Ok(k * inner(s)?)) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                c(0.0, 0.0)
            }
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(res.value * cp * lg.exp() * (sign(m) * (2.0 / PI).sqrt() / PI))
}

/// `Θ_{N,M} = R_{N,M} / (coef_M(ν) Γ(q_M) Π_{q_M}(z))` for `z > 0` and real
/// parameters, which lies in `(0, 1)`.
pub fn theta_reexpansion(z: f64, pair: OrderPair, n: usize, m: usize, which: Which) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::precondition(format!("z must be positive, got {z}")));
    }
    if !pair.is_real() {
        return Err(Error::precondition("μ and ν must be real"));
    }
    let zc = c(z, 0.0);
    check_reexp(zc, pair, n, m, which)?;
    let coef = k_coefficient(m, pair.nu, k_which(which)).re;
    if coef == 0.0 {
        return Err(Error::precondition("first omitted re-expansion coefficient vanishes"));
    }
    let q = -pair.mu + ((2 * n) as f64 - m as f64) + shift(which);
    let first = coef * log_gamma(q)?.re.exp() * terminant_eval_tol(q, zc, TERMINANT_TOL)?.re;
    let theta = reexpansion_tail_oracle(zc, pair, n, m, which)?.re / first;
    if !(theta > -1e-8 && theta < 1.0 + 1e-8) {
        return Err(Error::Invariant(format!("Θ_{{N,M}} = {theta} outside (0, 1)")));
    }
    Ok(theta)
}

/// Truncation indices with `ρ = σ = 0`.
pub fn optimal_truncation(abs_z: f64, pair: OrderPair, mode: TruncationMode) -> Result<TruncationScheme> {
    optimal_truncation_with(abs_z, pair, mode, 0.0, 0.0)
}

/// Plain: `N = round(|z|/2)`. Hyper: `N = round(3|z|/2 + ρ)`, `M = round(2|z| + σ)`.
/// Halves round down; the results are raised into the validity windows and
/// must not exceed `⌈|z|⌉` (plain) or `⌈3|z|⌉`, `⌈4|z|⌉` (hyper).
pub fn optimal_truncation_with(
    abs_z: f64,
    pair: OrderPair,
    mode: TruncationMode,
    rho: f64,
    sigma: f64,
) -> Result<TruncationScheme> {
    if !(abs_z > 0.0) || !abs_z.is_finite() {
        return Err(Error::domain(format!("|z| must be positive, got {abs_z}")));
    }
    match mode {
        TruncationMode::Plain => Ok(TruncationScheme::plain(auto_truncation(abs_z, pair)?)),
        TruncationMode::Hyper => {
            let m_min = ((pair.nu.re.abs() - 0.5).floor() + 1.0).max(0.0) as usize;
            let m = round_half_down(2.0 * abs_z + sigma).max(m_min);
            let n_min = (((pair.mu.re + m as f64 - 0.5) / 2.0).floor() + 1.0).max(1.0) as usize;
            let n = round_half_down(1.5 * abs_z + rho).max(n_min);
            let (n_cap, m_cap) = ((3.0 * abs_z).ceil().max(2.0) as usize, (4.0 * abs_z).ceil().max(1.0) as usize);
            if n > n_cap || m > m_cap {
                return Err(Error::Inapplicable(format!(
                    "no re-expansion indices within N ≤ {n_cap}, M ≤ {m_cap} for |z| = {abs_z}"
                )));
            }
            Ok(TruncationScheme::hyper(n, m))
        }
    }
}
