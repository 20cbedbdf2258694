//! Quadrature evaluation of the remainders, independent of the bounds.
//!
//! Two representations are used:
//!
//! * `R_N^{(S)} = (-1)^N 2^{μ+1} / (Γ(A)Γ(B)) z^{-2N} ∫_0^∞ t^{2N-μ} K_ν(t) / (1+(t/z)²) dt`
//!   (`|arg z| < π/2`; `t^{2N-μ+1} K'_ν(t)` for `S'`),
//! * `R_N^{(S)} = (-1)^N 2^{μ+1/2} √π Γ(p) / (Γ(A)Γ(B)) z^{-2N}
//!   ∫_0^∞ t^{-1/2} (1+t)^{-p} F(ν+1/2, 1/2-ν; 1/2; -t/2) Π_p(z(1+t)) dt`, `p = 2N-μ+1`
//!   (`|arg z| < π`),
//!
//! with `A, B = (-μ±ν+1)/2`. For `S'` off the first path,
//! `2R_N^{(S')}(z,μ,ν) = (μ+ν-1) R_N^{(S)}(z,μ-1,ν-1) + (μ-ν-1) R_N^{(S)}(z,μ-1,ν+1)`.

use std::f64::consts::{FRAC_PI_3, LN_2, PI};

use serde::{Deserialize, Serialize};

use super::{check_valid, check_z, coefficient, ln_abs_coefficient, rgamma_pair, Which};
use crate::coefficients::{half_order_kernel, sign, OrderPair};
use crate::error::{Error, Result};
use crate::numerics::{
    bessel_k_origin_exponent, bessel_k_prime_weighted, bessel_k_weighted, c, log_gamma, Quadrature, QuadratureResult,
};
use crate::terminant::terminant_eval_tol;
use crate::C64;

/// Integral representation used by the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OraclePath {
    /// Bessel path for `|arg z| ≤ π/3`, terminant path otherwise.
    Auto,
    Bessel,
    Terminant,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub rel_tol: f64,
    pub path: OraclePath,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { rel_tol: 1e-11, path: OraclePath::Auto }
    }
}

const BESSEL_PATH_LIMIT: f64 = std::f64::consts::FRAC_PI_2 - 0.01;

/// `R_N^{(S)}(z,μ,ν)` by quadrature.
pub fn oracle_remainder_s(z: C64, pair: OrderPair, n: usize) -> Result<C64> {
    Ok(oracle_remainder_with(z, pair, n, Which::S, OracleConfig::default())?.value)
}

/// `R_N^{(S')}(z,μ,ν)` by quadrature.
pub fn oracle_remainder_s_prime(z: C64, pair: OrderPair, n: usize) -> Result<C64> {
    Ok(oracle_remainder_with(z, pair, n, Which::SPrime, OracleConfig::default())?.value)
}

pub fn oracle_remainder(z: C64, pair: OrderPair, n: usize, which: Which) -> Result<C64> {
    Ok(oracle_remainder_with(z, pair, n, which, OracleConfig::default())?.value)
}

/// Remainder by quadrature with its error estimate.
pub fn oracle_remainder_with(
    z: C64,
    pair: OrderPair,
    n: usize,
    which: Which,
    cfg: OracleConfig,
) -> Result<QuadratureResult> {
    let theta = check_z(z)?;
    check_valid(pair, n)?;
    if !(cfg.rel_tol >= 1e-14 && cfg.rel_tol <= 1e-3) {
        return Err(Error::domain(format!("oracle tolerance must lie in [1e-14, 1e-3], got {}", cfg.rel_tol)));
    }
    if rgamma_pair(pair).norm() == 0.0 {
        return Ok(QuadratureResult { value: c(0.0, 0.0), err_estimate: 0.0, evaluations: 0 });
    }
    let bessel = match cfg.path {
        OraclePath::Auto => theta.abs() <= FRAC_PI_3,
        OraclePath::Bessel => {
            if theta.abs() >= BESSEL_PATH_LIMIT {
                return Err(Error::domain("Bessel path needs |arg z| < π/2 - 0.01"));
            }
            true
        }
        OraclePath::Terminant => false,
    };
    match (bessel, which) {
        (true, _) => bessel_path(z, pair, n, which, cfg.rel_tol),
        (false, Which::S) => terminant_path(z, pair, n, cfg.rel_tol),
        (false, Which::SPrime) => {
            let (mu, nu) = (pair.mu, pair.nu);
            let lower = OrderPair::new(mu - 1.0, nu - 1.0);
            let upper = OrderPair::new(mu - 1.0, nu + 1.0);
            let (w1, w2) = ((mu + nu - 1.0) * 0.5, (mu - nu - 1.0) * 0.5);
            let mut value = c(0.0, 0.0);
            let mut err = 0.0;
            let mut evaluations = 0;
            for (w, p) in [(w1, lower), (w2, upper)] {
                if w.norm() == 0.0 {
                    continue;
                }
                let r = terminant_path(z, p, n, cfg.rel_tol)?;
                value += w * r.value;
                err += w.norm() * r.err_estimate;
                evaluations += r.evaluations;
            }
            Ok(QuadratureResult { value, err_estimate: err, evaluations })
        }
    }
}

fn bessel_path(z: C64, pair: OrderPair, n: usize, which: Which, tol: f64) -> Result<QuadratureResult> {
    let (mu, nu) = (pair.mu, pair.nu);
    let nf = n as f64;
    let power = match which {
        Which::S => -mu + 2.0 * nf,
        Which::SPrime => -mu + 2.0 * nf + 1.0,
    };
    let inv_z = z.inv();
    let mut failure = None;
    let origin = power + bessel_k_origin_exponent(nu, which == Which::SPrime);
    let res = Quadrature::new(tol).scale(power.re.max(1.0)).origin_power(origin).integrate(|t| {
        let lt = t.ln();
        let ln_w = power.re * lt - t;
        let k = match which {
            Which::S => bessel_k_weighted(nu, t, ln_w),
            Which::SPrime => bessel_k_prime_weighted(nu, t, ln_w),
        };
        match k {
            Ok(k) => {
                let q = t * inv_z;
                c(0.0, power.im * lt).exp() * k / (1.0 + q * q)
            }
            Err(e) => {
                failure.get_or_insert(e);
                c(0.0, 0.0)
            }
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    let pref = ((mu + 1.0) * LN_2 - 2.0 * nf * z.ln()).exp() * rgamma_pair(pair) * sign(n);
    Ok(QuadratureResult {
        value: pref * res.value,
        err_estimate: pref.norm() * res.err_estimate,
        evaluations: res.evaluations,
    })
}

fn terminant_path(z: C64, pair: OrderPair, n: usize, tol: f64) -> Result<QuadratureResult> {
    let (mu, nu) = (pair.mu, pair.nu);
    let nf = n as f64;
    let p = -mu + 2.0 * nf + 1.0;
    let lg = log_gamma(p)?;
    let (r, theta) = (z.norm(), z.arg());
    let inner_tol = (tol * 1e-2).max(1e-14);
    let mut failure = None;
    let res = Quadrature::new(tol).scale(1.0).integrate(|t| {
        let w = C64::from_polar(r * (1.0 + t), theta);
        match terminant_eval_tol(p, w, inner_tol) {
            Ok(pi) => {
                let kernel = half_order_kernel(nu, 0.5 * t);
                (lg - p * (1.0 + t).ln() - 0.5 * t.ln()).exp() * kernel * pi
            }
            Err(e) => {
                failure.get_or_insert(e);
                c(0.0, 0.0)
            }
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    let pref = ((mu + 0.5) * LN_2 - 2.0 * nf * z.ln()).exp() * PI.sqrt() * rgamma_pair(pair) * sign(n);
    let value = pref * res.value;
    Ok(QuadratureResult {
        value,
        err_estimate: pref.norm() * res.err_estimate + inner_tol * value.norm(),
        evaluations: res.evaluations,
    })
}

/// `θ_N = R_N / ((-1)^N coef_N / z^{2N})` for `z > 0` and real parameters,
/// which lies in `(0, 1)`.
pub fn sign_magnitude_theta(z: f64, pair: OrderPair, n: usize, which: Which) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::precondition(format!("z must be positive, got {z}")));
    }
    if !pair.is_real() {
        return Err(Error::precondition("μ and ν must be real"));
    }
    check_valid(pair, n)?;
    let coef = coefficient(n, pair, which).re;
    if coef == 0.0 {
        return Err(Error::precondition("first omitted coefficient vanishes"));
    }
    let remainder = oracle_remainder(c(z, 0.0), pair, n, which)?;
    let first = sign(n) * coef.signum() * (ln_abs_coefficient(n, pair, which) - 2.0 * n as f64 * z.ln()).exp();
    let theta = remainder.re / first;
    if !(theta > -1e-8 && theta < 1.0 + 1e-8) {
        return Err(Error::Invariant(format!("θ_N = {theta} outside (0, 1)")));
    }
    Ok(theta)
}
