//! Large-argument expansion of the Lommel function and its derivative,
//!
//! `S_{μ,ν}(z) = z^{μ-1} (Σ_{n<N} (-1)^n a_n(-μ,ν)/z^{2n} + R_N^{(S)}(z,μ,ν))`,
//! `S'_{μ,ν}(z) = z^{μ-2} (Σ_{n<N} (-1)^n b_n(-μ,ν)/z^{2n} + R_N^{(S')}(z,μ,ν))`,
//!
//! with rigorous bounds on the normalized remainders and quadrature oracles
//! that evaluate them independently.

mod bounds;
mod oracle;

use serde::{Deserialize, Serialize};

pub use bounds::{
    all_bounds, best_bound, remainder_bound_combined_real, remainder_bound_complex,
    remainder_bound_complex_combined, remainder_bound_real, RemainderBound,
};
pub use oracle::{
    oracle_remainder, oracle_remainder_s, oracle_remainder_s_prime, oracle_remainder_with,
    sign_magnitude_theta, OracleConfig, OraclePath,
};

use crate::coefficients::{lommel_a, lommel_b, sign, OrderPair};
use crate::error::{Error, Result};
use crate::numerics::{c, rgamma};
use crate::terminant::TerminantTag;
use crate::C64;

/// Which expansion: the function or its derivative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Which {
    S,
    SPrime,
}

/// Truncation indices: `n` terms of the plain expansion, optionally `m`
/// terms of the re-expansion of its remainder, and the free parameter `λ`
/// of the real-order bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationScheme {
    pub n: usize,
    pub m: Option<usize>,
    pub lambda: Option<f64>,
}

impl TruncationScheme {
    pub fn plain(n: usize) -> Self {
        TruncationScheme { n, m: None, lambda: None }
    }

    pub fn hyper(n: usize, m: usize) -> Self {
        TruncationScheme { n, m: Some(m), lambda: None }
    }
}

/// The inequality behind a remainder bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundTag {
    /// The expansion terminates; the remainder vanishes identically.
    Exact,
    /// Real parameters, terminant of order `2N-μ+λ+1/2` (`2N-μ+3/2` for `S'`).
    RealOrder,
    /// Real parameters, closed-form piecewise factor in `arg z`.
    RealPiecewise,
    /// Complex parameters, terminant of order `2N-μ+1` (`2N-μ+2`) with exact gamma ratios.
    ComplexOrder,
    /// As [`BoundTag::ComplexOrder`] with the gamma ratio replaced by the cosine ratio.
    ComplexCosRatio,
    /// Complex parameters, `|arg z| < π/2`, factor `1` or `|csc 2θ|`.
    ComplexSector,
    /// Complex parameters, `|arg z| ≤ π/2`, factor built from `χ`.
    ComplexAxis,
    /// Tail of the re-expanded remainder.
    Reexpansion,
}

impl BoundTag {
    pub fn label(self) -> &'static str {
        match self {
            BoundTag::Exact => "exact",
            BoundTag::RealOrder => "real-order",
            BoundTag::RealPiecewise => "real-piecewise",
            BoundTag::ComplexOrder => "complex-order",
            BoundTag::ComplexCosRatio => "complex-cos-ratio",
            BoundTag::ComplexSector => "complex-sector",
            BoundTag::ComplexAxis => "complex-axis",
            BoundTag::Reexpansion => "reexpansion",
        }
    }
}

impl std::fmt::Display for BoundTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// A truncated expansion together with a rigorous bound on its error.
///
/// `normalized_bound` bounds the bracketed remainder `R_N`; `abs_bound`
/// bounds the error of `approx` itself, i.e. `normalized_bound·|z^{μ-1}|`
/// (`|z^{μ-2}|` for the derivative).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertifiedValue {
    pub approx: C64,
    pub abs_bound: f64,
    pub normalized_bound: f64,
    pub first_omitted: f64,
    pub bound_tag: BoundTag,
    pub terminant_tag: Option<TerminantTag>,
    pub scheme: TruncationScheme,
}

/// `arg z` for `0 < |z| < ∞`, `|arg z| < π`.
pub(crate) fn check_z(z: C64) -> Result<f64> {
    if !(z.re.is_finite() && z.im.is_finite()) || z.norm() == 0.0 {
        return Err(Error::domain(format!("z must be finite and non-zero, got {z}")));
    }
    let theta = z.arg();
    if theta.abs() >= std::f64::consts::PI {
        return Err(Error::domain("z on the negative real axis (|arg z| < π required)"));
    }
    Ok(theta)
}

pub(crate) fn check_valid(pair: OrderPair, n: usize) -> Result<()> {
    if !(pair.mu.re.is_finite() && pair.mu.im.is_finite() && pair.nu.re.is_finite() && pair.nu.im.is_finite()) {
        return Err(Error::domain("μ and ν must be finite"));
    }
    if !pair.lommel_valid(n) {
        return Err(Error::precondition(format!(
            "Re μ + |Re ν| < 2N + 1 fails for N = {n} ({} ≥ {})",
            pair.mu.re + pair.nu.re.abs(),
            2 * n + 1
        )));
    }
    Ok(())
}

/// `1/(Γ((-μ+ν+1)/2) Γ((-μ-ν+1)/2))`, zero exactly when the expansion terminates.
pub(crate) fn rgamma_pair(pair: OrderPair) -> C64 {
    let (a, b) = pair.gamma_args();
    rgamma(a) * rgamma(b)
}

/// `n`th coefficient of the normalized expansion, `a_n(-μ,ν)` or `b_n(-μ,ν)`.
pub fn coefficient(n: usize, pair: OrderPair, which: Which) -> C64 {
    match which {
        Which::S => lommel_a(n, -pair.mu, pair.nu),
        Which::SPrime => lommel_b(n, -pair.mu, pair.nu),
    }
}

/// `ln |a_n(-μ,ν)|` (or `ln |b_n(-μ,ν)|`) as a sum of logarithms; `-∞` when zero.
pub(crate) fn ln_abs_coefficient(n: usize, pair: OrderPair, which: Which) -> f64 {
    let nu2 = pair.nu * pair.nu;
    let mut acc = 0.0;
    for k in 1..=n {
        let s = -pair.mu + (2 * k - 1) as f64;
        acc += (s * s - nu2).norm().ln();
    }
    if which == Which::SPrime {
        acc += (-pair.mu + (2 * n + 1) as f64).norm().ln();
    }
    acc
}

/// `|coef_N| / |z|^{2N}`, the modulus of the first omitted normalized term.
pub fn first_omitted(z: C64, pair: OrderPair, n: usize, which: Which) -> f64 {
    (ln_abs_coefficient(n, pair, which) - 2.0 * n as f64 * z.norm().ln()).exp()
}

/// `Σ_{n<N} (-1)^n coef_n / z^{2n}`, the bracketed partial sum.
pub fn normalized_partial_sum(z: C64, pair: OrderPair, n: usize, which: Which) -> Result<C64> {
    check_z(z)?;
    let inv_z2 = (z * z).inv();
    let mut power = c(1.0, 0.0);
    let mut sum = c(0.0, 0.0);
    for k in 0..n {
        sum += coefficient(k, pair, which) * power * sign(k);
        power *= inv_z2;
    }
    Ok(sum)
}

/// `z^{μ-1}` (or `z^{μ-2}`) on the principal branch.
pub fn outer_factor(z: C64, pair: OrderPair, which: Which) -> C64 {
    let shift = match which {
        Which::S => 1.0,
        Which::SPrime => 2.0,
    };
    ((pair.mu - shift) * z.ln()).exp()
}

/// `N`-term asymptotic approximation of `S_{μ,ν}(z)`.
pub fn partial_sum_s(z: C64, pair: OrderPair, n: usize) -> Result<C64> {
    Ok(outer_factor(z, pair, Which::S) * normalized_partial_sum(z, pair, n, Which::S)?)
}

/// `N`-term asymptotic approximation of `S'_{μ,ν}(z)`.
pub fn partial_sum_s_prime(z: C64, pair: OrderPair, n: usize) -> Result<C64> {
    Ok(outer_factor(z, pair, Which::SPrime) * normalized_partial_sum(z, pair, n, Which::SPrime)?)
}

/// Smallest `N ≥ 1` with `Re μ + |Re ν| < 2N + 1`.
pub(crate) fn min_valid_n(pair: OrderPair) -> usize {
    let need = ((pair.mu.re + pair.nu.re.abs() - 1.0) / 2.0).floor() + 1.0;
    need.max(1.0) as usize
}

/// Nearest integer, halves rounded down.
pub(crate) fn round_half_down(x: f64) -> usize {
    let f = x.floor();
    let n = if x - f > 0.5 { f + 1.0 } else { f };
    n.max(0.0) as usize
}

/// `N ≈ |z|/2` clipped into `[max(1, N_min), max(1, ⌈|z|⌉)]`.
pub fn auto_truncation(abs_z: f64, pair: OrderPair) -> Result<usize> {
    if !(abs_z > 0.0) || !abs_z.is_finite() {
        return Err(Error::domain(format!("|z| must be positive, got {abs_z}")));
    }
    let lo = min_valid_n(pair);
    let hi = (abs_z.ceil() as usize).max(1);
    if lo > hi {
        return Err(Error::Inapplicable(format!(
            "no truncation index in [{lo}, {hi}] for |z| = {abs_z}, μ = {}, ν = {}",
            pair.mu, pair.nu
        )));
    }
    Ok(round_half_down(abs_z / 2.0).clamp(lo, hi))
}

/// Partial sum of `S_{μ,ν}(z)` with the smallest applicable bound.
pub fn certified_eval_s(z: C64, pair: OrderPair, n: Option<usize>) -> Result<CertifiedValue> {
    certified_eval(z, pair, n, Which::S)
}

/// Partial sum of `S'_{μ,ν}(z)` with the smallest applicable bound.
pub fn certified_eval_s_prime(z: C64, pair: OrderPair, n: Option<usize>) -> Result<CertifiedValue> {
    certified_eval(z, pair, n, Which::SPrime)
}

pub fn certified_eval(z: C64, pair: OrderPair, n: Option<usize>, which: Which) -> Result<CertifiedValue> {
    check_z(z)?;
    let n = match n {
        Some(n) => n,
        None => auto_truncation(z.norm(), pair)?,
    };
    check_valid(pair, n)?;
    let best = best_bound(z, pair, n, which)?;
    let outer = outer_factor(z, pair, which);
    Ok(CertifiedValue {
        approx: outer * normalized_partial_sum(z, pair, n, which)?,
        abs_bound: best.value * outer.norm(),
        normalized_bound: best.value,
        first_omitted: first_omitted(z, pair, n, which),
        bound_tag: best.tag,
        terminant_tag: best.terminant,
        scheme: TruncationScheme { n, m: None, lambda: best.lambda },
    })
}
