//! Bounds on the normalized remainders `R_N^{(S)}` and `R_N^{(S')}`.
//!
//! All bounds share the shape `|coef_N|/|z|^{2N} × factor`, where the factor
//! bounds `sup_{r≥1} |Π_p(zr)|` for a suitable order `p`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, LN_2};

use serde::{Deserialize, Serialize};

use super::{check_valid, check_z, first_omitted, ln_abs_coefficient, rgamma_pair, BoundTag, Which};
use crate::coefficients::OrderPair;
use crate::error::{Error, Result};
use crate::numerics::{c, ln_gamma_real, log_gamma};
use crate::terminant::{chi, piecewise_factor, terminant_sup_bound, TerminantTag};
use crate::C64;

/// One remainder bound with its provenance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RemainderBound {
    pub value: f64,
    pub tag: BoundTag,
    pub terminant: Option<TerminantTag>,
    pub lambda: Option<f64>,
}

impl RemainderBound {
    fn exact() -> Self {
        RemainderBound { value: 0.0, tag: BoundTag::Exact, terminant: None, lambda: None }
    }
}

fn require_real(pair: OrderPair) -> Result<()> {
    if !pair.is_real() {
        return Err(Error::precondition("μ and ν must be real"));
    }
    Ok(())
}

fn lambda_min(pair: OrderPair) -> f64 {
    (0.5 - pair.nu.re.abs()).max(0.0)
}

fn real_order_single(z: C64, pair: OrderPair, n: usize, which: Which, lambda: f64) -> Result<RemainderBound> {
    let theta = z.arg();
    let (mu, nf) = (pair.mu.re, n as f64);
    let (order, lambda) = match which {
        Which::S => {
            if !(lambda >= lambda_min(pair)) {
                return Err(Error::precondition(format!("λ ≥ max(0, 1/2 - |ν|) fails for λ = {lambda}")));
            }
            if !(mu < 2.0 * nf + lambda + 0.5) {
                return Err(Error::precondition(format!("μ < 2N + λ + 1/2 fails for λ = {lambda}")));
            }
            (2.0 * nf - mu + lambda + 0.5, Some(lambda))
        }
        Which::SPrime => (2.0 * nf - mu + 1.5, None),
    };
    let first = first_omitted(z, pair, n, which);
    if first == 0.0 {
        return Ok(RemainderBound { lambda, ..RemainderBound::exact() });
    }
    let sup = terminant_sup_bound(c(order, 0.0), theta)?;
    Ok(RemainderBound {
        value: first * sup.value,
        tag: BoundTag::RealOrder,
        terminant: Some(sup.proposition_used),
        lambda,
    })
}

/// Real-parameter bound `|coef_N|/|z|^{2N} · sup_{r≥1}|Π_p(zr)|` with
/// `p = 2N-μ+λ+1/2` for `S` and `p = 2N-μ+3/2` for `S'`.
///
/// With `lambda = None` the smallest bound over `λ ∈ {max(0, 1/2-|ν|), 1/4, 1/2, 1}`
/// (admissible values only) is returned.
pub fn remainder_bound_real(
    z: C64,
    pair: OrderPair,
    n: usize,
    which: Which,
    lambda: Option<f64>,
) -> Result<RemainderBound> {
    check_z(z)?;
    require_real(pair)?;
    check_valid(pair, n)?;
    if which == Which::SPrime {
        return real_order_single(z, pair, n, which, 0.0);
    }
    if let Some(l) = lambda {
        return real_order_single(z, pair, n, which, l);
    }
    let lo = lambda_min(pair);
    let mut best: Option<RemainderBound> = None;
    for l in [lo, 0.25, 0.5, 1.0] {
        if l < lo || !(pair.mu.re < 2.0 * n as f64 + l + 0.5) {
            continue;
        }
        let b = real_order_single(z, pair, n, which, l)?;
        if best.map_or(true, |x| b.value < x.value) {
            best = Some(b);
        }
    }
    best.ok_or_else(|| Error::precondition("μ < 2N + λ + 1/2 fails for every λ on the grid"))
}

/// Real-parameter piecewise bound for `S`: first omitted term times `1`
/// (`|θ| ≤ π/4`), `min(|csc 2θ|, 1+χ(p)/2)` (`|θ| ≤ π/2`), or
/// `√(2πp)/(2|sin θ|^p) + 1 + χ(p)/2` beyond, with `p = 2N-μ+1`.
pub fn remainder_bound_combined_real(z: C64, pair: OrderPair, n: usize) -> Result<RemainderBound> {
    let theta = check_z(z)?;
    require_real(pair)?;
    check_valid(pair, n)?;
    let first = first_omitted(z, pair, n, Which::S);
    if first == 0.0 {
        return Ok(RemainderBound::exact());
    }
    let factor = piecewise_factor(2.0 * n as f64 - pair.mu.re + 1.0, theta)?;
    Ok(RemainderBound {
        value: first * factor.value,
        tag: BoundTag::RealPiecewise,
        terminant: Some(factor.proposition_used),
        lambda: None,
    })
}

/// `ln(4^N |Γ(A_r+N) Γ(B_r+N) / (Γ(A) Γ(B))|)`, i.e. `ln |a_N(-Re μ, Re ν)|` times the
/// gamma-ratio prefactor, with `A, B = (-μ±ν+1)/2` and `A_r, B_r` their real-part analogues.
/// `None` when the expansion terminates.
fn ln_gamma_prefactor(pair: OrderPair, n: usize) -> Result<Option<f64>> {
    let rg = rgamma_pair(pair);
    if rg.norm() == 0.0 {
        return Ok(None);
    }
    let (a, b) = pair.real_part().gamma_args();
    let nf = n as f64;
    Ok(Some(2.0 * nf * LN_2 + ln_gamma_real(a.re + nf)? + ln_gamma_real(b.re + nf)? + rg.norm().ln()))
}

/// Complex-parameter bound with terminant order `2N-μ+1` (`S`) or `2N-μ+2` (`S'`).
///
/// Gamma-function limits at `Re μ ± Re ν` odd are taken analytically. With
/// `cos_ratio` the gamma ratio is replaced by the larger
/// `|cos πμ + cos πν| / |cos π Re μ + cos π Re ν|`.
pub fn remainder_bound_complex(
    z: C64,
    pair: OrderPair,
    n: usize,
    which: Which,
    cos_ratio: bool,
) -> Result<RemainderBound> {
    let theta = check_z(z)?;
    check_valid(pair, n)?;
    let nf = n as f64;
    let shift = match which {
        Which::S => 1.0,
        Which::SPrime => 2.0,
    };
    let p = -pair.mu + 2.0 * nf + shift;
    let pr = p.re;
    let ln_p_ratio = log_gamma(p)?.re - ln_gamma_real(pr)?;
    let ln_coef = if cos_ratio {
        let pi = std::f64::consts::PI;
        let num = ((pair.mu * pi).cos() + (pair.nu * pi).cos()).norm();
        let den = ((pair.mu.re * pi).cos() + (pair.nu.re * pi).cos()).abs();
        if den < 1e-300 {
            return Err(Error::Inapplicable("cosine ratio has a vanishing denominator".into()));
        }
        let real = ln_abs_coefficient(n, pair.real_part(), which);
        if real == f64::NEG_INFINITY || num == 0.0 {
            return Ok(RemainderBound::exact());
        }
        num.ln() - den.ln() + real
    } else {
        match ln_gamma_prefactor(pair, n)? {
            None => return Ok(RemainderBound::exact()),
            Some(v) => match which {
                Which::S => v,
                Which::SPrime => v + (2.0 * nf + 1.0 - pair.mu.re).abs().ln(),
            },
        }
    };
    let sup = terminant_sup_bound(p, theta)?;
    let value = (ln_coef + ln_p_ratio - 2.0 * nf * z.norm().ln()).exp() * sup.value;
    Ok(RemainderBound {
        value,
        tag: if cos_ratio { BoundTag::ComplexCosRatio } else { BoundTag::ComplexOrder },
        terminant: Some(sup.proposition_used),
        lambda: None,
    })
}

/// Complex-parameter bound for `S` on `|arg z| ≤ π/2`: the smaller of
/// `Q·{1, |csc 2θ|}` (`|θ| < π/2`) and
/// `Q·G·(1/2 + |p|/(2p_r)·χ(p_r)·max(1, e^{θ Im μ}) + 1/(2G))`,
/// where `Q = 4^N |Γ(A_r+N)Γ(B_r+N)/(Γ(A)Γ(B))| / |z|^{2N}`, `p = 2N-μ+1`,
/// `p_r = Re p` and `G = |Γ(p)|/Γ(p_r)`.
pub fn remainder_bound_complex_combined(z: C64, pair: OrderPair, n: usize) -> Result<RemainderBound> {
    let theta = check_z(z)?;
    check_valid(pair, n)?;
    if theta.abs() > FRAC_PI_2 {
        return Err(Error::precondition("|arg z| ≤ π/2 required"));
    }
    let nf = n as f64;
    let ln_q = match ln_gamma_prefactor(pair, n)? {
        None => return Ok(RemainderBound::exact()),
        Some(v) => v - 2.0 * nf * z.norm().ln(),
    };
    let q = ln_q.exp();
    let p = -pair.mu + 2.0 * nf + 1.0;
    let pr = p.re;
    let g = (log_gamma(p)?.re - ln_gamma_real(pr)?).exp();
    let axis = q
        * g
        * (0.5 + p.norm() / (2.0 * pr) * chi(pr)? * (pair.mu.im * theta).exp().max(1.0) + 0.5 / g);
    let mut best = RemainderBound { value: axis, tag: BoundTag::ComplexAxis, terminant: None, lambda: None };
    if theta.abs() < FRAC_PI_2 {
        let factor = if theta.abs() <= FRAC_PI_4 { 1.0 } else { 1.0 / (2.0 * theta).sin().abs() };
        if q * factor <= axis {
            best = RemainderBound { value: q * factor, tag: BoundTag::ComplexSector, terminant: None, lambda: None };
        }
    }
    Ok(best)
}

/// Every bound that applies at `(z, μ, ν, N)`.
pub fn all_bounds(z: C64, pair: OrderPair, n: usize, which: Which) -> Result<Vec<RemainderBound>> {
    let theta = check_z(z)?;
    check_valid(pair, n)?;
    if rgamma_pair(pair).norm() == 0.0 {
        return Ok(vec![RemainderBound::exact()]);
    }
    let mut out = Vec::new();
    if pair.is_real() {
        out.push(remainder_bound_real(z, pair, n, which, None)?);
        if which == Which::S {
            out.push(remainder_bound_combined_real(z, pair, n)?);
        }
    }
    out.push(remainder_bound_complex(z, pair, n, which, false)?);
    if !pair.is_real() {
        if let Ok(b) = remainder_bound_complex(z, pair, n, which, true) {
            out.push(b);
        }
        if which == Which::S && theta.abs() <= FRAC_PI_2 {
            out.push(remainder_bound_complex_combined(z, pair, n)?);
        }
    }
    Ok(out)
}

/// The smallest bound from [`all_bounds`]; ties keep the earlier entry.
pub fn best_bound(z: C64, pair: OrderPair, n: usize, which: Which) -> Result<RemainderBound> {
    let all = all_bounds(z, pair, n, which)?;
    let mut best = all[0];
    for b in &all[1..] {
        if b.value < best.value {
            best = *b;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::r;
    use std::f64::consts::PI;

    fn polar(m: f64, a: f64) -> C64 {
        C64::from_polar(m, a)
    }

    #[test]
    fn real_order_table_points() {
        let pair = OrderPair::real(-2.0, 1.5);
        let b = remainder_bound_real(r(20.0), pair, 5, Which::S, None).unwrap();
        assert!((b.value - 6.5562e-6).abs() < 5e-11);
        let b = remainder_bound_real(polar(20.0, PI / 2.0), pair, 10, Which::S, None).unwrap();
        assert!(b.value <= 0.43344e-5 * (1.0 + 1e-5));
        let b = remainder_bound_real(polar(20.0, 3.0 * PI / 8.0), OrderPair::real(-6.0, 4.5), 5, Which::S, None).unwrap();
        assert!(b.value <= 0.74016e-3 * (1.0 + 1e-5));
    }

    #[test]
    fn real_order_explicit_lambda_checks() {
        let pair = OrderPair::real(0.0, 0.2);
        assert!(matches!(
            remainder_bound_real(r(10.0), pair, 2, Which::S, Some(0.1)),
            Err(Error::Precondition(ref m)) if m.contains("λ ≥")
        ));
        assert!(remainder_bound_real(r(10.0), pair, 2, Which::S, Some(0.3)).is_ok());
        assert!(remainder_bound_real(r(10.0), OrderPair::new(r(0.0), c(0.2, 0.1)), 2, Which::S, None).is_err());
    }

    #[test]
    fn piecewise_table_points() {
        let b = remainder_bound_combined_real(polar(20.0, PI / 4.0), OrderPair::real(-2.0, 1.5), 10).unwrap();
        assert!((b.value - 1.07336e-6).abs() < 5e-12);
        let b = remainder_bound_combined_real(polar(20.0, PI / 2.0), OrderPair::real(-6.0, 4.5), 10).unwrap();
        assert!((b.value - 0.25972e-2).abs() < 5e-7);
        let pair = OrderPair::real(0.3, -0.7);
        let b = remainder_bound_combined_real(r(9.0), pair, 3).unwrap();
        assert_eq!(b.value, first_omitted(r(9.0), pair, 3, Which::S));
    }

    #[test]
    fn complex_reduces_for_real_parameters() {
        let pair = OrderPair::real(-2.0, 1.5);
        let b = remainder_bound_complex(r(20.0), pair, 5, Which::S, false).unwrap();
        assert!((b.value - 6.5562e-6).abs() < 5e-11);
        let cos = remainder_bound_complex(r(20.0), pair, 5, Which::S, true).unwrap();
        assert!((cos.value - b.value).abs() < 1e-12 * b.value);
    }

    #[test]
    fn complex_table_points() {
        let pair = OrderPair::new(c(2.0, 2.0), c(0.5, -1.0));
        let order = remainder_bound_complex(r(20.0), pair, 5, Which::S, false).unwrap();
        let b = remainder_bound_complex_combined(r(20.0), pair, 5).unwrap();
        assert!((b.value - 0.51174e-7).abs() < 5e-13);
        assert!(order.value <= b.value);
        let b = remainder_bound_complex_combined(polar(20.0, PI / 4.0), pair, 5).unwrap();
        assert!((b.value - 0.51174e-7).abs() < 5e-13);
        let b = remainder_bound_complex_combined(polar(20.0, 3.0 * PI / 8.0), pair, 10).unwrap();
        assert!((b.value - 0.75467e-9).abs() < 5e-15);
        let b = remainder_bound_complex_combined(polar(20.0, PI / 2.0), pair, 10).unwrap();
        assert!((b.value - 3.13582e-8).abs() < 5e-14);
        assert_eq!(b.tag, BoundTag::ComplexAxis);
        let b = remainder_bound_complex_combined(polar(20.0, PI / 2.0), pair, 5).unwrap();
        assert!((b.value - 19.03354e-7).abs() < 5e-13);
    }

    #[test]
    fn cos_ratio_dominates_gamma_ratio() {
        let pair = OrderPair::new(c(0.7, 0.4), c(0.2, -0.8));
        for theta in [0.0, 0.6, 1.2, 2.0] {
            let z = polar(15.0, theta);
            let g = remainder_bound_complex(z, pair, 4, Which::S, false).unwrap();
            let cr = remainder_bound_complex(z, pair, 4, Which::S, true).unwrap();
            assert!(g.value <= cr.value * (1.0 + 1e-12), "θ={theta}");
        }
    }

    #[test]
    fn limit_at_odd_real_part() {
        let base = OrderPair::new(c(1.5, 0.3), c(0.5, 0.0));
        let b0 = remainder_bound_complex(r(12.0), base, 3, Which::S, false).unwrap().value;
        for eps in [1e-5, -1e-5] {
            let near = OrderPair::new(c(1.5 + eps, 0.3), c(0.5, 0.0));
            let b = remainder_bound_complex(r(12.0), near, 3, Which::S, false).unwrap().value;
            assert!((b - b0).abs() < 1e-3 * b0);
        }
        assert!(b0.is_finite() && b0 > 0.0);
    }

    #[test]
    fn terminating_bounds_vanish() {
        let pair = OrderPair::real(5.0, 0.0);
        for which in [Which::S, Which::SPrime] {
            for b in all_bounds(r(10.0), pair, 3, which).unwrap() {
                assert_eq!(b.value, 0.0);
            }
        }
        let b = remainder_bound_complex(r(10.0), OrderPair::new(c(3.0, 0.0), c(0.0, 0.0)), 2, Which::S, false).unwrap();
        assert_eq!(b.value, 0.0);
    }

    #[test]
    fn combined_complex_rejects_left_half() {
        let pair = OrderPair::new(c(0.0, 1.0), r(0.0));
        assert!(remainder_bound_complex_combined(polar(10.0, 2.0), pair, 2).is_err());
    }
}
