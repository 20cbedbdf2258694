//! Bounds on `|Π_p(w)|` depending only on `p` and `θ = arg w`.
//!
//! Each bound therefore also bounds `sup_{r≥1} |Π_p(zr)|` for `arg z = θ`.

use std::f64::consts::{E, FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{gamma_re_ratio, ln_gamma_real, r, Quadrature};
use crate::C64;

/// Which inequality produced a terminant bound. Declaration order is the
/// tie-break order of the selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TerminantTag {
    /// `Γ(Re p)/|Γ(p)|`, times `|csc 2θ|` past `π/4`.
    P1,
    /// `√(e(p+3/2)/4)` for real `p`, `π/4 < |θ| ≤ π/2`.
    P1Remark,
    /// The `½ sec^{Re p} θ` pair of bounds for `|θ| < π/2`.
    Secant,
    /// Hypergeometric form with the `½ max(1, e^{Im p(±π/2-θ)})` last term.
    P2a,
    /// Hypergeometric form with the `Γ(Re p)/(2|Γ(p)|)` last term.
    P2b,
    /// Reflection `θ ↦ θ ∓ π` plus the Stokes-term estimate.
    P3,
    /// `|csc 2(θ-φ)| / cos^p φ` with the optimal `φ`.
    PhiBound,
    /// The piecewise factor used for real-parameter Lommel remainders.
    Piecewise,
}

impl TerminantTag {
    pub fn label(self) -> &'static str {
        match self {
            TerminantTag::P1 => "P1",
            TerminantTag::P1Remark => "P1-remark",
            TerminantTag::Secant => "secant",
            TerminantTag::P2a => "P2a",
            TerminantTag::P2b => "P2b",
            TerminantTag::P3 => "P3",
            TerminantTag::PhiBound => "phi-bound",
            TerminantTag::Piecewise => "piecewise",
        }
    }
}

impl fmt::Display for TerminantTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TerminantBound {
    pub value: f64,
    pub proposition_used: TerminantTag,
}

/// `χ(p) = √π Γ(p/2+1) / Γ(p/2+1/2)`.
pub fn chi(p: f64) -> Result<f64> {
    if !(p > 0.0) || !p.is_finite() {
        return Err(Error::domain(format!("chi needs p > 0, got {p}")));
    }
    Ok(PI.sqrt() * (ln_gamma_real(0.5 * p + 1.0)? - ln_gamma_real(0.5 * p + 0.5)?).exp())
}

/// `Γ(q+1) F(1/2, q; q+1; x)` with `F` regularized, i.e. the ordinary Gauss
/// function `₂F₁(1/2, q; q+1; x)` for `0 ≤ x ≤ 1`, from
/// `q ∫_0^∞ e^{-qy} (1 - x e^{-y})^{-1/2} dy`.
pub fn hyp_half(q: f64, x: f64) -> Result<f64> {
    if !(q > 0.0) || !(0.0..=1.0).contains(&x) {
        return Err(Error::domain("hyp_half needs q > 0 and 0 ≤ x ≤ 1"));
    }
    let res = Quadrature::new(1e-13).scale(1.0 / q).integrate(|y| {
        let one_minus = if x == 1.0 { -(-y).exp_m1() } else { 1.0 - x * (-y).exp() };
        r(q * (-q * y).exp() / one_minus.sqrt())
    })?;
    Ok(res.value.re)
}

fn phi_bracket(theta: f64) -> Result<(f64, f64)> {
    let t = theta;
    let b = if t > FRAC_PI_4 && t < FRAC_PI_2 {
        (0.0, t - FRAC_PI_4)
    } else if t >= FRAC_PI_2 && t < 3.0 * FRAC_PI_4 {
        (t - FRAC_PI_2, t - FRAC_PI_4)
    } else if t >= 3.0 * FRAC_PI_4 && t < PI {
        (t - FRAC_PI_2, FRAC_PI_2)
    } else if t > -FRAC_PI_2 && t < -FRAC_PI_4 {
        (t + FRAC_PI_4, 0.0)
    } else if t > -3.0 * FRAC_PI_4 && t <= -FRAC_PI_2 {
        (t + FRAC_PI_4, t + FRAC_PI_2)
    } else if t > -PI && t <= -3.0 * FRAC_PI_4 {
        (-FRAC_PI_2, t + FRAC_PI_2)
    } else {
        return Err(Error::domain(format!("phi_angle needs π/4 < |θ| < π, got {theta}")));
    };
    Ok(b)
}

fn phi_residual(p: f64, theta: f64, phi: f64) -> f64 {
    (p + 2.0) * (2.0 * theta - 3.0 * phi).cos() - (p - 2.0) * (2.0 * theta - phi).cos()
}

/// Root `φ` of `(p+2)cos(2θ-3φ) = (p-2)cos(2θ-φ)` in the case interval.
pub fn phi_angle(p: f64, theta: f64) -> Result<f64> {
    if !(p > 0.0) || !p.is_finite() {
        return Err(Error::domain(format!("phi_angle needs p > 0, got {p}")));
    }
    let (mut lo, mut hi) = phi_bracket(theta)?;
    let mut g_lo = phi_residual(p, theta, lo);
    let g_hi = phi_residual(p, theta, hi);
    if g_lo == 0.0 {
        return Ok(lo);
    }
    if g_hi == 0.0 {
        return Ok(hi);
    }
    if g_lo.signum() == g_hi.signum() {
        return Err(Error::Invariant(format!(
            "phi_angle bracket ({lo}, {hi}) holds no sign change for p={p}, θ={theta}"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let g = phi_residual(p, theta, mid);
        if g == 0.0 {
            return Ok(mid);
        }
        if g.signum() == g_lo.signum() {
            lo = mid;
            g_lo = g;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `|csc(2(θ-φ))| / cos^p φ` at the optimal `φ`.
pub fn phi_bound(p: f64, theta: f64) -> Result<f64> {
    let phi = phi_angle(p, theta)?;
    Ok(1.0 / ((2.0 * (theta - phi)).sin().abs() * phi.cos().powf(p)))
}

fn check(p: C64, theta: f64) -> Result<()> {
    super::check_order(p)?;
    if !theta.is_finite() || theta.abs() >= PI {
        return Err(Error::domain(format!("bound needs |θ| < π, got {theta}")));
    }
    Ok(())
}

/// Every applicable bound at `(p, θ)`, in tie-break order.
pub fn terminant_bound_catalogue(p: C64, theta: f64) -> Result<Vec<TerminantBound>> {
    check(p, theta)?;
    let mut out = Vec::new();
    let at = theta.abs();
    let (pr, pi) = (p.re, p.im);
    let g = gamma_re_ratio(p)?;
    let real = pi == 0.0;
    let push = |out: &mut Vec<TerminantBound>, tag, value: f64| {
        if value.is_finite() {
            out.push(TerminantBound { value, proposition_used: tag });
        }
    };

    if at <= FRAC_PI_4 {
        push(&mut out, TerminantTag::P1, g);
    } else if at < FRAC_PI_2 {
        push(&mut out, TerminantTag::P1, g / (2.0 * theta).sin().abs());
    }

    if real && at > FRAC_PI_4 && at <= FRAC_PI_2 {
        push(&mut out, TerminantTag::P1Remark, (E / 4.0 * (pr + 1.5)).sqrt());
    }

    if at < FRAC_PI_2 {
        let signs: &[f64] = if theta == 0.0 { &[1.0, -1.0] } else if theta > 0.0 { &[1.0] } else { &[-1.0] };
        let mut best = f64::INFINITY;
        for &s in signs {
            let first = 0.5 / theta.cos().powf(pr) * (pi * (-s * FRAC_PI_2 - theta)).exp().max(1.0);
            let last = (0.5 * (pi * (s * FRAC_PI_2 - theta)).exp().max(1.0)).min(0.5 * g);
            best = best.min(first + last);
        }
        push(&mut out, TerminantTag::Secant, best);
    }

    if at > FRAC_PI_4 && at <= FRAC_PI_2 {
        let s = theta.signum();
        let sharp = hyp_half(0.5 * pr, theta.sin().powi(2))?;
        let common = 0.5 + p.norm() / (2.0 * pr) * sharp * (-pi * theta).exp().max(1.0);
        push(&mut out, TerminantTag::P2a, common + 0.5 * (pi * (s * FRAC_PI_2 - theta)).exp().max(1.0));
        push(&mut out, TerminantTag::P2b, common + 0.5 * g);
    }

    if at > FRAC_PI_2 {
        let s = theta.signum();
        let inner = catalogue_min(p, theta - s * PI)?;
        let stokes = (pi * (s * FRAC_PI_2 - theta)).exp() * g * (2.0 * PI * pr).sqrt()
            / (2.0 * theta.sin().abs().powf(pr));
        push(&mut out, TerminantTag::P3, stokes + inner.value);
    }

    if real && at > FRAC_PI_4 {
        push(&mut out, TerminantTag::PhiBound, phi_bound(pr, theta)?);
    }

    if out.is_empty() {
        return Err(Error::Invariant(format!("no terminant bound applies at p={p}, θ={theta}")));
    }
    Ok(out)
}

fn catalogue_min(p: C64, theta: f64) -> Result<TerminantBound> {
    let all = terminant_bound_catalogue(p, theta)?;
    let mut best = all[0];
    for b in &all[1..] {
        if b.value < best.value {
            best = *b;
        }
    }
    Ok(best)
}

/// The smallest applicable bound, tagged with the inequality that won.
pub fn terminant_sup_bound(p: C64, theta: f64) -> Result<TerminantBound> {
    catalogue_min(p, theta)
}

/// Piecewise factor for real-parameter remainders at order `p = 2N-μ+1`:
/// `1`, `min(|csc 2θ|, 1+χ(p)/2)`, or `√(2πp)/(2|sin θ|^p) + 1 + χ(p)/2`.
pub fn piecewise_factor(p: f64, theta: f64) -> Result<TerminantBound> {
    check(r(p), theta)?;
    let at = theta.abs();
    let value = if at <= FRAC_PI_4 {
        1.0
    } else if at <= FRAC_PI_2 {
        let csc = if at < FRAC_PI_2 { 1.0 / (2.0 * theta).sin().abs() } else { f64::INFINITY };
        csc.min(1.0 + 0.5 * chi(p)?)
    } else {
        (2.0 * PI * p).sqrt() / (2.0 * theta.sin().abs().powf(p)) + 1.0 + 0.5 * chi(p)?
    };
    Ok(TerminantBound { value, proposition_used: TerminantTag::Piecewise })
}
