//! Log-gamma for complex argument via upward recurrence and Stirling's series.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::C64;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const SHIFT: f64 = 12.0;

/// Bernoulli numbers B_2 .. B_20 divided by 2k(2k-1).
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43_867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

/// True when `w` is a pole of Γ.
pub fn is_gamma_pole(w: C64) -> bool {
    w.im == 0.0 && w.re <= 0.0 && w.re == w.re.round()
}

/// Principal branch of `ln Γ(w)`, continuous on the plane cut along `(-∞, 0]`.
pub fn log_gamma(w: C64) -> Result<C64> {
    if !w.re.is_finite() || !w.im.is_finite() {
        return Err(Error::domain("log_gamma of a non-finite argument"));
    }
    if is_gamma_pole(w) {
        return Err(Error::Pole("gamma"));
    }
    let mut shift = C64::new(0.0, 0.0);
    let mut x = w;
    while x.re < SHIFT {
        shift += x.ln();
        x += 1.0;
    }
    let inv = x.inv();
    let inv2 = inv * inv;
    let mut series = C64::new(0.0, 0.0);
    let mut power = inv;
    for c in STIRLING {
        series += power * c;
        power *= inv2;
    }
    Ok((x - 0.5) * x.ln() - x + LN_SQRT_2PI + series - shift)
}

/// `ln Γ(x)` for real `x > 0`.
pub fn ln_gamma_real(x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(Error::domain(format!("ln_gamma_real needs x > 0, got {x}")));
    }
    Ok(log_gamma(C64::new(x, 0.0))?.re)
}

pub fn gamma(w: C64) -> Result<C64> {
    Ok(log_gamma(w)?.exp())
}

/// Reciprocal gamma function, entire, zero at the poles of Γ.
pub fn rgamma(w: C64) -> C64 {
    match log_gamma(w) {
        Ok(l) => (-l).exp(),
        Err(_) => C64::new(0.0, 0.0),
    }
}

/// `Γ(a)/Γ(b)` evaluated in log space.
pub fn gamma_ratio(a: C64, b: C64) -> Result<C64> {
    if is_gamma_pole(b) {
        return Ok(C64::new(0.0, 0.0));
    }
    Ok((log_gamma(a)? - log_gamma(b)?).exp())
}

/// `Γ(Re p)/|Γ(p)|`, equal to one for real `p`.
pub fn gamma_re_ratio(p: C64) -> Result<f64> {
    if p.im == 0.0 {
        return Ok(1.0);
    }
    Ok((ln_gamma_real(p.re)? - log_gamma(p)?.re).exp())
}

/// `π / sin(πw)`, used by the reflection self-check.
pub fn reflection(w: C64) -> C64 {
    C64::new(PI, 0.0) / (w * PI).sin()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn special_values() {
        assert!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-14);
        assert!(log_gamma(c(2.0, 0.0)).unwrap().norm() < 1e-14);
        let half = log_gamma(c(0.5, 0.0)).unwrap();
        assert!((half.re - 0.5 * PI.ln()).abs() < 1e-14);
        let g = gamma(c(7.5, 0.0)).unwrap();
        assert!((g.re / 1871.254_305_797_788_6 - 1.0).abs() < 1e-13);
    }

    #[test]
    fn poles() {
        assert_eq!(log_gamma(c(0.0, 0.0)), Err(Error::Pole("gamma")));
        assert_eq!(log_gamma(c(-3.0, 0.0)), Err(Error::Pole("gamma")));
        assert_eq!(rgamma(c(-2.0, 0.0)), c(0.0, 0.0));
        assert!(log_gamma(c(-2.5, 0.0)).is_ok());
    }

    #[test]
    fn negative_real_sign() {
        let g = gamma(c(-0.5, 0.0)).unwrap();
        assert!((g.re + 2.0 * PI.sqrt()).abs() < 1e-13);
        assert!(g.im.abs() < 1e-13);
    }

    #[test]
    fn complex_value() {
        // Γ(1+i) = 0.498015668118356 - 0.154949828301811 i
        let g = gamma(c(1.0, 1.0)).unwrap();
        assert!((g - c(0.498_015_668_118_356, -0.154_949_828_301_811)).norm() < 1e-14);
    }

    #[test]
    fn branch_is_continuous() {
        let a = log_gamma(c(-20.5, 1e-9)).unwrap();
        let b = log_gamma(c(-20.5, 2e-9)).unwrap();
        assert!((a - b).norm() < 1e-6);
        let big = log_gamma(c(3.0, 40.0)).unwrap();
        let small = log_gamma(c(3.0, 39.999)).unwrap();
        assert!((big - small).norm() < 0.01);
    }
}
