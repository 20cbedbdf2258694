//! Shared numerical substrate: semi-infinite quadrature, `K_ν` on the
//! positive axis, and complex log-gamma.

mod bessel;
mod gamma;
mod quad;

pub use bessel::{
    bessel_k, bessel_k_origin_exponent, bessel_k_prime, bessel_k_prime_scaled, bessel_k_prime_weighted,
    bessel_k_scaled, bessel_k_weighted,
};
pub use gamma::{
    gamma, gamma_ratio, gamma_re_ratio, is_gamma_pole, ln_gamma_real, log_gamma, reflection,
    rgamma,
};
pub use quad::{integrate_semi_infinite, Quadrature, QuadratureResult};

use crate::C64;

/// Principal power `w^p = exp(p ln w)`.
pub fn cpow(w: C64, p: C64) -> C64 {
    (p * w.ln()).exp()
}

/// `cos(πν)`, exact at integer and half-integer real parts.
pub fn cos_pi(nu: C64) -> C64 {
    let a = nu.re;
    let (s, c0) = if (a - a.round()).abs() == 0.0 {
        (0.0, if (a.round() as i64) % 2 == 0 { 1.0 } else { -1.0 })
    } else if (a - 0.5 - (a - 0.5).round()).abs() == 0.0 {
        (if ((a - 0.5).round() as i64) % 2 == 0 { 1.0 } else { -1.0 }, 0.0)
    } else {
        (std::f64::consts::PI * a).sin_cos()
    };
    let b = std::f64::consts::PI * nu.im;
    C64::new(c0 * b.cosh(), -s * b.sinh())
}

pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub(crate) fn r(re: f64) -> C64 {
    C64::new(re, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cos_pi_exact_points() {
        assert_eq!(cos_pi(r(0.5)), r(0.0));
        assert_eq!(cos_pi(r(-1.5)), r(0.0));
        assert_eq!(cos_pi(r(3.0)), r(-1.0));
        assert_eq!(cos_pi(r(-2.0)), r(1.0));
        let nu = c(0.3, -0.7);
        assert!((cos_pi(nu) - (nu * std::f64::consts::PI).cos()).norm() < 1e-15);
        assert!((cos_pi(c(2.5, 0.4)) - (c(2.5, 0.4) * std::f64::consts::PI).cos()).norm() < 1e-14);
    }
}
