//! Expansion coefficients and the parameter pair `(μ, ν)`.
//!
//! * `a_n(μ,ν) = ∏_{k=1}^n ((μ+2k-1)² - ν²)`, `b_n(μ,ν) = -a_n(μ,ν)(μ+2n+1)`
//! * `a_m(ν) = ∏_{k=1}^m (4ν² - (2k-1)²) / (m! 8^m)` for `K_ν`, and
//!   `b_m(ν) = (a_m(ν-1) + a_m(ν+1)) / 2` for `K'_ν`
//! * `F_n(ν) = (-1)^n a_n(0,ν)`, `G_n(ν) = (-1)^n a_n(1,ν)` for Anger-Weber

mod hypergeometric;
mod integral;

use serde::{Deserialize, Serialize};

pub use hypergeometric::{half_order_kernel, reg_hyp_f};
pub use integral::{coeff_integral_check_a, coeff_integral_check_b};

use crate::numerics::{c, is_gamma_pole};
use crate::C64;

/// The complex order pair `(μ, ν)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrderPair {
    pub mu: C64,
    pub nu: C64,
}

impl OrderPair {
    pub fn new(mu: C64, nu: C64) -> Self {
        OrderPair { mu, nu }
    }

    pub fn real(mu: f64, nu: f64) -> Self {
        OrderPair { mu: c(mu, 0.0), nu: c(nu, 0.0) }
    }

    pub fn is_real(&self) -> bool {
        self.mu.im == 0.0 && self.nu.im == 0.0
    }

    /// `Re μ + |Re ν| < 2N + 1`.
    pub fn lommel_valid(&self, n: usize) -> bool {
        self.mu.re + self.nu.re.abs() < 2.0 * n as f64 + 1.0
    }

    /// `Re μ < 2N - M + 1/2` and `|Re ν| < M + 1/2`.
    pub fn reexp_valid(&self, n: usize, m: usize) -> bool {
        let (n, m) = (n as f64, m as f64);
        self.mu.re < 2.0 * n - m + 0.5 && self.nu.re.abs() < m + 0.5
    }

    /// `M ≥ 1`, `Re μ < 2N - M + 3/2` and `|Re ν| < M - 1/2`.
    pub fn reexp_prime_valid(&self, n: usize, m: usize) -> bool {
        let (nf, mf) = (n as f64, m as f64);
        m >= 1 && self.mu.re < 2.0 * nf - mf + 1.5 && self.nu.re.abs() < mf - 0.5
    }

    /// `((-μ+ν+1)/2, (-μ-ν+1)/2)`.
    pub fn gamma_args(&self) -> (C64, C64) {
        ((-self.mu + self.nu + 1.0) * 0.5, (-self.mu - self.nu + 1.0) * 0.5)
    }

    /// The same pair with real parts only.
    pub fn real_part(&self) -> OrderPair {
        OrderPair::real(self.mu.re, self.nu.re)
    }

    /// `k` such that `a_n(-μ,ν) = 0` for every `n > k`, when one exists.
    pub fn terminating_index(&self) -> Option<usize> {
        let (a, b) = self.gamma_args();
        [a, b]
            .iter()
            .filter(|x| is_gamma_pole(**x))
            .map(|x| (-x.re) as usize)
            .min()
    }
}

/// `a_n(μ,ν) = ∏_{k=1}^n ((μ+2k-1)² - ν²)`.
pub fn lommel_a(n: usize, mu: C64, nu: C64) -> C64 {
    let nu2 = nu * nu;
    (1..=n).fold(c(1.0, 0.0), |acc, k| {
        let s = mu + (2 * k - 1) as f64;
        acc * (s * s - nu2)
    })
}

/// `b_n(μ,ν) = -a_n(μ,ν)(μ+2n+1)`.
pub fn lommel_b(n: usize, mu: C64, nu: C64) -> C64 {
    -lommel_a(n, mu, nu) * (mu + (2 * n + 1) as f64)
}

/// Coefficients of the large-argument expansion of `K_ν`.
pub fn besselk_a(m: usize, nu: C64) -> C64 {
    let four_nu2 = nu * nu * 4.0;
    (1..=m).fold(c(1.0, 0.0), |acc, k| {
        let odd = (2 * k - 1) as f64;
        acc * (four_nu2 - odd * odd) / (8.0 * k as f64)
    })
}

/// Coefficients of the large-argument expansion of `-K'_ν`.
pub fn besselk_b(m: usize, nu: C64) -> C64 {
    (besselk_a(m, nu - 1.0) + besselk_a(m, nu + 1.0)) * 0.5
}

/// Anger-Weber coefficient `F_n(ν) = ∏ (ν² - (2k-1)²)`.
pub fn anger_f(n: usize, nu: C64) -> C64 {
    sign(n) * lommel_a(n, c(0.0, 0.0), nu)
}

/// Anger-Weber coefficient `G_n(ν) = ∏ (ν² - (2k)²)`.
pub fn anger_g(n: usize, nu: C64) -> C64 {
    sign(n) * lommel_a(n, c(1.0, 0.0), nu)
}

pub(crate) fn sign(n: usize) -> f64 {
    if n % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::r;

    #[test]
    fn lommel_a_values() {
        assert_eq!(lommel_a(0, c(0.3, 0.1), c(2.0, 0.0)), r(1.0));
        assert_eq!(lommel_a(1, r(-1.0), r(0.0)), r(0.0));
        let f = lommel_a(5, r(2.0), r(1.5)).norm() / 20f64.powi(10);
        assert!((f - 0.655_62e-5).abs() < 5e-11);
        assert_eq!(lommel_a(2, r(2.0), r(1.5)), r(153.5625));
    }

    #[test]
    fn lommel_b_values() {
        assert_eq!(lommel_b(0, c(0.4, 1.0), r(3.0)), -c(1.4, 1.0));
        assert_eq!(lommel_b(1, r(2.0), r(1.5)), r(-33.75));
        assert_eq!(lommel_b(1, r(0.0), r(1.0)), r(0.0));
    }

    #[test]
    fn connection_identity() {
        for (n, mu, nu) in [(3, c(0.3, 0.2), c(1.1, -0.4)), (5, c(-2.0, 0.0), c(1.5, 0.0)), (0, r(1.0), r(0.5))] {
            let lhs = lommel_b(n, -mu, nu) * 2.0;
            let rhs = (mu + nu - 1.0) * lommel_a(n, -mu + 1.0, nu - 1.0)
                + (mu - nu - 1.0) * lommel_a(n, -mu + 1.0, nu + 1.0);
            assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm().max(1.0));
        }
    }

    #[test]
    fn besselk_values() {
        assert_eq!(besselk_a(0, r(0.7)), r(1.0));
        assert_eq!(besselk_a(1, r(0.5)), r(0.0));
        assert_eq!(besselk_a(2, r(0.0)), r(9.0 / 128.0));
        assert_eq!(besselk_b(0, r(0.3)), r(1.0));
        assert!((besselk_b(1, r(0.5)) - r(0.5)).norm() < 1e-15);
        let nu = c(0.3, 0.8);
        assert!((besselk_b(1, nu) - (nu * nu * 4.0 + 3.0) / 8.0).norm() < 1e-15);
    }

    #[test]
    fn besselk_b_even_in_nu() {
        for m in 0..8 {
            let nu = c(0.7, 0.0);
            assert!(besselk_b(m, nu).im.abs() < 1e-12);
            assert!((besselk_b(m, nu) - besselk_b(m, -nu)).norm() < 1e-12 * besselk_b(m, nu).norm().max(1.0));
            let imaginary = c(0.0, 1.3);
            assert!(besselk_b(m, imaginary).im.abs() < 1e-12 * besselk_b(m, imaginary).norm().max(1.0));
        }
    }

    #[test]
    fn anger_weber_coefficients() {
        assert_eq!(anger_f(0, r(2.0)), r(1.0));
        assert_eq!(anger_g(0, r(2.0)), r(1.0));
        let nu = c(0.4, 0.3);
        assert!((anger_f(1, nu) - (nu * nu - 1.0)).norm() < 1e-15);
        assert!((anger_g(1, nu) - (nu * nu - 4.0)).norm() < 1e-15);
    }

    #[test]
    fn degree_in_mu() {
        // a_3(μ, ν) is a degree-6 polynomial in μ: seventh differences vanish.
        let nu = r(0.7);
        let vals: Vec<C64> = (0..8).map(|k| lommel_a(3, r(k as f64 * 0.5), nu)).collect();
        let mut d = vals;
        for _ in 0..7 {
            d = d.windows(2).map(|w| w[1] - w[0]).collect();
        }
        assert!(d[0].norm() < 1e-6);
    }

    #[test]
    fn terminating_pairs() {
        let pair = OrderPair::real(1.0, 0.0);
        assert_eq!(pair.terminating_index(), Some(0));
        for n in 1..6 {
            assert_eq!(lommel_a(n, -pair.mu, pair.nu), r(0.0));
        }
        let pair = OrderPair::real(5.0, 0.0);
        assert_eq!(pair.terminating_index(), Some(2));
        assert_ne!(lommel_a(2, -pair.mu, pair.nu), r(0.0));
        assert_eq!(lommel_a(3, -pair.mu, pair.nu), r(0.0));
        assert_eq!(OrderPair::real(0.5, 0.3).terminating_index(), None);
    }

    #[test]
    fn validity_predicates() {
        let pair = OrderPair::real(-2.0, 1.5);
        assert!(pair.lommel_valid(0));
        assert!(!OrderPair::real(3.0, 0.5).lommel_valid(1));
        assert!(OrderPair::real(0.0, 1.0 / 3.0).reexp_valid(15, 20));
        assert!(!OrderPair::real(0.0, 1.0).reexp_valid(5, 0));
        assert!(!OrderPair::real(0.0, 0.2).reexp_prime_valid(5, 0));
    }
}
