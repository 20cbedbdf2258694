//! Large-argument asymptotics of the Lommel function `S_{μ,ν}(z)` and its
//! derivative with rigorous, computable error bounds.
//!
//! Every evaluation returns a value together with an absolute error bound
//! and a tag naming the inequality that produced it. Exponentially improved
//! re-expansions, quadrature oracles for the remainders, and the remainder
//! mappings for the Anger-Weber, Scorer and Struve families are included.
//!
//! ```
//! use lommel::{certified_eval_s, OrderPair, C64};
//!
//! let pair = OrderPair::real(-2.0, 1.5);
//! let v = certified_eval_s(C64::new(20.0, 0.0), pair, Some(5)).unwrap();
//! assert!((v.normalized_bound - 6.5562e-6).abs() < 1e-9);
//! ```

pub mod cli;
pub mod coefficients;
pub mod error;
pub mod hyper;
pub mod lommel;
pub mod numerics;
pub mod related;
pub mod terminant;

pub use num_complex::Complex64 as C64;

pub use coefficients::{
    anger_f, anger_g, besselk_a, besselk_b, coeff_integral_check_a, coeff_integral_check_b,
    lommel_a, lommel_b, reg_hyp_f, OrderPair,
};
pub use error::{Error, Result};
pub use hyper::{
    besselk_remainder_oracle, optimal_truncation, reexpand_bound, reexpand_remainder,
    theta_reexpansion, KWhich, ReexpansionResult, TruncationMode,
};
pub use lommel::{
    certified_eval_s, certified_eval_s_prime, oracle_remainder_s, oracle_remainder_s_prime,
    partial_sum_s, partial_sum_s_prime, remainder_bound_combined_real, remainder_bound_complex,
    remainder_bound_complex_combined, remainder_bound_real, sign_magnitude_theta, BoundTag,
    CertifiedValue, TruncationScheme, Which,
};
pub use numerics::{bessel_k, bessel_k_prime, integrate_semi_infinite, log_gamma, QuadratureResult};
pub use terminant::{chi, phi_angle, terminant_eval, terminant_sup_bound, TerminantBound, TerminantTag};
