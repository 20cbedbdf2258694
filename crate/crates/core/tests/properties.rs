//! Property tests for the invariants of the bounds, the terminant and the coefficients.

use proptest::prelude::*;

use lommel::lommel::{all_bounds, best_bound, certified_eval, oracle_remainder, Which};
use lommel::{coeff_integral_check_a, lommel_a, terminant_eval, terminant_sup_bound, OrderPair, C64};

fn real_pair() -> impl Strategy<Value = OrderPair> {
    (-3.0..2.0f64, -2.5..2.5f64).prop_map(|(mu, nu)| OrderPair::real(mu, nu))
}

fn complex_pair() -> impl Strategy<Value = OrderPair> {
    (-3.0..2.0f64, -1.0..1.0f64, -2.5..2.5f64, -1.0..1.0f64)
        .prop_map(|(a, b, c, d)| OrderPair::new(C64::new(a, b), C64::new(c, d)))
}

fn valid_n(pair: OrderPair, extra: usize) -> usize {
    ((pair.mu.re + pair.nu.re.abs() + 1.0) / 2.0).max(0.0) as usize + 1 + extra
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn bounds_dominate_real(pair in real_pair(), modulus in 8.0..30.0f64, theta in -2.5..2.5f64, extra in 0usize..4, prime in any::<bool>()) {
        let which = if prime { Which::SPrime } else { Which::S };
        let z = C64::from_polar(modulus, theta);
        let n = valid_n(pair, extra);
        let r = oracle_remainder(z, pair, n, which).unwrap().norm();
        for b in all_bounds(z, pair, n, which).unwrap() {
            prop_assert!(r <= b.value * (1.0 + 1e-8) + 1e-300, "{:?}: |R| = {r:e} > {:e}", b.tag, b.value);
        }
    }

    #[test]
    fn bounds_dominate_complex(pair in complex_pair(), modulus in 8.0..30.0f64, theta in -1.5..1.5f64, extra in 0usize..4) {
        let z = C64::from_polar(modulus, theta);
        let n = valid_n(pair, extra);
        let r = oracle_remainder(z, pair, n, Which::S).unwrap().norm();
        let b = best_bound(z, pair, n, Which::S).unwrap();
        prop_assert!(r <= b.value * (1.0 + 1e-8), "{:?}: |R| = {r:e} > {:e}", b.tag, b.value);
    }

    #[test]
    fn certified_value_is_consistent(pair in real_pair(), modulus in 10.0..40.0f64, theta in -1.5..1.5f64) {
        let z = C64::from_polar(modulus, theta);
        let v = certified_eval(z, pair, None, Which::S).unwrap();
        prop_assert!(v.abs_bound >= 0.0 && v.abs_bound.is_finite());
        prop_assert!(v.approx.re.is_finite() && v.approx.im.is_finite());
    }

    #[test]
    fn terminant_bounded_by_sup_bound(p in 0.5..12.0f64, modulus in 0.5..30.0f64, theta in -2.8..2.8f64) {
        let pc = C64::new(p, 0.0);
        let w = C64::from_polar(modulus, theta);
        let v = terminant_eval(pc, w).unwrap().norm();
        let b = terminant_sup_bound(pc, theta).unwrap();
        prop_assert!(b.value > 0.0);
        prop_assert!(v <= b.value * (1.0 + 1e-10), "|Π| = {v} > {:?} {}", b.proposition_used, b.value);
    }

    #[test]
    fn terminant_positive_on_real_axis(p in 0.1..20.0f64, w in 0.1..50.0f64) {
        let v = terminant_eval(C64::new(p, 0.0), C64::new(w, 0.0)).unwrap();
        prop_assert!(v.re > 0.0 && v.re < 1.0);
        prop_assert!(v.im.abs() <= 1e-14 * v.re);
    }

    #[test]
    fn coefficient_integral_representation(mu in -3.0..1.0f64, nu in -2.0..2.0f64, n in 1usize..6, lambda in 0.3..1.5f64) {
        let (mu, nu) = (C64::new(mu, 0.0), C64::new(nu, 0.0));
        let direct = lommel_a(n, -mu, nu);
        let integral = coeff_integral_check_a(n, mu, nu, lambda).unwrap();
        prop_assert!((direct - integral).norm() <= 1e-8 * direct.norm().max(1.0), "{direct} vs {integral}");
    }

    #[test]
    fn order_pair_json_roundtrip(pair in complex_pair()) {
        let text = serde_json::to_string(&pair).unwrap();
        let back: OrderPair = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, pair);
    }
}
