//! Exponentially improved evaluation: re-expanding the remainder `R_N` in
//! Bessel-K terms and bounding the tail.

use ::lommel::{optimal_truncation, oracle_remainder_s, reexpand_remainder, OrderPair, TruncationMode, Which, C64};

fn main() -> ::lommel::Result<()> {
    let pair = OrderPair::new(C64::new(0.3, 0.2), C64::new(0.8, -0.1));
    for modulus in [6.0, 8.0, 10.0, 12.0] {
        let z = C64::from_polar(modulus, 0.7);
        let scheme = optimal_truncation(modulus, pair, TruncationMode::Hyper)?;
        let m = scheme.m.unwrap_or(0);
        let r = oracle_remainder_s(z, pair, scheme.n)?;
        let re = reexpand_remainder(z, pair, scheme.n, m, Which::S)?;
        println!(
            "|z| = {modulus:>4}  N = {:>2}  M = {:>2}  |R_N| = {:.3e}  |R_N - approx| = {:.3e}  bound {:.3e}",
            scheme.n,
            m,
            r.norm(),
            (r - re.remainder_approx).norm(),
            re.tail_bound
        );
    }
    Ok(())
}
