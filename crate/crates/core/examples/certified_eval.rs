//! Certified evaluation of `S_{μ,ν}(z)` and `S'_{μ,ν}(z)` with every applicable bound.

use ::lommel::lommel::all_bounds;
use ::lommel::{certified_eval_s, certified_eval_s_prime, oracle_remainder_s, OrderPair, Which, C64};

fn main() -> ::lommel::Result<()> {
    let pair = OrderPair::real(-2.0, 1.5);
    for theta in [0.0, std::f64::consts::FRAC_PI_4, std::f64::consts::FRAC_PI_2] {
        let z = C64::from_polar(20.0, theta);
        let v = certified_eval_s(z, pair, None)?;
        let d = certified_eval_s_prime(z, pair, None)?;
        println!(
            "arg z = {theta:.4}  N = {}  S ≈ {:.12e}  ± {:.3e} ({:?})",
            v.scheme.n, v.approx, v.abs_bound, v.bound_tag
        );
        println!("               S' ≈ {:.12e}  ± {:.3e} ({:?})", d.approx, d.abs_bound, d.bound_tag);
        let r = oracle_remainder_s(z, pair, 5)?;
        println!("  R_5 = {r:.6e}  |R_5| = {:.5e}", r.norm());
        for b in all_bounds(z, pair, 5, Which::S)? {
            println!("    {:<16} {:.5e}", format!("{:?}", b.tag), b.value);
        }
    }
    Ok(())
}
