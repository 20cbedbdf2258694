//! The terminant `Π_p(w)` and the catalogue of bounds on `sup_{r≥1}|Π_p(w r)|`.

use ::lommel::terminant::terminant_bound_catalogue;
use ::lommel::{chi, terminant_eval, terminant_sup_bound, C64};
use std::f64::consts::PI;

fn main() -> ::lommel::Result<()> {
    let p = C64::new(6.0, 0.0);
    println!("χ({}) = {:.10}", p.re, chi(p.re)?);
    for theta in [0.0, PI / 4.0, 3.0 * PI / 8.0, PI / 2.0, 3.0 * PI / 4.0] {
        let mut sampled: f64 = 0.0;
        for k in 0..200 {
            let w = C64::from_polar(6.0 * (1.0 + k as f64 * 0.05), theta);
            sampled = sampled.max(terminant_eval(p, w)?.norm());
        }
        let best = terminant_sup_bound(p, theta)?;
        println!("θ = {theta:.4}  sampled sup {sampled:.6}  bound {:.6} ({:?})", best.value, best.proposition_used);
        for b in terminant_bound_catalogue(p, theta)? {
            println!("    {:?}: {:.6}", b.proposition_used, b.value);
        }
    }
    Ok(())
}
