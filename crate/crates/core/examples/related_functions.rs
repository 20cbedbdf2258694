//! Certified tails for the Anger-Weber, Scorer and Struve expansions.

use ::lommel::related::{anger_weber_tail, scorer_remainder, scorer_tail, struve_remainder, struve_tail, Family, RelatedQuery};
use ::lommel::C64;

fn main() -> ::lommel::Result<()> {
    let z = C64::from_polar(15.0, 0.4);
    let nu = Some(C64::new(0.7, 0.0));

    let (f, g) = anger_weber_tail(&RelatedQuery::new(Family::AngerWeberA, false, nu, z, 6))?;
    println!("A_ν   F-block {:.12e} ± {:.3e}", f.approx, f.abs_bound);
    println!("      G-block {:.12e} ± {:.3e}", g.approx, g.abs_bound);

    for (family, label) in [(Family::ScorerHi, "Hi(-z)"), (Family::ScorerGi, "Gi(z) ")] {
        let q = RelatedQuery::new(family, false, None, z, 4);
        let v = scorer_tail(&q)?;
        let r = scorer_remainder(&q)?;
        println!("{label} block {:.12e} ± {:.3e}  |R| = {:.3e}", v.approx, v.abs_bound, r.norm());
    }

    let q = RelatedQuery::new(Family::StruveH, false, nu, z, 6);
    let v = struve_tail(&q)?;
    let r = struve_remainder(&q)?;
    println!("H_ν   block {:.12e} ± {:.3e}  |R| = {:.3e}", v.approx, v.abs_bound, r.norm());
    Ok(())
}
