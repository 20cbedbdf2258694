//! Certified tails of the large-argument expansions of the Anger-Weber,
//! Scorer and Struve functions, by reduction to Lommel remainders.
//!
//! Every result is the bracketed series block of the expansion together with
//! a bound on its remainder. Assembly into function values needs Bessel
//! functions of complex argument, which are outside the crate:
//!
//! * `A_ν(z) = (F-block + R^{(1)})/(πz) - ν(G-block + R^{(2)})/(πz²)`,
//!   `J_ν(z) = J_ν(z) + sin(πν)(F-block + R^{(1)} - ν(G-block + R^{(2)})/z)/(πz)`,
//!   `E_ν(z) = -Y_ν(z) - (1+cos πν)(F-block + R^{(1)})/(πz) - ν(1-cos πν)(G-block + R^{(2)})/(πz²)`;
//!   for derivatives the blocks carry the factors `2n+1` and `2m+2` and the
//!   prefactors `-1/(πz²)`, `ν/(πz³)` (for `A'_ν`).
//! * `Hi(-z) = (block + R)/(πz)`, `Hi'(-z) = (block + R)/(πz²)`,
//!   `Gi(z) = (block + R)/(πz)`, `Gi'(z) = -(block + R)/(πz²)`.
//! * `H_ν(z) = Y_ν(z) + (z/2)^{ν-1}(block + R)/π`,
//!   `L_ν(z) = I_ν(z) ± (2/(πi)) e^{±πiν} K_ν(z) + (z/2)^{ν-1}(block + R)/π`,
//!   with `(z/2)^{ν-2}` and `Y'_ν`, `I'_ν`, `K'_ν` for the derivatives.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};

use serde::{Deserialize, Serialize};

use crate::coefficients::OrderPair;
use crate::error::{Error, Result};
use crate::lommel::{
    best_bound, first_omitted, normalized_partial_sum, oracle_remainder, CertifiedValue, TruncationScheme,
    Which,
};
use crate::numerics::{c, rgamma};
use crate::C64;

/// Sector slack.
pub const DELTA: f64 = 1e-6;

/// Branch of the modified Struve expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    AngerJ,
    WeberE,
    AngerWeberA,
    ScorerHi,
    ScorerGi,
    StruveH,
    StruveL(Branch),
}

/// `scheme.m` is the length of the second Anger-Weber block and defaults to `scheme.n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RelatedQuery {
    pub family: Family,
    pub derivative: bool,
    pub nu: Option<C64>,
    pub z: C64,
    pub scheme: TruncationScheme,
}

impl RelatedQuery {
    pub fn new(family: Family, derivative: bool, nu: Option<C64>, z: C64, n: usize) -> Self {
        RelatedQuery { family, derivative, nu, z, scheme: TruncationScheme::plain(n) }
    }

    fn nu(&self) -> Result<C64> {
        self.nu.ok_or_else(|| Error::precondition("ν is required for this family"))
    }
}

/// Rejects `z` outside the sector of the family's expansion.
pub fn check_sector(family: Family, z: C64) -> Result<()> {
    if !(z.re.is_finite() && z.im.is_finite()) || z.norm() == 0.0 {
        return Err(Error::domain(format!("z must be finite and non-zero, got {z}")));
    }
    let theta = z.arg();
    let ok = match family {
        Family::AngerJ | Family::WeberE | Family::AngerWeberA | Family::StruveH => theta.abs() <= PI - DELTA,
        Family::ScorerHi => theta.abs() <= 2.0 * FRAC_PI_3 - DELTA,
        Family::ScorerGi => theta.abs() <= FRAC_PI_3 - DELTA,
        Family::StruveL(Branch::Plus) => theta >= -FRAC_PI_2 + DELTA,
        Family::StruveL(Branch::Minus) => -theta >= -FRAC_PI_2 + DELTA,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::domain(format!("arg z = {theta} outside the sector of {family:?}")))
    }
}

/// `z e^{iφ}` with the argument added explicitly.
fn rotate(z: C64, phi: f64) -> C64 {
    C64::from_polar(z.norm(), z.arg() + phi)
}

/// `scale × (N-term bracketed Lommel sum)` with `|scale| ×` the best Lommel bound.
fn mapped(z: C64, pair: OrderPair, n: usize, which: Which, scale: C64) -> Result<CertifiedValue> {
    let best = best_bound(z, pair, n, which)?;
    let bound = scale.norm() * best.value;
    Ok(CertifiedValue {
        approx: scale * normalized_partial_sum(z, pair, n, which)?,
        abs_bound: bound,
        normalized_bound: bound,
        first_omitted: scale.norm() * first_omitted(z, pair, n, which),
        bound_tag: best.tag,
        terminant_tag: best.terminant,
        scheme: TruncationScheme { n, m: None, lambda: best.lambda },
    })
}

fn anger_weber_pairs(nu: C64) -> (OrderPair, OrderPair) {
    (OrderPair::new(c(0.0, 0.0), nu), OrderPair::new(c(-1.0, 0.0), nu))
}

fn block_lengths(q: &RelatedQuery) -> (usize, usize) {
    (q.scheme.n, q.scheme.m.unwrap_or(q.scheme.n))
}

fn check_anger_weber(q: &RelatedQuery) -> Result<()> {
    if !matches!(q.family, Family::AngerJ | Family::WeberE | Family::AngerWeberA) {
        return Err(Error::precondition(format!("{:?} is not an Anger-Weber family", q.family)));
    }
    check_sector(q.family, q.z)
}

/// The `F_n` block (length `N`) and the `G_m` block (length `M`) with their bounds.
/// For derivatives the blocks are `Σ (2n+1) F_n/z^{2n}` and `Σ (2m+2) G_m/z^{2m}`.
pub fn anger_weber_tail(q: &RelatedQuery) -> Result<(CertifiedValue, CertifiedValue)> {
    check_anger_weber(q)?;
    let (p1, p2) = anger_weber_pairs(q.nu()?);
    let (n, m) = block_lengths(q);
    let (which, scale) = if q.derivative { (Which::SPrime, c(-1.0, 0.0)) } else { (Which::S, c(1.0, 0.0)) };
    let f = mapped(q.z, p1, n, which, scale)?;
    let mut g = mapped(q.z, p2, m, which, scale)?;
    g.scheme.n = m;
    Ok((f, g))
}

/// `(R^{(1)}_N, R^{(2)}_M)` (or their derivative analogues) by quadrature.
pub fn anger_weber_remainders(q: &RelatedQuery) -> Result<(C64, C64)> {
    check_anger_weber(q)?;
    let (p1, p2) = anger_weber_pairs(q.nu()?);
    let (n, m) = block_lengths(q);
    let (which, scale) = if q.derivative { (Which::SPrime, -1.0) } else { (Which::S, 1.0) };
    Ok((oracle_remainder(q.z, p1, n, which)? * scale, oracle_remainder(q.z, p2, m, which)? * scale))
}

/// `(2/3) z^{3/2}` on the principal branch.
pub fn scorer_argument(z: C64) -> C64 {
    C64::from_polar(2.0 / 3.0 * z.norm().powf(1.5), 1.5 * z.arg())
}

fn scorer_pair(derivative: bool) -> OrderPair {
    if derivative {
        OrderPair::real(-1.0, 2.0 / 3.0)
    } else {
        OrderPair::real(0.0, 1.0 / 3.0)
    }
}

/// `Σ_{n<N} s^n (3n)!/(n!(3z³)^n)` (`(3n+1)!` for derivatives), `s = -1` for Hi, `1` for Gi.
pub fn scorer_block(z: C64, n: usize, derivative: bool, alternating: bool) -> C64 {
    let inv = (z * z * z * 3.0).inv();
    let mut term = c(1.0, 0.0);
    let mut sum = c(0.0, 0.0);
    let shift = if derivative { 1.0 } else { 0.0 };
    for k in 0..n {
        sum += term;
        let kf = (k + 1) as f64;
        // (3k+s)!/k! grows by (3k+s)(3k+s-1)(3k+s-2)/k per step
        let ratio = (3.0 * kf + shift) * (3.0 * kf + shift - 1.0) * (3.0 * kf + shift - 2.0) / kf;
        term *= inv * ratio * if alternating { -1.0 } else { 1.0 };
    }
    sum
}

fn check_scorer(q: &RelatedQuery) -> Result<()> {
    if !matches!(q.family, Family::ScorerHi | Family::ScorerGi) {
        return Err(Error::precondition(format!("{:?} is not a Scorer family", q.family)));
    }
    check_sector(q.family, q.z)
}

/// Rotations and weights of the two Hi remainders that make up a Gi remainder.
fn gi_parts(derivative: bool) -> [(f64, C64); 2] {
    let s = if derivative { 1.0 } else { -1.0 };
    [
        (-FRAC_PI_2, C64::from_polar(0.5, s * FRAC_PI_3)),
        (FRAC_PI_2, C64::from_polar(0.5, -s * FRAC_PI_3)),
    ]
}

/// Bracketed series of `Hi(-z)`, `Hi'(-z)`, `Gi(z)` or `Gi'(z)` with a bound on its remainder.
pub fn scorer_tail(q: &RelatedQuery) -> Result<CertifiedValue> {
    check_scorer(q)?;
    let zeta = scorer_argument(q.z);
    let pair = scorer_pair(q.derivative);
    let n = q.scheme.n;
    match q.family {
        Family::ScorerHi => {
            let mut v = mapped(zeta, pair, n, Which::S, c(1.0, 0.0))?;
            v.approx = scorer_block(q.z, n, q.derivative, true);
            Ok(v)
        }
        _ => {
            let parts = gi_parts(q.derivative)
                .iter()
                .map(|&(phi, w)| Ok((mapped(rotate(zeta, phi), pair, n, Which::S, c(1.0, 0.0))?, w.norm())))
                .collect::<Result<Vec<_>>>()?;
            let (a, b) = (parts[0].0, parts[1].0);
            let dominant = if a.normalized_bound >= b.normalized_bound { a } else { b };
            let bound = parts.iter().map(|(v, w)| v.normalized_bound * w).sum();
            Ok(CertifiedValue {
                approx: scorer_block(q.z, n, q.derivative, false),
                abs_bound: bound,
                normalized_bound: bound,
                first_omitted: parts.iter().map(|(v, w)| v.first_omitted * w).sum(),
                ..dominant
            })
        }
    }
}

/// The Scorer remainder by quadrature of the mapped Lommel remainders.
pub fn scorer_remainder(q: &RelatedQuery) -> Result<C64> {
    check_scorer(q)?;
    let zeta = scorer_argument(q.z);
    let pair = scorer_pair(q.derivative);
    let n = q.scheme.n;
    match q.family {
        Family::ScorerHi => oracle_remainder(zeta, pair, n, Which::S),
        _ => gi_parts(q.derivative).iter().try_fold(c(0.0, 0.0), |acc, &(phi, w)| {
            Ok(acc + w * oracle_remainder(rotate(zeta, phi), pair, n, Which::S)?)
        }),
    }
}

fn check_struve(q: &RelatedQuery) -> Result<C64> {
    if !matches!(q.family, Family::StruveH | Family::StruveL(_)) {
        return Err(Error::precondition(format!("{:?} is not a Struve family", q.family)));
    }
    check_sector(q.family, q.z)?;
    let nu = q.nu()?;
    if rgamma(nu + 0.5).norm() == 0.0 {
        return Err(Error::Pole("gamma(ν + 1/2)"));
    }
    Ok(nu)
}

/// Argument of the `H` expansion and the sign in front of it.
fn struve_map(q: &RelatedQuery) -> (C64, f64) {
    match q.family {
        Family::StruveL(Branch::Plus) => (rotate(q.z, -FRAC_PI_2), -1.0),
        Family::StruveL(Branch::Minus) => (rotate(q.z, FRAC_PI_2), -1.0),
        _ => (q.z, 1.0),
    }
}

/// `√π/Γ(ν+1/2)` (halved for derivatives) times the sign of the mapping.
fn struve_scale(nu: C64, derivative: bool, sign: f64) -> C64 {
    let half = if derivative { 0.5 } else { 1.0 };
    rgamma(nu + 0.5) * (PI.sqrt() * half * sign)
}

/// Bracketed series of `H_ν`, `L_ν` or their derivatives with a bound on its remainder.
pub fn struve_tail(q: &RelatedQuery) -> Result<CertifiedValue> {
    let nu = check_struve(q)?;
    let (w, sign) = struve_map(q);
    let which = if q.derivative { Which::SPrime } else { Which::S };
    mapped(w, OrderPair::new(nu, nu), q.scheme.n, which, struve_scale(nu, q.derivative, sign))
}

/// `Σ_{n<N} Γ(n+1/2)/(Γ(ν+1/2-n)(z/2)^{2n})`, with the factor `ν/2-1/2-n`
/// for derivatives, computed term by term from the Gamma functions.
pub fn struve_block(z: C64, nu: C64, n: usize, derivative: bool) -> Result<C64> {
    let half_z2 = (z * 0.5) * (z * 0.5);
    let mut sum = c(0.0, 0.0);
    let mut power = c(1.0, 0.0);
    for k in 0..n {
        let kf = k as f64;
        let g = crate::numerics::gamma(c(kf + 0.5, 0.0))? * rgamma(nu + 0.5 - kf);
        let factor = if derivative { nu * 0.5 - 0.5 - kf } else { c(1.0, 0.0) };
        sum += g * factor / power;
        power *= half_z2;
    }
    Ok(sum)
}

/// The Struve remainder by quadrature of the mapped Lommel remainder.
pub fn struve_remainder(q: &RelatedQuery) -> Result<C64> {
    let nu = check_struve(q)?;
    let (w, sign) = struve_map(q);
    let which = if q.derivative { Which::SPrime } else { Which::S };
    Ok(struve_scale(nu, q.derivative, sign) * oracle_remainder(w, OrderPair::new(nu, nu), q.scheme.n, which)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::{anger_f, anger_g};
    use crate::lommel::{oracle_remainder_s, remainder_bound_combined_real};
    use crate::numerics::r;

    fn query(family: Family, derivative: bool, nu: Option<f64>, z: C64, n: usize) -> RelatedQuery {
        RelatedQuery::new(family, derivative, nu.map(r), z, n)
    }

    #[test]
    fn anger_weber_blocks_match_lommel() {
        let q = query(Family::AngerWeberA, false, Some(1.5), r(20.0), 10);
        let (f, g) = anger_weber_tail(&q).unwrap();
        let lommel = best_bound(r(20.0), OrderPair::real(0.0, 1.5), 10, Which::S).unwrap();
        assert_eq!(f.normalized_bound, lommel.value);
        let direct: C64 = (0..10).map(|k| anger_f(k, r(1.5)) / 400f64.powi(k as i32)).sum();
        assert!((f.approx - direct).norm() < 1e-15);
        let direct: C64 = (0..10).map(|k| anger_g(k, r(1.5)) / 400f64.powi(k as i32)).sum();
        assert!((g.approx - direct).norm() < 1e-15);
    }

    #[test]
    fn anger_weber_derivative_blocks() {
        let z = c(9.0, 4.0);
        let mut q = query(Family::AngerJ, true, Some(0.7), z, 4);
        q.scheme.m = Some(3);
        let (f, g) = anger_weber_tail(&q).unwrap();
        let inv = (z * z).inv();
        let df: C64 = (0..4).map(|k| anger_f(k, r(0.7)) * (2 * k + 1) as f64 * inv.powi(k as i32)).sum();
        let dg: C64 = (0..3).map(|k| anger_g(k, r(0.7)) * (2 * k + 2) as f64 * inv.powi(k as i32)).sum();
        assert!((f.approx - df).norm() < 1e-14);
        assert!((g.approx - dg).norm() < 1e-14);
        assert_eq!(g.scheme.n, 3);
    }

    #[test]
    fn integer_order_tails_are_finite() {
        let (f, g) = anger_weber_tail(&query(Family::AngerJ, false, Some(2.0), r(15.0), 7)).unwrap();
        assert!(f.normalized_bound.is_finite() && g.normalized_bound.is_finite());
    }

    #[test]
    fn scorer_block_matches_lommel_sum() {
        let z = C64::from_polar(6.0, 0.4);
        let zeta = scorer_argument(z);
        for (derivative, alternating) in [(false, true), (true, true)] {
            let lommel = normalized_partial_sum(zeta, scorer_pair(derivative), 7, Which::S).unwrap();
            let block = scorer_block(z, 7, derivative, alternating);
            assert!((lommel - block).norm() < 1e-14 * block.norm());
        }
    }

    #[test]
    fn scorer_hi_oracle_at_mapped_argument() {
        let q = query(Family::ScorerHi, false, None, r(9.0), 8);
        let rem = scorer_remainder(&q).unwrap();
        assert_eq!(rem, oracle_remainder_s(r(18.0), OrderPair::real(0.0, 1.0 / 3.0), 8).unwrap());
        assert!(rem.norm() <= scorer_tail(&q).unwrap().normalized_bound);
    }

    #[test]
    fn struve_examples() {
        let v = struve_tail(&query(Family::StruveH, false, Some(0.5), r(12.0), 1)).unwrap();
        assert_eq!(v.normalized_bound, 0.0);
        assert_eq!(struve_remainder(&query(Family::StruveH, false, Some(0.5), r(12.0), 1)).unwrap(), r(0.0));
        let v = struve_tail(&query(Family::StruveH, false, Some(0.0), r(20.0), 10)).unwrap();
        let lommel = best_bound(r(20.0), OrderPair::real(0.0, 0.0), 10, Which::S).unwrap();
        assert!((v.normalized_bound - lommel.value).abs() < 1e-14 * lommel.value);
        assert!(v.normalized_bound <= remainder_bound_combined_real(r(20.0), OrderPair::real(0.0, 0.0), 10).unwrap().value);
        assert!(matches!(
            struve_tail(&query(Family::StruveH, false, Some(-1.5), r(20.0), 10)),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn struve_block_matches_lommel_sum() {
        let z = c(11.0, -3.0);
        for nu in [c(0.3, 0.0), c(1.2, 0.4)] {
            for derivative in [false, true] {
                let q = RelatedQuery::new(Family::StruveH, derivative, Some(nu), z, 6);
                let block = struve_block(z, nu, 6, derivative).unwrap();
                assert!((struve_tail(&q).unwrap().approx - block).norm() < 1e-12 * block.norm());
            }
        }
    }

    #[test]
    fn struve_l_is_rotated_h() {
        let q = query(Family::StruveL(Branch::Plus), false, Some(1.0 / 3.0), r(10.0), 5);
        let h = query(Family::StruveH, false, Some(1.0 / 3.0), C64::from_polar(10.0, -FRAC_PI_2), 5);
        assert_eq!(struve_remainder(&q).unwrap(), -struve_remainder(&h).unwrap());
        let l = struve_tail(&q).unwrap();
        let hv = struve_tail(&h).unwrap();
        assert_eq!(l.approx, -hv.approx);
        assert_eq!(l.normalized_bound, hv.normalized_bound);
    }

    #[test]
    fn sector_guards() {
        let eps = 1e-3;
        let cases = [
            (Family::AngerWeberA, PI - DELTA),
            (Family::ScorerHi, 2.0 * FRAC_PI_3 - DELTA),
            (Family::ScorerGi, FRAC_PI_3 - DELTA),
        ];
        for (family, edge) in cases {
            assert!(check_sector(family, C64::from_polar(5.0, edge - eps)).is_ok());
            assert!(check_sector(family, C64::from_polar(5.0, -(edge - eps))).is_ok());
            if edge + eps < PI {
                assert!(check_sector(family, C64::from_polar(5.0, edge + eps)).is_err());
            }
        }
        let plus = Family::StruveL(Branch::Plus);
        assert!(check_sector(plus, C64::from_polar(5.0, -FRAC_PI_2 + eps)).is_ok());
        assert!(check_sector(plus, C64::from_polar(5.0, -FRAC_PI_2 - eps)).is_err());
        let minus = Family::StruveL(Branch::Minus);
        assert!(check_sector(minus, C64::from_polar(5.0, FRAC_PI_2 - eps)).is_ok());
        assert!(check_sector(minus, C64::from_polar(5.0, FRAC_PI_2 + eps)).is_err());
        assert!(scorer_tail(&query(Family::ScorerGi, false, None, C64::from_polar(8.0, 1.1), 3)).is_err());
    }

    #[test]
    fn gi_is_half_sum_of_rotated_hi() {
        let z = C64::from_polar(7.0, 0.3);
        let zeta = scorer_argument(z);
        let pair = OrderPair::real(0.0, 1.0 / 3.0);
        let a = oracle_remainder_s(rotate(zeta, -FRAC_PI_2), pair, 5).unwrap();
        let b = oracle_remainder_s(rotate(zeta, FRAC_PI_2), pair, 5).unwrap();
        let expected = (C64::from_polar(1.0, -FRAC_PI_3) * a + C64::from_polar(1.0, FRAC_PI_3) * b) * 0.5;
        let got = scorer_remainder(&query(Family::ScorerGi, false, None, z, 5)).unwrap();
        assert!((got - expected).norm() < 1e-14 * expected.norm());
        assert!(got.norm() <= scorer_tail(&query(Family::ScorerGi, false, None, z, 5)).unwrap().normalized_bound);
    }
}
