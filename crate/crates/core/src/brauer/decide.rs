use serde::Serialize;

use super::{p_part, subgroup_generated, BrauerError, BrauerResult, SbVariety};
use crate::cert::{build_certificate, Certificate};
use crate::field::prime_factors;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    Birational { certificate: Certificate },
    NotBirational { reason: String },
    /// Minimal varieties of prime-power index generating the same subgroup.
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StableVerdict {
    StablyBirational,
    NotStablyBirational,
}

/// `n = u * v` with `u` the full power of the smallest prime dividing `n`;
/// `None` when `n` is 1 or a prime power.
pub fn factorization_choice(n: u64) -> Option<(u64, u64)> {
    let primes = prime_factors(n);
    if primes.len() < 2 {
        return None;
    }
    let u = p_part(n, primes[0]);
    Some((u, n / u))
}

/// Decides birationality of two Severi-Brauer varieties of equal dimension
/// where the known results allow it.
pub fn decide_birational(p: &SbVariety, q: &SbVariety) -> BrauerResult<Verdict> {
    if p.dim() != q.dim() {
        return Err(BrauerError::DimensionMismatch(p.dim(), q.dim()));
    }
    if !p.class().same_subgroup(q.class()) {
        let reason = format!("{} and {} generate different subgroups", p.class(), q.class());
        return Ok(Verdict::NotBirational { reason });
    }
    // Equal subgroups force equal indices, so minimality is symmetric. A
    // point (index 1, dim 0) needs no certificate steps at all.
    let decidable = !p.is_minimal() || p.dim() == 0 || factorization_choice(p.index()).is_some();
    if !decidable {
        return Ok(Verdict::Unknown);
    }
    let certificate = build_certificate(p, q).expect("preconditions checked above");
    Ok(Verdict::Birational { certificate })
}

/// Stable birationality of products, decided by comparing generated subgroups.
pub fn decide_stably_birational_products(ps: &[SbVariety], qs: &[SbVariety], bound: usize) -> BrauerResult<StableVerdict> {
    let classes = |xs: &[SbVariety]| xs.iter().map(|x| x.class().clone()).collect::<Vec<_>>();
    let a = subgroup_generated(&classes(ps), bound)?;
    let b = subgroup_generated(&classes(qs), bound)?;
    Ok(if a == b { StableVerdict::StablyBirational } else { StableVerdict::NotStablyBirational })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brauer::{BrauerClass, SUBGROUP_BOUND};
    use crate::cert::{check_certificate, CrtParams};

    fn sb(cls: BrauerClass, dim: u64) -> SbVariety {
        SbVariety::new(cls, dim).unwrap()
    }

    #[test]
    fn factorization_examples() {
        assert_eq!(factorization_choice(6), Some((2, 3)));
        assert_eq!(factorization_choice(12), Some((4, 3)));
        assert_eq!(factorization_choice(45), Some((9, 5)));
        assert_eq!(factorization_choice(8), None);
        assert_eq!(factorization_choice(1), None);
    }

    #[test]
    fn decide_examples() {
        let t = sb(BrauerClass::trivial(), 3);
        let Verdict::Birational { certificate } = decide_birational(&t, &t).unwrap() else { panic!() };
        assert!(certificate.steps.is_empty());

        let a = BrauerClass::cyclic(6);
        let Verdict::Birational { certificate } = decide_birational(&sb(a.clone(), 5), &sb(a.power(5), 5)).unwrap() else {
            panic!()
        };
        assert_eq!(certificate.steps[0].payload.params, Some(CrtParams { a: 2, c: 1, u: 2, v: 3 }));
        assert!(check_certificate(&certificate).is_valid());

        let a4 = BrauerClass::cyclic(4);
        assert_eq!(decide_birational(&sb(a4.clone(), 3), &sb(a4.power(3), 3)).unwrap(), Verdict::Unknown);
        assert!(matches!(
            decide_birational(&sb(a4.clone(), 3), &sb(a4.power(2), 3)).unwrap(),
            Verdict::NotBirational { .. }
        ));
        assert_eq!(decide_birational(&sb(a4.clone(), 3), &sb(a4, 7)).unwrap_err(), BrauerError::DimensionMismatch(3, 7));
    }

    #[test]
    fn stable_examples() {
        let a = BrauerClass::cyclic(4);
        let p = sb(a.clone(), 3);
        let pp = sb(a.tensor(&a), 3);
        let pad = sb(BrauerClass::trivial(), 3);
        let d = |x: &[SbVariety], y: &[SbVariety]| decide_stably_birational_products(x, y, SUBGROUP_BOUND).unwrap();
        assert_eq!(d(&[p.clone(), p.clone()], &[pp, pad.clone()]), StableVerdict::NotStablyBirational);
        // P x P^dual still generates <alpha>; the tensor P (x) P^dual is split.
        let dual = sb(a.inverse(), 3);
        assert_eq!(d(&[p.clone(), dual], &[pad.clone(), pad.clone()]), StableVerdict::NotStablyBirational);
        assert_eq!(d(&[sb(a.tensor(&a.inverse()), 3)], &[pad]), StableVerdict::StablyBirational);
        assert_eq!(d(&[p.clone()], &[p]), StableVerdict::StablyBirational);
    }
}
