//! The Brauer group of the rationals as lists of local invariants.
//!
//! A class is a finite map from places to `Q/Z` with invariants summing to 0
//! and the real invariant in `{0, 1/2}`. Over `Q` the index of a class equals
//! its period, which is what makes the index of a Severi-Brauer variety
//! computable here; this is a property of the model, not of general fields.

mod decide;

pub use decide::{
    decide_birational, decide_stably_birational_products, factorization_choice, StableVerdict, Verdict,
};

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{is_prime, prime_factors};

/// Default bound on the size of an enumerated subgroup.
pub const SUBGROUP_BOUND: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BrauerError {
    #[error("invariants sum to {num}/{den}, not 0 mod 1")]
    ReciprocityViolated { num: u64, den: u64 },
    #[error("real invariant must be 0 or 1/2, got {num}/{den}")]
    RealInvariantInvalid { num: u64, den: u64 },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("place {0} listed twice")]
    DuplicatePlace(Place),
    #[error("invariant {num}/{den} is not a reduced fraction in [0, 1)")]
    NotReduced { num: u64, den: u64 },
    #[error("unknown place {0:?}")]
    BadPlace(String),
    #[error("index {index} does not divide dim + 1 = {}", dim + 1)]
    IndexDoesNotDivide { index: u64, dim: u64 },
    #[error("dimensions differ: {0} vs {1}")]
    DimensionMismatch(u64, u64),
    #[error("subgroup has more than {0} elements")]
    SubgroupTooLarge(usize),
    #[error("{0} and {1} are not coprime")]
    NotCoprime(u64, u64),
    #[error("{u} * {v} is not {n}, or a factor is below 2")]
    BadFactorization { u: u64, v: u64, n: u64 },
}

pub type BrauerResult<T> = Result<T, BrauerError>;

/// A place of `Q`. Finite places sort before the real place.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Finite(u64),
    Real,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Real => f.write_str("real"),
        }
    }
}

impl FromStr for Place {
    type Err = BrauerError;

    fn from_str(s: &str) -> BrauerResult<Place> {
        if s == "real" {
            return Ok(Place::Real);
        }
        let p: u64 = s.parse().map_err(|_| BrauerError::BadPlace(s.to_string()))?;
        if !is_prime(p) {
            return Err(BrauerError::NotPrime(p));
        }
        Ok(Place::Finite(p))
    }
}

/// Reduced `num/den` in `[0, 1)`, with `0` stored as `0/1`.
fn reduce(num: u128, den: u128) -> (u64, u64) {
    let num = num % den;
    let g = num.gcd(&den);
    ((num / g) as u64, (den / g) as u64)
}

fn add_frac(a: (u64, u64), b: (u64, u64)) -> (u64, u64) {
    let l = (a.1 as u128).lcm(&(b.1 as u128));
    reduce(a.0 as u128 * (l / a.1 as u128) + b.0 as u128 * (l / b.1 as u128), l)
}

/// A Brauer class of `Q`; zero invariants are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "ClassJson", into = "ClassJson")]
pub struct BrauerClass {
    inv: BTreeMap<Place, (u64, u64)>,
}

/// Places are written as strings; on input a prime may also be a number.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PlaceJson {
    Name(String),
    Prime(u64),
}

#[derive(Serialize, Deserialize)]
struct InvariantJson {
    place: PlaceJson,
    num: u64,
    den: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassJson {
    invariants: Vec<InvariantJson>,
}

impl TryFrom<ClassJson> for BrauerClass {
    type Error = BrauerError;

    fn try_from(j: ClassJson) -> BrauerResult<Self> {
        let entries = j
            .invariants
            .into_iter()
            .map(|e| {
                let place = match e.place {
                    PlaceJson::Name(s) => s.parse()?,
                    PlaceJson::Prime(p) => p.to_string().parse()?,
                };
                Ok((place, e.num, e.den))
            })
            .collect::<BrauerResult<Vec<_>>>()?;
        BrauerClass::new(&entries)
    }
}

impl From<BrauerClass> for ClassJson {
    fn from(c: BrauerClass) -> Self {
        let invariants =
            c.inv.iter().map(|(p, &(num, den))| InvariantJson { place: PlaceJson::Name(p.to_string()), num, den }).collect();
        ClassJson { invariants }
    }
}

impl fmt::Display for BrauerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.inv.iter().map(|(p, (a, b))| format!("{p}:{a}/{b}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl BrauerClass {
    pub fn trivial() -> Self {
        BrauerClass::default()
    }

    /// Builds a class from `(place, num, den)` entries; fractions must be
    /// reduced and lie in `[0, 1)`.
    pub fn new(entries: &[(Place, u64, u64)]) -> BrauerResult<Self> {
        let mut inv = BTreeMap::new();
        let mut total = (0, 1);
        for &(place, num, den) in entries {
            if den == 0 || num >= den || num.gcd(&den) != 1 {
                return Err(BrauerError::NotReduced { num, den });
            }
            match place {
                Place::Finite(p) if !is_prime(p) => return Err(BrauerError::NotPrime(p)),
                Place::Real if !(num == 0 || (num, den) == (1, 2)) => {
                    return Err(BrauerError::RealInvariantInvalid { num, den })
                }
                _ => {}
            }
            if inv.contains_key(&place) {
                return Err(BrauerError::DuplicatePlace(place));
            }
            total = add_frac(total, (num, den));
            inv.insert(place, (num, den));
        }
        if total.0 != 0 {
            return Err(BrauerError::ReciprocityViolated { num: total.0, den: total.1 });
        }
        inv.retain(|_, &mut (num, _)| num != 0);
        Ok(BrauerClass { inv })
    }

    /// Shorthand for finite-place entries given as `(prime, num, den)`.
    pub fn from_finite(entries: &[(u64, u64, u64)]) -> BrauerResult<Self> {
        let v: Vec<_> = entries.iter().map(|&(p, a, b)| (Place::Finite(p), a, b)).collect();
        Self::new(&v)
    }

    /// The class `{2: 1/n, 3: (n-1)/n}` of period `n`.
    pub fn cyclic(n: u64) -> Self {
        assert!(n >= 1);
        if n == 1 {
            return Self::trivial();
        }
        Self::from_finite(&[(2, 1, n), (3, n - 1, n)]).expect("reciprocity holds by construction")
    }

    pub fn invariants(&self) -> impl Iterator<Item = (Place, u64, u64)> + '_ {
        self.inv.iter().map(|(&p, &(a, b))| (p, a, b))
    }

    pub fn is_trivial(&self) -> bool {
        self.inv.is_empty()
    }

    pub fn tensor(&self, other: &BrauerClass) -> BrauerClass {
        let mut inv = self.inv.clone();
        for (&place, &frac) in &other.inv {
            let sum = add_frac(inv.get(&place).copied().unwrap_or((0, 1)), frac);
            if sum.0 == 0 {
                inv.remove(&place);
            } else {
                inv.insert(place, sum);
            }
        }
        BrauerClass { inv }
    }

    pub fn inverse(&self) -> BrauerClass {
        let inv = self.inv.iter().map(|(&p, &(a, b))| (p, (b - a, b))).collect();
        BrauerClass { inv }
    }

    /// `k * alpha`; negative `k` is allowed.
    pub fn power(&self, k: i64) -> BrauerClass {
        let mut inv = BTreeMap::new();
        for (&p, &(a, b)) in &self.inv {
            let k_mod = k.rem_euclid(b as i64) as u128;
            let r = reduce(a as u128 * k_mod, b as u128);
            if r.0 != 0 {
                inv.insert(p, r);
            }
        }
        BrauerClass { inv }
    }

    /// Order in the group: the lcm of the invariant denominators.
    pub fn period(&self) -> u64 {
        self.inv.values().fold(1, |acc, &(_, b)| acc.lcm(&b))
    }

    /// Equal to the period over `Q`.
    pub fn index(&self) -> u64 {
        self.period()
    }

    /// Dimension of the minimal Severi-Brauer variety in the class.
    pub fn min_dimension(&self) -> u64 {
        self.index() - 1
    }

    /// True iff `self` is a multiple of `alpha`.
    pub fn in_subgroup(&self, alpha: &BrauerClass) -> bool {
        let mut acc = BrauerClass::trivial();
        for _ in 0..alpha.period() {
            if acc == *self {
                return true;
            }
            acc = acc.tensor(alpha);
        }
        false
    }

    pub fn same_subgroup(&self, other: &BrauerClass) -> bool {
        self.in_subgroup(other) && other.in_subgroup(self)
    }

    /// One part per prime dividing the period, primes ascending; the `p`-part
    /// is `e_p * alpha` for the idempotent `e_p = 1 mod p^k`, `0 mod N/p^k`.
    pub fn primary_decompose(&self) -> Vec<BrauerClass> {
        let n = self.period();
        prime_factors(n)
            .into_iter()
            .map(|p| {
                let pk = p_part(n, p);
                let rest = n / pk;
                // rest is invertible mod p^k
                let e = (rest * mod_inverse(rest % pk, pk)) % n;
                self.power(e as i64)
            })
            .collect()
    }

    /// Random class whose period divides `max_period`-bounded `n`, spread over
    /// a few small primes and possibly the real place.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, max_period: u64) -> BrauerClass {
        const PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];
        let n = rng.gen_range(1..=max_period);
        let count = rng.gen_range(1..=3);
        let mut places: Vec<Place> = Vec::new();
        while places.len() < count {
            let p = Place::Finite(PRIMES[rng.gen_range(0..PRIMES.len())]);
            if !places.contains(&p) {
                places.push(p);
            }
        }
        let mut entries = Vec::new();
        let mut total = (0, 1);
        if n % 2 == 0 && rng.gen_bool(0.5) {
            entries.push((Place::Real, 1, 2));
            total = (1, 2);
        }
        for _ in 1..count {
            let (a, b) = reduce(rng.gen_range(0..n) as u128, n as u128);
            entries.push((places.pop().expect("count places"), a, b));
            total = add_frac(total, (a, b));
        }
        let last = if total.0 == 0 { (0, 1) } else { (total.1 - total.0, total.1) };
        entries.push((places.pop().expect("count places"), last.0, last.1));
        BrauerClass::new(&entries).expect("balanced by construction")
    }
}

fn p_part(mut n: u64, p: u64) -> u64 {
    let mut pk = 1;
    while n % p == 0 {
        n /= p;
        pk *= p;
    }
    pk
}

/// Inverse of `a` modulo `m >= 1`, for `gcd(a, m) = 1`.
fn mod_inverse(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let e = (a as i128).extended_gcd(&(m as i128));
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(m as i128) as u64
}

/// Every integer combination of the given classes, by breadth-first closure.
pub fn subgroup_generated(classes: &[BrauerClass], bound: usize) -> BrauerResult<BTreeSet<BrauerClass>> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(BrauerClass::trivial());
    queue.push_back(BrauerClass::trivial());
    while let Some(c) = queue.pop_front() {
        for g in classes {
            let next = c.tensor(g);
            if seen.insert(next.clone()) {
                if seen.len() > bound {
                    return Err(BrauerError::SubgroupTooLarge(bound));
                }
                queue.push_back(next);
            }
        }
    }
    Ok(seen)
}

/// Smallest `a in [1, v]`, `c in [1, u]` with `a*u + c*v = 1 mod n`.
pub fn crt_coefficients(u: u64, v: u64, n: u64) -> BrauerResult<(u64, u64)> {
    if u < 2 || v < 2 || u.checked_mul(v) != Some(n) {
        return Err(BrauerError::BadFactorization { u, v, n });
    }
    if u.gcd(&v) != 1 {
        return Err(BrauerError::NotCoprime(u, v));
    }
    // Reducing mod v and mod u separates the congruence into a*u = 1 (mod v)
    // and c*v = 1 (mod u).
    let a = mod_inverse(u % v, v);
    let c = mod_inverse(v % u, u);
    debug_assert!(a >= 1 && c >= 1);
    debug_assert_eq!((a * u + c * v) % n, 1 % n);
    debug_assert!(a.gcd(&v) == 1 && c.gcd(&u) == 1);
    Ok((a, c))
}

/// A Severi-Brauer variety, recorded by its class and dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "SbJson", into = "SbJson")]
pub struct SbVariety {
    cls: BrauerClass,
    dim: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SbJson {
    class: BrauerClass,
    dim: u64,
}

impl TryFrom<SbJson> for SbVariety {
    type Error = BrauerError;

    fn try_from(j: SbJson) -> BrauerResult<Self> {
        SbVariety::new(j.class, j.dim)
    }
}

impl From<SbVariety> for SbJson {
    fn from(s: SbVariety) -> Self {
        SbJson { class: s.cls, dim: s.dim }
    }
}

impl fmt::Display for SbVariety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cls.is_trivial() {
            write!(f, "P^{}", self.dim)
        } else {
            write!(f, "SB({}, dim {})", self.cls, self.dim)
        }
    }
}

impl SbVariety {
    pub fn new(cls: BrauerClass, dim: u64) -> BrauerResult<Self> {
        let index = cls.index();
        if (dim + 1) % index != 0 {
            return Err(BrauerError::IndexDoesNotDivide { index, dim });
        }
        Ok(SbVariety { cls, dim })
    }

    /// Projective space `P^dim`.
    pub fn projective(dim: u64) -> Self {
        SbVariety { cls: BrauerClass::trivial(), dim }
    }

    /// The minimal variety in the class of `cls`.
    pub fn minimal(cls: BrauerClass) -> Self {
        let dim = cls.min_dimension();
        SbVariety { cls, dim }
    }

    pub fn class(&self) -> &BrauerClass {
        &self.cls
    }

    pub fn dim(&self) -> u64 {
        self.dim
    }

    pub fn index(&self) -> u64 {
        self.cls.index()
    }

    pub fn is_minimal(&self) -> bool {
        self.index() == self.dim + 1
    }

    pub fn is_projective(&self) -> bool {
        self.cls.is_trivial()
    }
}
