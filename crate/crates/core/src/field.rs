//! Finite fields `F_{p^D}` with a deterministic defining polynomial.
//!
//! Every computation in this crate happens inside one ambient field. Smaller
//! fields such as `F_q` with `q = p^e` are the fixed sets of `x -> x^{p^e}`,
//! so no embeddings between separately constructed fields are ever needed.
//!
//! Elements are stored as packed base-`p` digit strings: coefficient `c_i` of
//! `t^i` contributes `c_i * p^i`. The packing is canonical, so element
//! equality is coefficient-wise equality.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default bound on the extension degree `D`.
pub const DEFAULT_MAX_DEGREE: u32 = 12;
/// Default bound on the field order `p^D`. `SB_MAX_FIELD` overrides it.
pub const DEFAULT_MAX_ORDER: u64 = 1 << 24;
/// Environment variable overriding [`DEFAULT_MAX_ORDER`].
pub const MAX_FIELD_ENV: &str = "SB_MAX_FIELD";

const MAX_DEGREE_CAP: usize = 32;
const TABLE_LIMIT: u64 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree {degree} outside 1..={max}")]
    DegreeTooLarge { degree: u32, max: u32 },
    #[error("field of order {p}^{degree} exceeds the size bound {max}")]
    FieldTooLarge { p: u64, degree: u32, max: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different fields")]
    ContextMismatch,
    #[error("{e} does not divide the extension degree {degree}")]
    BadSubfieldDegree { e: u32, degree: u32 },
    #[error("coefficient {value} is not reduced modulo {p}")]
    BadCoefficient { value: u64, p: u64 },
    #[error("expected {expected} coefficients, got {got}")]
    BadLength { expected: usize, got: usize },
}

/// Size bounds applied when constructing a [`FieldContext`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldLimits {
    pub max_degree: u32,
    pub max_order: u64,
}

impl Default for FieldLimits {
    fn default() -> Self {
        FieldLimits { max_degree: DEFAULT_MAX_DEGREE, max_order: DEFAULT_MAX_ORDER }
    }
}

impl FieldLimits {
    /// Defaults, with the order bound taken from `SB_MAX_FIELD` when it parses.
    pub fn from_env() -> Self {
        let mut limits = FieldLimits::default();
        if let Some(v) = std::env::var(MAX_FIELD_ENV).ok().and_then(|s| s.trim().parse().ok()) {
            limits.max_order = v;
        }
        limits
    }
}

/// An element of `F_{p^D}`, packed as base-`p` digits (lowest degree least significant).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// The packed representation, in `[0, p^D)`.
    pub fn raw(self) -> u64 {
        self.0
    }
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct Inner {
    p: u64,
    degree: u32,
    order: u64,
    /// Monic modulus, lowest degree first, length `degree + 1`.
    modulus: Vec<u64>,
    powers: Vec<u64>,
    tables: Option<Tables>,
}

/// The field `F_{p^D} = F_p[t]/(f)` with `f` the lexicographically smallest
/// monic irreducible of degree `D`.
#[derive(Clone)]
pub struct FieldContext(Arc<Inner>);

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.degree == other.0.degree)
    }
}

impl Eq for FieldContext {}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {}", self.0.p, self.0.degree, poly_to_string(&self.0.modulus))
    }
}

/// Serialized form of a context: `{p, D, modulus}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextRecord {
    pub p: u64,
    #[serde(rename = "D")]
    pub degree: u32,
    pub modulus: Vec<u64>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FieldContext {
    /// Builds `F_{p^D}` under the limits from the environment.
    pub fn new(p: u64, degree: u32) -> Result<Self, FieldError> {
        Self::with_limits(p, degree, FieldLimits::from_env())
    }

    pub fn with_limits(p: u64, degree: u32, limits: FieldLimits) -> Result<Self, FieldError> {
        if !is_prime(p) || p >= 1 << 31 {
            return Err(FieldError::NotPrime(p));
        }
        let max_degree = limits.max_degree.min(MAX_DEGREE_CAP as u32);
        if degree == 0 || degree > max_degree {
            return Err(FieldError::DegreeTooLarge { degree, max: max_degree });
        }
        let too_large = FieldError::FieldTooLarge { p, degree, max: limits.max_order };
        let order = p.checked_pow(degree).filter(|&o| o < 1 << 62).ok_or(too_large.clone())?;
        if order > limits.max_order {
            return Err(too_large);
        }
        let powers: Vec<u64> = (0..degree).map(|i| p.pow(i)).collect();
        let modulus = smallest_irreducible(p, degree as usize);
        let mut inner = Inner { p, degree, order, modulus, powers, tables: None };
        if order <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        Ok(FieldContext(Arc::new(inner)))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    pub fn order(&self) -> u64 {
        self.0.order
    }

    /// Order of the subfield `F_{p^e}`.
    pub fn subfield_order(&self, e: u32) -> u64 {
        self.0.p.pow(e)
    }

    /// Modulus coefficients, lowest degree first, including the leading 1.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn record(&self) -> ContextRecord {
        ContextRecord { p: self.p(), degree: self.degree(), modulus: self.0.modulus.clone() }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// The class of `t` (the generator of the polynomial basis).
    pub fn t(&self) -> FieldElement {
        if self.0.degree == 1 {
            // t reduces to -f(0) in the prime field.
            FieldElement((self.0.p - self.0.modulus[0]) % self.0.p)
        } else {
            FieldElement(self.0.p)
        }
    }

    /// The prime-field element `c mod p`.
    pub fn from_int(&self, c: i64) -> FieldElement {
        FieldElement(c.rem_euclid(self.0.p as i64) as u64)
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement, FieldError> {
        let d = self.0.degree as usize;
        if coeffs.len() != d {
            return Err(FieldError::BadLength { expected: d, got: coeffs.len() });
        }
        let mut packed = 0u64;
        for (i, &c) in coeffs.iter().enumerate() {
            if c >= self.0.p {
                return Err(FieldError::BadCoefficient { value: c, p: self.0.p });
            }
            packed += c * self.0.powers[i];
        }
        Ok(FieldElement(packed))
    }

    /// Coefficients of `x`, lowest degree first, exactly `D` entries.
    pub fn coeffs(&self, x: FieldElement) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.0.degree as usize);
        let mut v = x.0;
        for _ in 0..self.0.degree {
            out.push(v % self.0.p);
            v /= self.0.p;
        }
        out
    }

    /// Checks that a raw packed value names an element of this field.
    pub fn element(&self, raw: u64) -> Result<FieldElement, FieldError> {
        if raw < self.0.order {
            Ok(FieldElement(raw))
        } else {
            Err(FieldError::ContextMismatch)
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.0.order).map(FieldElement)
    }

    fn digits(&self, x: FieldElement) -> ([u64; MAX_DEGREE_CAP], usize) {
        let mut out = [0u64; MAX_DEGREE_CAP];
        let d = self.0.degree as usize;
        let mut v = x.0;
        for slot in out.iter_mut().take(d) {
            *slot = v % self.0.p;
            v /= self.0.p;
        }
        (out, d)
    }

    fn pack(&self, digits: &[u64]) -> FieldElement {
        let mut packed = 0u64;
        for (i, &c) in digits.iter().enumerate().take(self.0.degree as usize) {
            packed += c * self.0.powers[i];
        }
        FieldElement(packed)
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        let p = self.0.p;
        if p == 2 {
            return FieldElement(x.0 ^ y.0);
        }
        if self.0.degree == 1 {
            return FieldElement((x.0 + y.0) % p);
        }
        let (mut a, d) = self.digits(x);
        let (b, _) = self.digits(y);
        for i in 0..d {
            a[i] = (a[i] + b[i]) % p;
        }
        self.pack(&a[..d])
    }

    pub fn neg(&self, x: FieldElement) -> FieldElement {
        let p = self.0.p;
        if p == 2 {
            return x;
        }
        let (mut a, d) = self.digits(x);
        for c in a.iter_mut().take(d) {
            *c = (p - *c) % p;
        }
        self.pack(&a[..d])
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if x.0 == 0 || y.0 == 0 {
            return FieldElement(0);
        }
        if let Some(t) = &self.0.tables {
            let n = self.0.order - 1;
            let e = (t.log[x.0 as usize] as u64 + t.log[y.0 as usize] as u64) % n;
            return FieldElement(t.exp[e as usize] as u64);
        }
        self.mul_poly(x, y)
    }

    fn mul_poly(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        let p = self.0.p;
        let (a, d) = self.digits(x);
        let (b, _) = self.digits(y);
        let mut prod = [0u64; 2 * MAX_DEGREE_CAP];
        for i in 0..d {
            if a[i] == 0 {
                continue;
            }
            for j in 0..d {
                prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
            }
        }
        let m = &self.0.modulus;
        for k in (d..2 * d - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for j in 0..d {
                prod[k - d + j] = (prod[k - d + j] + (p - c) * m[j]) % p;
            }
        }
        self.pack(&prod[..d])
    }

    pub fn pow(&self, x: FieldElement, mut k: u64) -> FieldElement {
        if x.0 == 0 {
            return if k == 0 { self.one() } else { x };
        }
        if let Some(t) = &self.0.tables {
            let n = self.0.order - 1;
            let e = (t.log[x.0 as usize] as u128 * (k % n) as u128 % n as u128) as usize;
            return FieldElement(t.exp[e] as u64);
        }
        let mut base = x;
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_poly(acc, base);
            }
            base = self.mul_poly(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement, FieldError> {
        if x.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        if let Some(t) = &self.0.tables {
            let n = self.0.order - 1;
            let e = (n - t.log[x.0 as usize] as u64) % n;
            return Ok(FieldElement(t.exp[e as usize] as u64));
        }
        Ok(self.pow(x, self.0.order - 2))
    }

    pub fn div(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// `x^{p^e}`, the `e`-th power of the absolute Frobenius.
    pub fn frobenius(&self, x: FieldElement, e: u32) -> FieldElement {
        let e = e % self.0.degree;
        if e == 0 || x.0 == 0 {
            return x;
        }
        if let Some(t) = &self.0.tables {
            let n = self.0.order - 1;
            let mut k = 1u64;
            for _ in 0..e {
                k = k * self.0.p % n;
            }
            let idx = t.log[x.0 as usize] as u64 * k % n;
            return FieldElement(t.exp[idx as usize] as u64);
        }
        let mut y = x;
        for _ in 0..e {
            y = self.pow(y, self.0.p);
        }
        y
    }

    /// True iff `x` lies in the subfield `F_{p^e}`.
    pub fn in_subfield(&self, x: FieldElement, e: u32) -> Result<bool, FieldError> {
        self.check_subfield(e)?;
        Ok(self.frobenius(x, e) == x)
    }

    pub fn check_subfield(&self, e: u32) -> Result<(), FieldError> {
        if e == 0 || self.0.degree % e != 0 {
            return Err(FieldError::BadSubfieldDegree { e, degree: self.0.degree });
        }
        Ok(())
    }

    /// All elements of `F_{p^e}`, in packed order.
    pub fn subfield_elements(&self, e: u32) -> Result<Vec<FieldElement>, FieldError> {
        self.check_subfield(e)?;
        Ok(self.elements().filter(|&x| self.frobenius(x, e) == x).collect())
    }

    /// Trace from the ambient field down to `F_{p^e}`.
    pub fn trace(&self, x: FieldElement, e: u32) -> Result<FieldElement, FieldError> {
        self.check_subfield(e)?;
        let mut acc = self.zero();
        let mut y = x;
        for _ in 0..self.0.degree / e {
            acc = self.add(acc, y);
            y = self.frobenius(y, e);
        }
        Ok(acc)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.gen_range(0..self.0.order))
    }

    /// Uniform element of `F_{p^e}` (the trace is surjective with equal fibres).
    pub fn random_in_subfield<R: Rng + ?Sized>(&self, rng: &mut R, e: u32) -> Result<FieldElement, FieldError> {
        let x = self.random(rng);
        self.trace(x, e)
    }

    /// Renders `x` as a polynomial in `t`, e.g. `t+1`.
    pub fn format(&self, x: FieldElement) -> String {
        poly_to_string(&self.coeffs(x))
    }
}

fn poly_to_string(coeffs: &[u64]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let term = match (i, c) {
            (0, c) => c.to_string(),
            (1, 1) => "t".to_string(),
            (1, c) => format!("{c}t"),
            (i, 1) => format!("t^{i}"),
            (i, c) => format!("{c}t^{i}"),
        };
        terms.push(term);
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

fn build_tables(inner: &Inner) -> Tables {
    let ctx = FieldContext(Arc::new(Inner {
        p: inner.p,
        degree: inner.degree,
        order: inner.order,
        modulus: inner.modulus.clone(),
        powers: inner.powers.clone(),
        tables: None,
    }));
    let n = inner.order - 1;
    let factors = prime_factors(n);
    let generator = (1..inner.order)
        .map(FieldElement)
        .find(|&g| factors.iter().all(|&r| ctx.pow(g, n / r) != ctx.one()))
        .expect("multiplicative group of a finite field is cyclic");
    let mut exp = vec![0u32; n as usize];
    let mut log = vec![0u32; inner.order as usize];
    let mut acc = ctx.one();
    for (i, slot) in exp.iter_mut().enumerate() {
        *slot = acc.0 as u32;
        log[acc.0 as usize] = i as u32;
        acc = ctx.mul_poly(acc, generator);
    }
    Tables { exp, log }
}

// Dense polynomials over F_p, lowest degree first, used only to find and
// certify the modulus.

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut k = p - 2;
    while k > 0 {
        if k & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        k >>= 1;
    }
    r
}

fn poly_rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let f = trim(f.to_vec());
    let df = f.len() - 1;
    let lead_inv = inv_mod(f[df], p);
    while r.len() > df {
        let k = r.len() - 1;
        let c = r[k] * lead_inv % p;
        for j in 0..=df {
            r[k - df + j] = (r[k - df + j] + (p - c) * f[j] % p) % p;
        }
        r = trim(r);
    }
    r
}

fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&prod, f, p)
}

fn poly_powmod(a: &[u64], mut k: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut base = poly_rem(a, f, p);
    while k > 0 {
        if k & 1 == 1 {
            acc = poly_mulmod(&acc, &base, f, p);
        }
        base = poly_mulmod(&base, &base, f, p);
        k >>= 1;
    }
    acc
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// `x^{p^k} mod f`.
fn frobenius_power_of_x(k: usize, f: &[u64], p: u64) -> Vec<u64> {
    let mut h = poly_rem(&[0, 1], f, p);
    for _ in 0..k {
        h = poly_powmod(&h, p, f, p);
    }
    h
}

fn sub_x(h: &[u64], p: u64) -> Vec<u64> {
    let mut out = h.to_vec();
    if out.len() < 2 {
        out.resize(2, 0);
    }
    out[1] = (out[1] + p - 1) % p;
    trim(out)
}

/// Rabin's irreducibility test for a monic `f` of degree `d` over `F_p`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let d = f.len() - 1;
    if d == 1 {
        return true;
    }
    if !sub_x(&frobenius_power_of_x(d, f, p), p).is_empty() {
        return false;
    }
    prime_factors(d as u64).into_iter().all(|r| {
        let h = sub_x(&frobenius_power_of_x(d / r as usize, f, p), p);
        poly_gcd(f, &h, p).len() == 1
    })
}

/// Smallest monic irreducible of degree `d`, ordering tails as base-`p`
/// numbers with the highest coefficient most significant.
fn smallest_irreducible(p: u64, d: usize) -> Vec<u64> {
    let mut tail = 0u64;
    loop {
        let mut f = Vec::with_capacity(d + 1);
        let mut v = tail;
        for _ in 0..d {
            f.push(v % p);
            v /= p;
        }
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
        tail += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exhaustive trial division by every monic polynomial of degree <= d/2.
    fn irreducible_by_trial_division(f: &[u64], p: u64) -> bool {
        let d = f.len() - 1;
        for deg in 1..=d / 2 {
            for tail in 0..p.pow(deg as u32) {
                let mut g = Vec::new();
                let mut v = tail;
                for _ in 0..deg {
                    g.push(v % p);
                    v /= p;
                }
                g.push(1);
                if poly_rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// First irreducible found by enumerating every monic tail in order.
    fn first_irreducible_by_enumeration(p: u64, d: usize) -> Vec<u64> {
        for tail in 0..p.pow(d as u32) {
            let mut f = Vec::new();
            let mut v = tail;
            for _ in 0..d {
                f.push(v % p);
                v /= p;
            }
            f.push(1);
            if irreducible_by_trial_division(&f, p) {
                return f;
            }
        }
        unreachable!()
    }

    #[test]
    fn modulus_examples() {
        assert_eq!(FieldContext::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(FieldContext::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(FieldContext::new(5, 1).unwrap().modulus(), &[0, 1]);
    }

    #[test]
    fn modulus_matches_enumeration_oracle() {
        for (p, d) in [(2u64, 2usize), (2, 3), (2, 4), (2, 6), (3, 2), (3, 3), (5, 2), (5, 3), (7, 2), (2, 8), (3, 4)] {
            let ctx = FieldContext::new(p, d as u32).unwrap();
            assert_eq!(ctx.modulus(), first_irreducible_by_enumeration(p, d).as_slice(), "p={p} d={d}");
        }
    }

    #[test]
    fn rabin_agrees_with_trial_division() {
        for p in [2u64, 3] {
            for d in 1..=5usize {
                for tail in 0..p.pow(d as u32) {
                    let mut f = Vec::new();
                    let mut v = tail;
                    for _ in 0..d {
                        f.push(v % p);
                        v /= p;
                    }
                    f.push(1);
                    assert_eq!(is_irreducible(&f, p), irreducible_by_trial_division(&f, p), "{f:?}");
                }
            }
        }
    }

    #[test]
    fn construction_errors() {
        assert_eq!(FieldContext::new(4, 1).unwrap_err(), FieldError::NotPrime(4));
        assert!(matches!(FieldContext::new(2, 13), Err(FieldError::DegreeTooLarge { .. })));
        assert!(matches!(FieldContext::new(2, 0), Err(FieldError::DegreeTooLarge { .. })));
        let tight = FieldLimits { max_degree: 12, max_order: 100 };
        assert!(matches!(FieldContext::with_limits(11, 2, tight), Err(FieldError::FieldTooLarge { .. })));
    }

    #[test]
    fn deterministic_contexts() {
        let a = FieldContext::new(3, 4).unwrap();
        let b = FieldContext::new(3, 4).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.record(), b.record());
    }

    #[test]
    fn arithmetic_examples() {
        let f4 = FieldContext::new(2, 2).unwrap();
        let t = f4.t();
        let t1 = f4.add(t, f4.one());
        assert_eq!(f4.mul(t, t1), f4.one());
        assert_eq!(f4.coeffs(t1), vec![1, 1]);

        let f5 = FieldContext::new(5, 1).unwrap();
        assert_eq!(f5.add(f5.from_int(3), f5.from_int(4)), f5.from_int(2));
        assert_eq!(f5.inv(f5.zero()), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn table_and_polynomial_paths_agree() {
        let ctx = FieldContext::new(3, 5).unwrap();
        for x in ctx.elements().step_by(7) {
            for y in ctx.elements().step_by(11) {
                assert_eq!(ctx.mul(x, y), ctx.mul_poly(x, y));
            }
        }
    }

    #[test]
    fn large_field_without_tables() {
        // 3^11 > TABLE_LIMIT, so this exercises the schoolbook path.
        let ctx = FieldContext::new(3, 11).unwrap();
        assert!(ctx.0.tables.is_none());
        let x = ctx.from_coeffs(&[1, 2, 0, 1, 0, 0, 2, 0, 0, 1, 1]).unwrap();
        assert_eq!(ctx.mul(x, ctx.inv(x).unwrap()), ctx.one());
        assert_eq!(ctx.frobenius(x, 11), x);
        assert_eq!(ctx.frobenius(ctx.frobenius(x, 4), 7), x);
    }

    #[test]
    fn inverse_law_exhaustive() {
        let ctx = FieldContext::new(3, 3).unwrap();
        for x in ctx.elements().skip(1) {
            assert_eq!(ctx.mul(x, ctx.inv(x).unwrap()), ctx.one());
        }
    }

    #[test]
    fn frobenius_examples() {
        let f4 = FieldContext::new(2, 2).unwrap();
        let t = f4.t();
        assert_eq!(f4.frobenius(t, 1), f4.add(t, f4.one()));
        assert_eq!(f4.frobenius(t, 0), t);
        assert_eq!(f4.in_subfield(t, 1), Ok(false));
        assert_eq!(f4.in_subfield(f4.zero(), 1), Ok(true));
        assert_eq!(f4.in_subfield(f4.one(), 1), Ok(true));
        let f8 = FieldContext::new(2, 3).unwrap();
        assert_eq!(f8.frobenius(f8.one(), 1), f8.one());
        assert!(matches!(f8.in_subfield(t, 2), Err(FieldError::BadSubfieldDegree { .. })));
    }

    #[test]
    fn frobenius_order_divides_degree_exhaustive() {
        for (p, d) in [(2u64, 12u32), (3, 7), (5, 5), (7, 4), (2, 6), (3, 6)] {
            let ctx = FieldContext::new(p, d).unwrap();
            for x in ctx.elements() {
                assert_eq!(ctx.frobenius(x, d), x);
            }
        }
    }

    #[test]
    fn fixed_field_sizes_exhaustive() {
        for (p, d) in [(2u64, 12u32), (3, 6), (5, 4), (2, 6)] {
            let ctx = FieldContext::new(p, d).unwrap();
            for e in (1..=d).filter(|e| d % e == 0) {
                let fixed = ctx.elements().filter(|&x| ctx.frobenius(x, e) == x).count() as u64;
                assert_eq!(fixed, p.pow(e), "p={p} d={d} e={e}");
            }
        }
    }

    #[test]
    fn frobenius_is_a_ring_homomorphism() {
        let ctx = FieldContext::new(3, 4).unwrap();
        for x in ctx.elements().step_by(5) {
            for y in ctx.elements().step_by(13) {
                let s = ctx.frobenius(ctx.add(x, y), 1);
                assert_eq!(s, ctx.add(ctx.frobenius(x, 1), ctx.frobenius(y, 1)));
                let m = ctx.frobenius(ctx.mul(x, y), 1);
                assert_eq!(m, ctx.mul(ctx.frobenius(x, 1), ctx.frobenius(y, 1)));
            }
        }
    }

    #[test]
    fn coefficient_roundtrip_and_validation() {
        let ctx = FieldContext::new(5, 3).unwrap();
        let x = ctx.from_coeffs(&[4, 0, 3]).unwrap();
        assert_eq!(ctx.coeffs(x), vec![4, 0, 3]);
        assert!(matches!(ctx.from_coeffs(&[5, 0, 0]), Err(FieldError::BadCoefficient { .. })));
        assert!(matches!(ctx.from_coeffs(&[1, 0]), Err(FieldError::BadLength { .. })));
        assert_eq!(ctx.format(x), "3t^2+4");
    }

    #[test]
    fn subfield_sampling_stays_in_subfield() {
        use rand::SeedableRng;
        let ctx = FieldContext::new(3, 4).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let x = ctx.random_in_subfield(&mut rng, 2).unwrap();
            assert!(ctx.in_subfield(x, 2).unwrap());
        }
    }
}
