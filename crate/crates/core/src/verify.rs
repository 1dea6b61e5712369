//! Seeded property suites shared by the `sb verify` command and the
//! acceptance tests.
//!
//! All sampling goes through `ChaCha8Rng::seed_from_u64(seed)`, and reports
//! only contain ordered maps, so a given configuration always produces the
//! same report bytes.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::brauer::{subgroup_generated, BrauerClass, SUBGROUP_BOUND};
use crate::field::{FieldContext, FieldError};
use crate::geom::{
    meet, restrict_to, restricted_form_space, segre, span_points, substitute_linear, transversal, Form, LinSubspace,
    ProjPoint,
};
use crate::linalg::{self, Row};
use crate::weil::{
    prime_power, prop14_forward, prop14_inverse, rational_points, thm2_forward, thm2_forward_traced, thm2_inverse, ConjugateTuple,
    Thm2Config, WeilError,
};

/// How many individual check failures a report lists verbatim.
const MAX_LISTED: usize = 20;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("invalid configuration: {0}")]
    Config(String),
}

impl From<FieldError> for VerifyError {
    fn from(e: FieldError) -> Self {
        VerifyError::Config(e.to_string())
    }
}

impl From<WeilError> for VerifyError {
    fn from(e: WeilError) -> Self {
        VerifyError::Config(e.to_string())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: &'static str,
    pub params: BTreeMap<&'static str, Value>,
    pub trials: usize,
    /// Trials on which every applicable check held (gate failures included).
    pub passed: usize,
    pub gate_failures: BTreeMap<String, usize>,
    pub check_failures: Vec<String>,
    pub metrics: BTreeMap<&'static str, Value>,
    pub ok: bool,
}

impl Report {
    fn new(suite: &'static str, trials: usize) -> Self {
        Report {
            suite,
            params: BTreeMap::new(),
            trials,
            passed: 0,
            gate_failures: BTreeMap::new(),
            check_failures: Vec::new(),
            metrics: BTreeMap::new(),
            ok: true,
        }
    }

    fn param(mut self, key: &'static str, v: impl Into<Value>) -> Self {
        self.params.insert(key, v.into());
        self
    }

    fn fail(&mut self, msg: String) {
        self.ok = false;
        if self.check_failures.len() < MAX_LISTED {
            self.check_failures.push(msg);
        }
    }

    fn gate(&mut self, name: String) {
        *self.gate_failures.entry(name).or_insert(0) += 1;
    }

    pub fn gate_failure_count(&self) -> usize {
        self.gate_failures.values().sum()
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn field_for(q: u64, extension: u32) -> Result<(FieldContext, u32), VerifyError> {
    let (p, e) = prime_power(q).ok_or_else(|| VerifyError::Config(format!("{q} is not a prime power")))?;
    Ok((FieldContext::new(p, e * extension)?, e))
}

/// Uniform point of `P^dim` over the subfield `F_{p^e}`.
pub fn random_point<R: Rng + ?Sized>(ctx: &FieldContext, e: u32, dim: usize, rng: &mut R) -> ProjPoint {
    loop {
        let coords = (0..=dim).map(|_| ctx.random_in_subfield(rng, e).expect("valid subfield")).collect();
        if let Ok(p) = ProjPoint::new(ctx, coords) {
            return p;
        }
    }
}

fn random_subspace<R: Rng + ?Sized>(ctx: &FieldContext, e: u32, ambient: usize, dim: usize, rng: &mut R) -> LinSubspace {
    loop {
        let rows = (0..=dim)
            .map(|_| (0..=ambient).map(|_| ctx.random_in_subfield(rng, e).expect("valid subfield")).collect())
            .collect();
        if let Ok(Some(l)) = LinSubspace::from_rows(ctx, ambient, rows) {
            if l.dim() == dim {
                return l;
            }
        }
    }
}

/// Transversal lines in `P^N(F_q)`, `N` odd: two disjoint `(N-1)/2`-planes and
/// a general point, checked against enumeration of every line through the point.
pub fn verify_span(q: u64, big_n: usize, trials: usize, seed: u64) -> Result<Report, VerifyError> {
    if big_n % 2 == 0 || big_n < 1 {
        return Err(VerifyError::Config(format!("N = {big_n} must be odd")));
    }
    let (ctx, e) = field_for(q, 1)?;
    if (q as f64).powi(big_n as i32) > 1e6 {
        return Err(VerifyError::Config("q^N exceeds the enumeration bound 10^6".into()));
    }
    let half = (big_n - 1) / 2;
    let all_points: Vec<ProjPoint> = rational_points(&ctx, e, big_n).collect();
    let mut report = Report::new("span", trials).param("q", q).param("N", big_n).param("seed", seed);
    let mut rng = rng(seed);
    let mut unique = 0;
    for t in 0..trials {
        let (l0, l1) = loop {
            let l0 = random_subspace(&ctx, e, big_n, half, &mut rng);
            let l1 = random_subspace(&ctx, e, big_n, half, &mut rng);
            if meet(&l0, &l1).expect("same ambient").is_none() {
                break (l0, l1);
            }
        };
        let p = loop {
            let p = random_point(&ctx, e, big_n, &mut rng);
            if !l0.contains(&p) && !l1.contains(&p) {
                break p;
            }
        };
        let subspaces = [l0.clone(), l1.clone()];
        let m = match transversal(&p, &subspaces) {
            Ok(m) => m,
            Err(err) => {
                report.fail(format!("trial {t}: transversal failed: {err}"));
                continue;
            }
        };
        let mut found = BTreeSet::new();
        for y in all_points.iter().filter(|y| **y != p) {
            let line = span_points(&[p.clone(), y.clone()]).expect("distinct points");
            if meet(&line, &l0).expect("same ambient").is_some() && meet(&line, &l1).expect("same ambient").is_some() {
                found.insert(format!("{line:?}"));
            }
        }
        if found.len() == 1 {
            unique += 1;
        }
        if found.len() == 1 && found.contains(&format!("{m:?}")) {
            report.passed += 1;
        } else {
            report.fail(format!("trial {t}: enumeration found {} lines, algorithm gave {m:?}", found.len()));
        }
    }
    report.metrics.insert("unique_oracle_lines", json!(unique));
    Ok(report)
}

/// Maximum gate-failure rate accepted for the Prop14 chart.
pub fn prop14_rate_bound(q: u64) -> f64 {
    if q == 2 {
        0.30
    } else {
        0.15
    }
}

/// Roundtrips of the chart `Re(P^n) ~ P^n x A^{mn}` for `|K:k| = m + 1` on
/// uniformly sampled points of `P^n(F_{q^{m+1}})`.
pub fn verify_prop14(q: u64, n: usize, m: usize, trials: usize, seed: u64) -> Result<Report, VerifyError> {
    if m == 0 || m >= n {
        return Err(VerifyError::Config(format!("need 1 <= m < n, got n = {n}, m = {m}")));
    }
    let d = m as u32 + 1;
    let (ctx, e) = field_for(q, d)?;
    let mut report =
        Report::new("prop14", trials).param("q", q).param("n", n).param("m", m).param("seed", seed);
    let mut rng = rng(seed);
    for t in 0..trials {
        let p0 = random_point(&ctx, e * d, n, &mut rng);
        let tuple = ConjugateTuple::new(e, d, p0).expect("sampled over the extension");
        match prop14_forward(&tuple) {
            Ok(img) => {
                let back = prop14_inverse(&img.x, &img.a, d, e);
                let forward_again = back.as_ref().ok().map(prop14_forward);
                match (back, forward_again) {
                    (Ok(back), Some(Ok(again))) if back == tuple && again == img && img.a.len() == m * n => {
                        report.passed += 1
                    }
                    (back, again) => report.fail(format!("trial {t}: roundtrip mismatch: {back:?} / {again:?}")),
                }
            }
            Err(err) => match err.gate() {
                Some(g) => {
                    report.gate(g.name().to_string());
                    report.passed += 1;
                }
                None => report.fail(format!("trial {t}: unnamed failure: {err}")),
            },
        }
    }
    let rate = report.gate_failure_count() as f64 / trials.max(1) as f64;
    let bound = prop14_rate_bound(q);
    report.metrics.insert("gate_failure_rate", json!(rate));
    report.metrics.insert("gate_failure_rate_bound", json!(bound));
    if rate > bound {
        report.fail(format!("gate-failure rate {rate:.3} exceeds {bound:.2}"));
    }
    Ok(report)
}

/// Roundtrips of `P^N ~ P^n x A^{nm} x P^m` on sampled rational points.
pub fn verify_thm2(q: u64, n: usize, m: usize, trials: usize, seed: u64) -> Result<Report, VerifyError> {
    let cfg = Thm2Config::new(q, n, m)?;
    let big_n = cfg.ambient_dim();
    let mut report = Report::new("thm2", trials).param("q", q).param("n", n).param("m", m).param("seed", seed);
    let mut rng = rng(seed);
    for t in 0..trials {
        let x = random_point(cfg.ctx(), cfg.base_e(), big_n, &mut rng);
        match thm2_forward(&x, &cfg) {
            Ok(img) => {
                let dims = img.x1.ambient_dim() + img.a.len() + img.x2.ambient_dim();
                match thm2_inverse(&img, &cfg) {
                    Ok(back) if back == x && dims == big_n => report.passed += 1,
                    other => report.fail(format!("trial {t}: roundtrip mismatch for {x:?}: {other:?}, dims {dims}")),
                }
            }
            Err(err) => match err.source.gate() {
                Some(g) => {
                    report.gate(format!("{}:{}", err.stage, g.name()));
                    report.passed += 1;
                }
                None => report.fail(format!("trial {t}: unnamed failure: {err}")),
            },
        }
    }
    report.metrics.insert("roundtrips", json!(trials - report.gate_failure_count()));
    Ok(report)
}

/// Intermediate objects for the first gate-passing sample of [`verify_thm2`]
/// with the same seed.
pub fn thm2_sample_trace(q: u64, n: usize, m: usize, trials: usize, seed: u64) -> Result<Option<Value>, VerifyError> {
    let cfg = Thm2Config::new(q, n, m)?;
    let mut rng = rng(seed);
    for _ in 0..trials {
        let x = random_point(cfg.ctx(), cfg.base_e(), cfg.ambient_dim(), &mut rng);
        if let Ok(trace) = thm2_forward_traced(&x, &cfg) {
            return Ok(Some(json!({ "x": crate::io::point_out(&x), "trace": crate::io::thm2_trace_out(&trace) })));
        }
    }
    Ok(None)
}

/// Number of points of `P^N(F_q)` rejected by the product map, and the total.
pub fn thm2_gate_density(cfg: &Thm2Config) -> (usize, usize) {
    let mut failed = 0;
    let mut total = 0;
    for x in cfg.rational_points() {
        total += 1;
        if thm2_forward(&x, cfg).is_err() {
            failed += 1;
        }
    }
    (failed, total)
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// The norm form of `F_{q^d}/F_q` in the basis `1, theta, ..., theta^{d-1}`;
/// it has no nontrivial zero over `F_q`.
pub fn norm_form(ctx: &FieldContext, e: u32, d: u32) -> Result<Form, WeilError> {
    let basis = crate::weil::ExtensionBasis::new(ctx, e, d)?;
    let powers: Vec<_> = (0..d).map(|j| ctx.pow(basis.theta(), j as u64)).collect();
    let mut f = Form::one(ctx, d as usize);
    for k in 0..d {
        let conj = powers.iter().map(|&w| ctx.frobenius(w, e * k)).collect();
        f = f.mul(ctx, &Form::linear(conj));
    }
    Ok(f)
}

fn is_multiple(ctx: &FieldContext, f: &Form, s: &Form) -> bool {
    linalg::rank(ctx, &[f.coeffs.clone(), s.coeffs.clone()]) <= 1
}

/// The Segre configuration `L_i = segre({e_i} x P^m)` with prescribed degree-`r`
/// forms `s_i`, and the rank of the space `W_r` on horizontal slices.
pub fn verify_lemma17(q: u64, n: usize, m: usize, r: u32, trials: usize, seed: u64) -> Result<Report, VerifyError> {
    if r == 0 || n == 0 || m == 0 {
        return Err(VerifyError::Config("need n, m, r >= 1".into()));
    }
    let d = m as u32 + 1;
    let (ctx, e) = field_for(q, d)?;
    let big_n = (n + 1) * (m + 1) - 1;
    // With r = m + 1 the norm form keeps every rational slice out of the
    // base locus; otherwise u_0^r is used and slices through its zeros are gated.
    let s = if r == d {
        norm_form(&ctx, e, d)?
    } else {
        let mut exps = vec![0; m + 1];
        exps[0] = r;
        Form::monomial(&ctx, &exps)
    };
    let mut constraints = Vec::new();
    for i in 0..=n {
        let rows: Vec<Row> = (0..=m)
            .map(|j| (0..=big_n).map(|c| if c == i * (m + 1) + j { ctx.one() } else { ctx.zero() }).collect())
            .collect();
        let l = LinSubspace::from_nonzero_rows(&ctx, big_n, rows).expect("coordinate plane");
        constraints.push((l, s.clone()));
    }
    let w = restricted_form_space(&ctx, big_n, r, &constraints).map_err(|e| VerifyError::Config(e.to_string()))?;
    let expected_dim = binomial(big_n + r as usize, r as usize) - (n + 1) * (binomial(m + r as usize, r as usize) - 1);
    let target_rank = binomial(n + r as usize, r as usize);
    let mut report = Report::new("lemma17", trials)
        .param("q", q)
        .param("n", n)
        .param("m", m)
        .param("r", r)
        .param("seed", seed);
    report.metrics.insert("dim_w", json!(w.dim()));
    report.metrics.insert("expected_dim_w", json!(expected_dim));
    report.metrics.insert("target_rank", json!(target_rank));
    if w.dim() != expected_dim {
        report.fail(format!("dim W = {}, expected {expected_dim}", w.dim()));
    }
    let forms = w.forms();
    for (i, (l, s)) in constraints.iter().enumerate() {
        if let Some(k) = forms.iter().position(|f| !is_multiple(&ctx, &restrict_to(&ctx, f, l), s)) {
            report.fail(format!("basis form {k} restricted to L_{i} is not a multiple of s_{i}"));
        }
    }
    let mut rng = rng(seed);
    let mut ranks = Vec::new();
    for t in 0..trials {
        let qpt = random_point(&ctx, e, m, &mut rng);
        if r != d && qpt.coords()[0].is_zero() {
            report.gate("BaseLocus".to_string());
            report.passed += 1;
            continue;
        }
        // segre(x, q) has coordinates x_i q_j: linear in x.
        let zero = ctx.zero();
        let images: Vec<Form> = (0..=n)
            .flat_map(|i| {
                qpt.coords().iter().map(move |&qj| {
                    let mut c = vec![zero; n + 1];
                    c[i] = qj;
                    Form::linear(c)
                })
            })
            .collect();
        let slice: Vec<Row> = forms.iter().map(|f| substitute_linear(&ctx, f, &images, n + 1).coeffs).collect();
        let rank = linalg::rank(&ctx, &slice);
        ranks.push(rank);
        if rank == target_rank {
            report.passed += 1;
        } else {
            report.fail(format!("trial {t}: slice at {qpt:?} has rank {rank}, expected {target_rank}"));
        }
    }
    // A sample point through the map, for the report.
    let x = random_point(&ctx, e, n, &mut rng);
    let qpt = random_point(&ctx, e, m, &mut rng);
    let image = segre(&x, &qpt).ok().and_then(|z| crate::geom::apply_forms(&w, &z).ok());
    report.metrics.insert("sample_image_defined", json!(image.is_some()));
    report.metrics.insert("min_rank", json!(ranks.iter().min()));
    Ok(report)
}

fn order_oracle(a: &BrauerClass) -> u64 {
    let mut acc = a.clone();
    let mut k = 1;
    while !acc.is_trivial() {
        acc = acc.tensor(a);
        k += 1;
    }
    k
}

fn reciprocity_holds(c: &BrauerClass) -> bool {
    let entries: Vec<_> = c.invariants().collect();
    BrauerClass::new(&entries).as_ref() == Ok(c)
}

fn is_prime_power(n: u64) -> bool {
    crate::field::prime_factors(n).len() == 1
}

/// Group laws, period oracle, primary decomposition and the subgroup
/// membership consequence of `(m+1) beta = 0`, on random classes.
pub fn verify_brauer_laws(trials: usize, seed: u64, max_period: u64) -> Result<Report, VerifyError> {
    if max_period == 0 {
        return Err(VerifyError::Config("max period must be positive".into()));
    }
    let mut report = Report::new("brauer-laws", trials).param("seed", seed).param("max_period", max_period);
    let mut rng = rng(seed);
    let mut law_failures: BTreeMap<&'static str, usize> = BTreeMap::new();
    for t in 0..trials {
        let a = BrauerClass::random(&mut rng, max_period);
        let b = BrauerClass::random(&mut rng, max_period);
        let c = BrauerClass::random(&mut rng, max_period);
        let k: i64 = rng.gen_range(-100..100);
        let mut bad: Vec<&'static str> = Vec::new();
        let mut check = |name: &'static str, cond: bool| {
            if !cond {
                bad.push(name);
            }
        };
        check("associativity", a.tensor(&b).tensor(&c) == a.tensor(&b.tensor(&c)));
        check("commutativity", a.tensor(&b) == b.tensor(&a));
        check("identity", a.tensor(&BrauerClass::trivial()) == a);
        check("inverse", a.tensor(&a.inverse()).is_trivial());
        check(
            "reciprocity",
            [a.tensor(&b), a.inverse(), a.power(k)].iter().all(reciprocity_holds),
        );
        check("power", a.power(k) == a.power(k.rem_euclid(a.period() as i64)));
        check("period-oracle", a.period() == order_oracle(&a));
        let parts = a.primary_decompose();
        let recombined = parts.iter().fold(BrauerClass::trivial(), |acc, x| acc.tensor(x));
        let periods: Vec<u64> = parts.iter().map(BrauerClass::period).collect();
        check("primary-recombine", recombined == a);
        check("primary-prime-powers", periods.iter().all(|&p| is_prime_power(p)));
        check(
            "primary-coprime",
            periods.iter().enumerate().all(|(i, x)| periods[i + 1..].iter().all(|y| x.gcd(y) == 1)),
        );
        check("primary-product", periods.iter().product::<u64>() == a.period());
        check("primary-membership", parts.iter().all(|x| x.in_subgroup(&a)));
        let j: i64 = rng.gen_range(0..a.period() as i64);
        let multiple = a.power(j);
        check(
            "same-subgroup-period",
            !a.same_subgroup(&multiple) || a.period() == multiple.period(),
        );
        check("same-subgroup-gcd", a.same_subgroup(&multiple) == ((j as u64).gcd(&a.period()) == 1));
        // (m+1) beta = 0 whenever index(beta) divides m+1.
        let m1 = b.index() * rng.gen_range(1..4);
        check("membership", a.power(m1 as i64).in_subgroup(&a.tensor(&b)));
        if bad.is_empty() {
            report.passed += 1;
        } else {
            for name in &bad {
                *law_failures.entry(name).or_insert(0) += 1;
            }
            report.fail(format!("trial {t}: {} on a = {a}, b = {b}", bad.join(", ")));
        }
    }
    report.metrics.insert("law_failures", json!(law_failures));
    Ok(report)
}

/// Sizes of generated subgroups must match the lcm structure for cyclic groups.
pub fn subgroup_size(classes: &[BrauerClass]) -> Option<usize> {
    subgroup_generated(classes, SUBGROUP_BOUND).ok().map(|s| s.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_suite_small() {
        let r = verify_span(5, 3, 5, 1).unwrap();
        assert!(r.ok, "{r:?}");
        assert_eq!(r.passed, 5);
        assert!(verify_span(5, 2, 5, 1).is_err());
    }

    #[test]
    fn prop14_suite_runs() {
        let r = verify_prop14(3, 3, 1, 50, 1).unwrap();
        assert!(r.check_failures.iter().all(|f| f.contains("gate-failure rate")), "{r:?}");
        assert_eq!(r.passed, 50);
        assert!(verify_prop14(3, 2, 2, 10, 1).is_err());
    }

    #[test]
    fn thm2_suite_runs() {
        let r = verify_thm2(3, 2, 1, 30, 7).unwrap();
        assert!(r.ok, "{r:?}");
    }

    #[test]
    fn norm_form_is_anisotropic() {
        let ctx = FieldContext::new(7, 2).unwrap();
        let f = norm_form(&ctx, 1, 2).unwrap();
        let base = ctx.subfield_elements(1).unwrap();
        assert!(f.coeffs.iter().all(|&c| ctx.in_subfield(c, 1).unwrap()));
        for &a in &base {
            for &b in &base {
                let v = f.evaluate(&ctx, &[a, b]);
                assert_eq!(v.is_zero(), a.is_zero() && b.is_zero());
            }
        }
    }

    #[test]
    fn lemma17_suite() {
        let r = verify_lemma17(7, 1, 1, 2, 20, 3).unwrap();
        assert!(r.ok, "{r:?}");
        assert_eq!(r.metrics["dim_w"], json!(6));
        let r = verify_lemma17(5, 2, 1, 2, 10, 3).unwrap();
        assert!(r.ok, "{r:?}");
    }

    #[test]
    fn brauer_suite_is_deterministic() {
        let a = serde_json::to_string(&verify_brauer_laws(50, 9, 60).unwrap()).unwrap();
        let b = serde_json::to_string(&verify_brauer_laws(50, 9, 60).unwrap()).unwrap();
        assert_eq!(a, b);
        assert!(a.contains(r#""ok":true"#));
    }
}
