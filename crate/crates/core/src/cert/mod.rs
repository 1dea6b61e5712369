//! Birationality certificates: sequences of moves on formal products of
//! Severi-Brauer varieties, and an independent checker for them.
//!
//! Steps record the factors they consume and produce together with the
//! arithmetic side conditions that justify the move. The checker only
//! verifies that arithmetic; the geometry behind each move is the cited fact.

mod build;
mod mutants;

pub use build::{build_certificate, minimal_route, nonminimal_route, CertError};
pub use mutants::{mutant_suite, Mutant};

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::brauer::SbVariety;

/// A factor of a formal product. `Tensor(a, b)` is a single Severi-Brauer
/// variety presented as the tensor product of `a` and `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Factor {
    Variety(SbVariety),
    Tensor(SbVariety, SbVariety),
}

impl Factor {
    pub fn projective(dim: u64) -> Factor {
        Factor::Variety(SbVariety::projective(dim))
    }

    pub fn dim(&self) -> u64 {
        match self {
            Factor::Variety(v) => v.dim(),
            Factor::Tensor(a, b) => (a.dim() + 1) * (b.dim() + 1) - 1,
        }
    }

    fn variety(&self) -> Option<&SbVariety> {
        match self {
            Factor::Variety(v) => Some(v),
            Factor::Tensor(..) => None,
        }
    }

    fn projective_dim(&self) -> Option<u64> {
        self.variety().filter(|v| v.is_projective()).map(SbVariety::dim)
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Variety(v) => write!(f, "{v}"),
            Factor::Tensor(a, b) => write!(f, "{a} (x) {b}"),
        }
    }
}

/// A multiset of factors, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FormalProduct(Vec<Factor>);

impl FormalProduct {
    pub fn new(mut factors: Vec<Factor>) -> Self {
        factors.sort();
        FormalProduct(factors)
    }

    pub fn single(v: SbVariety) -> Self {
        FormalProduct(vec![Factor::Variety(v)])
    }

    pub fn factors(&self) -> &[Factor] {
        &self.0
    }

    pub fn total_dim(&self) -> u64 {
        self.0.iter().map(Factor::dim).sum()
    }

    fn remove_all(&mut self, factors: &[Factor]) -> bool {
        for f in factors {
            let Some(i) = self.0.iter().position(|g| g == f) else {
                return false;
            };
            self.0.remove(i);
        }
        true
    }

    fn add_all(&mut self, factors: &[Factor]) {
        self.0.extend_from_slice(factors);
        self.0.sort();
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StepKind {
    MinReduce,
    MinExpand,
    MergeProj,
    SplitProj,
    StableSwap,
    PrimarySplit,
    PrimaryMerge,
    TensorExpand,
    TensorContract,
    IsoReplace,
}

impl StepKind {
    /// Human-readable tag of the fact justifying the move.
    pub fn cites(self) -> &'static str {
        match self {
            StepKind::MinReduce | StepKind::MinExpand => "P ~ P^min x P^r with r = dim P - dim P^min",
            StepKind::MergeProj | StepKind::SplitProj => "P^a x P^b ~ P^(a+b)",
            StepKind::StableSwap => "<P> = <Q> iff P x P^dim Q ~ Q x P^dim P",
            StepKind::PrimarySplit | StepKind::PrimaryMerge => {
                "minimal P, Q of coprime index: P (x) Q is minimal in the class [P][Q]"
            }
            StepKind::TensorExpand | StepKind::TensorContract => {
                "coprime dim+1: P1 (x) P2 ~ P1 x P2 x P^(dim P1 * dim P2)"
            }
            StepKind::IsoReplace => "Brauer equivalent minimal varieties are isomorphic",
        }
    }
}

/// Parameters of a primary split or merge: `u * v = index` and
/// `a*u + c*v = 1 (mod index)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CrtParams {
    pub a: u64,
    pub c: u64,
    pub u: u64,
    pub v: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Payload {
    pub consumed: Vec<Factor>,
    pub produced: Vec<Factor>,
    #[serde(default, skip_serializing_if = "Option::is_none", flatten)]
    pub params: Option<CrtParams>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CertStep {
    pub kind: StepKind,
    pub payload: Payload,
    #[serde(default)]
    pub cites: String,
}

impl CertStep {
    pub fn new(kind: StepKind, consumed: Vec<Factor>, produced: Vec<Factor>) -> Self {
        CertStep { kind, payload: Payload { consumed, produced, params: None }, cites: kind.cites().to_string() }
    }

    pub fn with_params(mut self, params: CrtParams) -> Self {
        self.payload.params = Some(params);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Certificate {
    pub start: FormalProduct,
    pub end: FormalProduct,
    pub steps: Vec<CertStep>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CheckResult {
    Valid,
    Invalid { step: usize, reason: String },
}

impl CheckResult {
    pub fn is_valid(&self) -> bool {
        matches!(self, CheckResult::Valid)
    }
}

type Check = Result<(), &'static str>;

fn ensure(cond: bool, reason: &'static str) -> Check {
    if cond {
        Ok(())
    } else {
        Err(reason)
    }
}

/// Replays the certificate from `start`, checking every side condition, and
/// compares the result with `end`. Invalid steps are reported by index; an
/// end mismatch is reported at index `steps.len()`.
pub fn check_certificate(cert: &Certificate) -> CheckResult {
    let mut current = FormalProduct::new(cert.start.0.clone());
    for (i, step) in cert.steps.iter().enumerate() {
        if let Err(reason) = check_step(step) {
            return CheckResult::Invalid { step: i, reason: reason.to_string() };
        }
        if !current.remove_all(&step.payload.consumed) {
            return CheckResult::Invalid { step: i, reason: "consumed factor not present".to_string() };
        }
        current.add_all(&step.payload.produced);
    }
    if current != FormalProduct::new(cert.end.0.clone()) {
        return CheckResult::Invalid { step: cert.steps.len(), reason: "end mismatch".to_string() };
    }
    CheckResult::Valid
}

fn check_step(step: &CertStep) -> Check {
    let Payload { consumed, produced, params } = &step.payload;
    let dims = |fs: &[Factor]| fs.iter().map(Factor::dim).sum::<u64>();
    ensure(dims(consumed) == dims(produced), "dimension bookkeeping")?;
    match step.kind {
        StepKind::MinReduce => min_reduce(consumed, produced),
        StepKind::MinExpand => min_reduce(produced, consumed),
        StepKind::MergeProj => merge_proj(consumed, produced),
        StepKind::SplitProj => merge_proj(produced, consumed),
        StepKind::StableSwap => stable_swap(consumed, produced),
        StepKind::PrimarySplit => primary_split(consumed, produced, params.as_ref()),
        StepKind::PrimaryMerge => primary_merge(produced, consumed, params.as_ref()),
        StepKind::TensorExpand => tensor_expand(consumed, produced),
        StepKind::TensorContract => tensor_expand(produced, consumed),
        StepKind::IsoReplace => iso_replace(consumed, produced),
    }
}

/// `[P] -> [P^min, P^r]`, listed in that order.
fn min_reduce(whole: &[Factor], parts: &[Factor]) -> Check {
    let [Factor::Variety(p)] = whole else { return Err("arity") };
    let [Factor::Variety(core), Factor::Variety(proj)] = parts else { return Err("arity") };
    ensure(core.class() == p.class(), "class mismatch")?;
    ensure(core.is_minimal(), "core not minimal")?;
    ensure(proj.is_projective(), "expected projective factor")?;
    ensure(proj.dim() + p.index() == p.dim() + 1, "dimension bookkeeping")
}

/// `[P^a, P^b] -> [P^(a+b)]`.
fn merge_proj(parts: &[Factor], whole: &[Factor]) -> Check {
    let [x, y] = parts else { return Err("arity") };
    let [z] = whole else { return Err("arity") };
    let (Some(a), Some(b), Some(c)) = (x.projective_dim(), y.projective_dim(), z.projective_dim()) else {
        return Err("expected projective factor");
    };
    ensure(a + b == c, "dimension bookkeeping")
}

/// `[P, P^k] -> [Q, P^k]` with `dim P = dim Q <= k` and `<P> = <Q>`.
fn stable_swap(consumed: &[Factor], produced: &[Factor]) -> Check {
    let [Factor::Variety(p), Factor::Variety(pk)] = consumed else { return Err("arity") };
    let [Factor::Variety(q), Factor::Variety(qk)] = produced else { return Err("arity") };
    ensure(pk.is_projective() && qk.is_projective(), "expected projective factor")?;
    ensure(pk == qk, "projective factor not restored")?;
    ensure(p.dim() == q.dim(), "dimension bookkeeping")?;
    ensure(pk.dim() >= p.dim(), "projective factor too small")?;
    ensure(p.class().same_subgroup(q.class()), "subgroup mismatch")
}

fn crt_holds(params: &CrtParams, index: u64) -> Check {
    let CrtParams { a, c, u, v } = *params;
    ensure(u >= 2 && v >= 2 && u.checked_mul(v) == Some(index), "factorization does not match index")?;
    ensure(u.gcd(&v) == 1, "factors not coprime")?;
    let lhs = (a as u128 * u as u128 + c as u128 * v as u128) % index as u128;
    ensure(lhs == 1, "coefficients fail a*u + c*v = 1")
}

/// `[P] -> [P1 (x) P2]` with `P1 ~ (a u) P` of period `v`, `P2 ~ (c v) P` of period `u`.
fn primary_split(whole: &[Factor], parts: &[Factor], params: Option<&CrtParams>) -> Check {
    let [Factor::Variety(p)] = whole else { return Err("arity") };
    let [Factor::Tensor(p1, p2)] = parts else { return Err("arity") };
    let params = params.ok_or("missing coefficients")?;
    ensure(p.is_minimal(), "not minimal")?;
    crt_holds(params, p.index())?;
    let CrtParams { a, c, u, v } = *params;
    let au = (a as u128 * u as u128 % p.index() as u128) as i64;
    let cv = (c as u128 * v as u128 % p.index() as u128) as i64;
    ensure(*p1.class() == p.class().power(au) && *p2.class() == p.class().power(cv), "class mismatch")?;
    ensure(p1.class().period() == v && p2.class().period() == u, "period mismatch")?;
    ensure(p1.is_minimal() && p2.is_minimal(), "not minimal")
}

/// `[P1 (x) P2] -> [P]`, the tensor of minimal varieties of coprime index.
fn primary_merge(whole: &[Factor], parts: &[Factor], params: Option<&CrtParams>) -> Check {
    let [Factor::Variety(p)] = whole else { return Err("arity") };
    let [Factor::Tensor(p1, p2)] = parts else { return Err("arity") };
    ensure(p1.is_minimal() && p2.is_minimal(), "not minimal")?;
    ensure(p1.index().gcd(&p2.index()) == 1, "factors not coprime")?;
    ensure(*p.class() == p1.class().tensor(p2.class()), "class mismatch")?;
    ensure(p.is_minimal(), "not minimal")?;
    if let Some(params) = params {
        crt_holds(params, p.index())?;
    }
    Ok(())
}

/// `[P1 (x) P2] -> [P1, P2, P^(dim P1 * dim P2)]`, listed in that order.
fn tensor_expand(whole: &[Factor], parts: &[Factor]) -> Check {
    let [Factor::Tensor(p1, p2)] = whole else { return Err("arity") };
    let [Factor::Variety(x), Factor::Variety(y), Factor::Variety(z)] = parts else { return Err("arity") };
    ensure(p1.is_minimal() && p2.is_minimal(), "not minimal")?;
    ensure((p1.dim() + 1).gcd(&(p2.dim() + 1)) == 1, "factors not coprime")?;
    ensure(x == p1 && y == p2, "factor mismatch")?;
    ensure(z.is_projective() && z.dim() == p1.dim() * p2.dim(), "dimension bookkeeping")
}

fn iso_replace(consumed: &[Factor], produced: &[Factor]) -> Check {
    let [Factor::Variety(p)] = consumed else { return Err("arity") };
    let [Factor::Variety(q)] = produced else { return Err("arity") };
    ensure(p.class() == q.class(), "class mismatch")?;
    ensure(p.is_minimal() && q.is_minimal(), "not minimal")?;
    ensure(p.dim() == q.dim(), "dimension bookkeeping")
}

/// Total dimension after each step of a certificate, starting with `start`.
pub fn dimension_profile(cert: &Certificate) -> Vec<u64> {
    let mut current = FormalProduct::new(cert.start.0.clone());
    let mut out = vec![current.total_dim()];
    for step in &cert.steps {
        current.remove_all(&step.payload.consumed);
        current.add_all(&step.payload.produced);
        out.push(current.total_dim());
    }
    out
}
