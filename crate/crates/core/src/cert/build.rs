use thiserror::Error;

use super::{CertStep, Certificate, CrtParams, Factor, FormalProduct, StepKind};
use crate::brauer::{crt_coefficients, factorization_choice, BrauerError, SbVariety};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertError {
    #[error("no certificate construction applies: {0}")]
    NotApplicable(&'static str),
    #[error("precondition failed: {0}")]
    PreconditionFailed(&'static str),
    #[error(transparent)]
    Brauer(#[from] BrauerError),
}

fn check_common(p: &SbVariety, q: &SbVariety) -> Result<(), CertError> {
    if p.dim() != q.dim() {
        return Err(CertError::PreconditionFailed("dimensions differ"));
    }
    if !p.class().same_subgroup(q.class()) {
        return Err(CertError::PreconditionFailed("classes generate different subgroups"));
    }
    Ok(())
}

/// A certificate from `{P}` to `{Q}`: empty when `P = Q`, otherwise the
/// non-minimal route or, for minimal `P` whose index has two coprime
/// factors, the route through a primary splitting.
pub fn build_certificate(p: &SbVariety, q: &SbVariety) -> Result<Certificate, CertError> {
    check_common(p, q)?;
    if p == q {
        return Ok(Certificate { start: FormalProduct::single(p.clone()), end: FormalProduct::single(q.clone()), steps: vec![] });
    }
    if !p.is_minimal() {
        return nonminimal_route(p, q);
    }
    minimal_route(p, q)
}

/// `P ~ P^min x P^r ~ Q^min x P^r ~ Q`, swapping the minimal cores against
/// a split-off `P^(dim P^min)`.
pub fn nonminimal_route(p: &SbVariety, q: &SbVariety) -> Result<Certificate, CertError> {
    check_common(p, q)?;
    if p.is_minimal() {
        return Err(CertError::NotApplicable("variety is minimal"));
    }
    let core_p = SbVariety::minimal(p.class().clone());
    let core_q = SbVariety::minimal(q.class().clone());
    let core_dim = core_p.dim();
    let r = p.dim() - core_dim;
    let v = Factor::Variety;
    let steps = vec![
        CertStep::new(StepKind::MinReduce, vec![v(p.clone())], vec![v(core_p.clone()), Factor::projective(r)]),
        CertStep::new(
            StepKind::SplitProj,
            vec![Factor::projective(r)],
            vec![Factor::projective(core_dim), Factor::projective(r - core_dim)],
        ),
        CertStep::new(
            StepKind::StableSwap,
            vec![v(core_p), Factor::projective(core_dim)],
            vec![v(core_q.clone()), Factor::projective(core_dim)],
        ),
        CertStep::new(
            StepKind::MergeProj,
            vec![Factor::projective(core_dim), Factor::projective(r - core_dim)],
            vec![Factor::projective(r)],
        ),
        CertStep::new(StepKind::MinExpand, vec![v(core_q), Factor::projective(r)], vec![v(q.clone())]),
    ];
    Ok(Certificate { start: FormalProduct::single(p.clone()), end: FormalProduct::single(q.clone()), steps })
}

/// For minimal `P, Q` of index `u*v` with coprime `u, v >= 2`:
/// `P = P1 (x) P2 ~ P1 x P2 x P^r ~ Q1 x Q2 x P^r ~ Q1 (x) Q2 = Q`.
pub fn minimal_route(p: &SbVariety, q: &SbVariety) -> Result<Certificate, CertError> {
    check_common(p, q)?;
    if !p.is_minimal() {
        return Err(CertError::NotApplicable("variety is not minimal"));
    }
    let n = p.index();
    let (u, v) = factorization_choice(n).ok_or(CertError::NotApplicable("index is a prime power"))?;
    let (a, c) = crt_coefficients(u, v, n)?;
    let params = CrtParams { a, c, u, v };
    let au = ((a * u) % n) as i64;
    let cv = ((c * v) % n) as i64;
    let split = |x: &SbVariety| {
        (SbVariety::minimal(x.class().power(au)), SbVariety::minimal(x.class().power(cv)))
    };
    let (p1, p2) = split(p);
    let (q1, q2) = split(q);
    let r = p1.dim() * p2.dim();
    let merged = SbVariety::minimal(q1.class().tensor(q2.class()));
    let v = Factor::Variety;
    let steps = vec![
        CertStep::new(StepKind::PrimarySplit, vec![v(p.clone())], vec![Factor::Tensor(p1.clone(), p2.clone())])
            .with_params(params),
        CertStep::new(
            StepKind::TensorExpand,
            vec![Factor::Tensor(p1.clone(), p2.clone())],
            vec![v(p1.clone()), v(p2.clone()), Factor::projective(r)],
        ),
        CertStep::new(StepKind::StableSwap, vec![v(p1), Factor::projective(r)], vec![v(q1.clone()), Factor::projective(r)]),
        CertStep::new(StepKind::StableSwap, vec![v(p2), Factor::projective(r)], vec![v(q2.clone()), Factor::projective(r)]),
        CertStep::new(
            StepKind::TensorContract,
            vec![v(q1.clone()), v(q2.clone()), Factor::projective(r)],
            vec![Factor::Tensor(q1.clone(), q2.clone())],
        ),
        CertStep::new(StepKind::PrimaryMerge, vec![Factor::Tensor(q1, q2)], vec![v(merged.clone())]).with_params(params),
        CertStep::new(StepKind::IsoReplace, vec![v(merged)], vec![v(q.clone())]),
    ];
    Ok(Certificate { start: FormalProduct::single(p.clone()), end: FormalProduct::single(q.clone()), steps })
}
