//! Certificates with one perturbed side condition each, for exercising the checker.

use super::{build_certificate, Certificate, Factor, FormalProduct};
use crate::brauer::{BrauerClass, SbVariety};

#[derive(Clone, Debug)]
pub struct Mutant {
    pub name: &'static str,
    pub cert: Certificate,
    /// Index of the step the checker must reject.
    pub step: usize,
    pub reason: &'static str,
}

fn variety(cls: BrauerClass, dim: u64) -> SbVariety {
    SbVariety::new(cls, dim).expect("valid variety")
}

/// Twenty mutants of two generated certificates: the minimal route for a
/// period-6 class and the non-minimal route for a period-3 class in dim 5.
pub fn mutant_suite() -> Vec<Mutant> {
    let alpha = BrauerClass::from_finite(&[(2, 1, 6), (3, 5, 6)]).expect("valid class");
    let p = variety(alpha.clone(), 5);
    let q = variety(alpha.power(5), 5);
    let minimal = build_certificate(&p, &q).expect("period 6 has two prime factors");

    let gamma = BrauerClass::cyclic(3);
    let np = variety(gamma.clone(), 5);
    let nq = variety(gamma.power(2), 5);
    let nonminimal = build_certificate(&np, &nq).expect("non-minimal pair");

    let mut out = Vec::new();
    let mut add = |name, base: &Certificate, step, reason, f: &dyn Fn(&mut Certificate)| {
        let mut cert = base.clone();
        f(&mut cert);
        out.push(Mutant { name, cert, step, reason });
    };

    add("tensor-expand projective dimension 2 -> 3", &minimal, 1, "dimension bookkeeping", &|c| {
        c.steps[1].payload.produced[2] = Factor::projective(3);
    });
    add("stable swap into a different subgroup", &minimal, 2, "subgroup mismatch", &|c| {
        c.steps[2].payload.produced[0] = Factor::projective(2);
    });
    add("primary split with wrong coefficient a", &minimal, 0, "coefficients fail a*u + c*v = 1", &|c| {
        c.steps[0].payload.params.as_mut().expect("params").a = 1;
    });
    add("primary split with u and v exchanged", &minimal, 0, "coefficients fail a*u + c*v = 1", &|c| {
        let params = c.steps[0].payload.params.as_mut().expect("params");
        std::mem::swap(&mut params.u, &mut params.v);
    });
    add("primary split without coefficients", &minimal, 0, "missing coefficients", &|c| {
        c.steps[0].payload.params = None;
    });
    add("primary split part of the wrong class", &minimal, 0, "class mismatch", &|c| {
        let Factor::Tensor(p1, _) = &mut c.steps[0].payload.produced[0] else { unreachable!() };
        *p1 = SbVariety::minimal(p1.class().inverse());
    });
    add("stable swap against a too small projective factor", &minimal, 2, "projective factor too small", &|c| {
        c.steps[2].payload.consumed[1] = Factor::projective(1);
        c.steps[2].payload.produced[1] = Factor::projective(1);
    });
    add("stable swap that does not restore the projective factor", &minimal, 3, "dimension bookkeeping", &|c| {
        c.steps[3].payload.produced[1] = Factor::projective(1);
    });
    add("tensor contraction dropping the projective factor", &minimal, 4, "dimension bookkeeping", &|c| {
        c.steps[4].payload.consumed.pop();
    });
    add("primary merge into the wrong class", &minimal, 5, "class mismatch", &|c| {
        c.steps[5].payload.produced[0] = Factor::Variety(variety(alpha.clone(), 5));
    });
    add("isomorphism between different classes", &minimal, 6, "class mismatch", &|c| {
        c.steps[6].payload.produced[0] = Factor::Variety(variety(alpha.clone(), 5));
        c.end = FormalProduct::single(variety(alpha.clone(), 5));
    });
    add("end product differs from the last state", &minimal, 7, "end mismatch", &|c| {
        c.end = FormalProduct::single(variety(alpha.clone(), 5));
    });
    add("tensor expansion removed", &minimal, 1, "consumed factor not present", &|c| {
        c.steps.remove(1);
    });
    add("steps out of order", &minimal, 2, "consumed factor not present", &|c| {
        c.steps.swap(2, 4);
    });
    add("start product differs from the first step", &minimal, 0, "consumed factor not present", &|c| {
        c.start = FormalProduct::single(variety(alpha.power(5), 5));
    });
    add("minimal reduction with wrong r", &nonminimal, 0, "dimension bookkeeping", &|c| {
        c.steps[0].payload.produced[1] = Factor::projective(4);
    });
    add("minimal reduction to a non-minimal core", &nonminimal, 0, "core not minimal", &|c| {
        c.steps[0].payload.produced = vec![Factor::Variety(variety(gamma.clone(), 5)), Factor::projective(0)];
    });
    add("projective split with wrong sum", &nonminimal, 1, "dimension bookkeeping", &|c| {
        c.steps[1].payload.produced[1] = Factor::projective(2);
    });
    add("projective merge of a twisted factor", &nonminimal, 3, "expected projective factor", &|c| {
        c.steps[3].payload.consumed[0] = Factor::Variety(variety(gamma.power(2), 2));
    });
    add("minimal expansion into another class", &nonminimal, 4, "class mismatch", &|c| {
        let other = BrauerClass::from_finite(&[(5, 1, 3), (7, 2, 3)]).expect("valid class");
        c.steps[4].payload.produced[0] = Factor::Variety(variety(other.clone(), 5));
        c.end = FormalProduct::single(variety(other.clone(), 5));
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cert::{check_certificate, CheckResult};

    #[test]
    fn every_mutant_is_rejected_at_its_step() {
        let suite = mutant_suite();
        assert_eq!(suite.len(), 20);
        for m in &suite {
            assert_eq!(
                check_certificate(&m.cert),
                CheckResult::Invalid { step: m.step, reason: m.reason.to_string() },
                "{}",
                m.name
            );
        }
    }
}
