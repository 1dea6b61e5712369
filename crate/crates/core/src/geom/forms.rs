//! Homogeneous forms, linear substitution, and spaces of forms with
//! prescribed restrictions to linear subspaces.

use std::collections::HashMap;

use super::{embed::monomials, meet, GeomError, GeomResult, LinSubspace, ProjPoint};
use crate::field::{FieldContext, FieldElement};
use crate::linalg::{self, Row};

/// Graded-lex monomial list with reverse lookup.
#[derive(Clone, Debug)]
pub struct MonomialIndex {
    pub nvars: usize,
    pub degree: u32,
    list: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl MonomialIndex {
    pub fn new(nvars: usize, degree: u32) -> Self {
        let list = monomials(nvars, degree);
        let index = list.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        MonomialIndex { nvars, degree, list, index }
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn monomials(&self) -> &[Vec<u32>] {
        &self.list
    }

    pub fn position(&self, exponents: &[u32]) -> Option<usize> {
        self.index.get(exponents).copied()
    }
}

/// A homogeneous form; `coeffs[i]` multiplies the `i`-th graded-lex monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    pub nvars: usize,
    pub degree: u32,
    pub coeffs: Vec<FieldElement>,
}

impl Form {
    pub fn zero(ctx: &FieldContext, nvars: usize, degree: u32) -> Self {
        let n = monomials(nvars, degree).len();
        Form { nvars, degree, coeffs: vec![ctx.zero(); n] }
    }

    pub fn from_coeffs(nvars: usize, degree: u32, coeffs: Vec<FieldElement>) -> GeomResult<Self> {
        let expected = monomials(nvars, degree).len();
        if coeffs.len() != expected {
            return Err(GeomError::BadLength { expected, got: coeffs.len() });
        }
        Ok(Form { nvars, degree, coeffs })
    }

    /// The single monomial with the given exponents.
    pub fn monomial(ctx: &FieldContext, exponents: &[u32]) -> Self {
        let degree = exponents.iter().sum();
        let idx = MonomialIndex::new(exponents.len(), degree);
        let mut f = Form::zero(ctx, exponents.len(), degree);
        f.coeffs[idx.position(exponents).expect("exponent vector of the right degree")] = ctx.one();
        f
    }

    /// The linear form `sum_i c_i x_i`.
    pub fn linear(coeffs: Vec<FieldElement>) -> Self {
        Form { nvars: coeffs.len(), degree: 1, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn evaluate(&self, ctx: &FieldContext, x: &[FieldElement]) -> FieldElement {
        monomials(self.nvars, self.degree).iter().zip(&self.coeffs).fold(ctx.zero(), |acc, (mono, &c)| {
            if c.is_zero() {
                return acc;
            }
            let term = mono.iter().zip(x).fold(c, |t, (&e, &xi)| ctx.mul(t, ctx.pow(xi, e as u64)));
            ctx.add(acc, term)
        })
    }

    pub fn add(&self, ctx: &FieldContext, other: &Form) -> Form {
        debug_assert_eq!((self.nvars, self.degree), (other.nvars, other.degree));
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| ctx.add(a, b)).collect();
        Form { nvars: self.nvars, degree: self.degree, coeffs }
    }

    pub fn scale(&self, ctx: &FieldContext, c: FieldElement) -> Form {
        let coeffs = self.coeffs.iter().map(|&a| ctx.mul(a, c)).collect();
        Form { nvars: self.nvars, degree: self.degree, coeffs }
    }

    pub fn mul(&self, ctx: &FieldContext, other: &Form) -> Form {
        debug_assert_eq!(self.nvars, other.nvars);
        let a_idx = monomials(self.nvars, self.degree);
        let b_idx = monomials(other.nvars, other.degree);
        let out_idx = MonomialIndex::new(self.nvars, self.degree + other.degree);
        let mut out = vec![ctx.zero(); out_idx.len()];
        let mut exps = vec![0u32; self.nvars];
        for (ma, &ca) in a_idx.iter().zip(&self.coeffs) {
            if ca.is_zero() {
                continue;
            }
            for (mb, &cb) in b_idx.iter().zip(&other.coeffs) {
                if cb.is_zero() {
                    continue;
                }
                for (e, (&x, &y)) in exps.iter_mut().zip(ma.iter().zip(mb)) {
                    *e = x + y;
                }
                let k = out_idx.position(&exps).expect("product monomial");
                out[k] = ctx.add(out[k], ctx.mul(ca, cb));
            }
        }
        Form { nvars: self.nvars, degree: self.degree + other.degree, coeffs: out }
    }

    pub fn one(ctx: &FieldContext, nvars: usize) -> Form {
        Form { nvars, degree: 0, coeffs: vec![ctx.one()] }
    }
}

/// Substitutes `x_i = images[i]` (linear forms in `new_nvars` variables) into `f`.
pub fn substitute_linear(ctx: &FieldContext, f: &Form, images: &[Form], new_nvars: usize) -> Form {
    debug_assert_eq!(images.len(), f.nvars);
    let r = f.degree as usize;
    // powers[i][k] = images[i]^k
    let powers: Vec<Vec<Form>> = images
        .iter()
        .map(|l| {
            let mut ps = vec![Form::one(ctx, new_nvars)];
            for k in 1..=r {
                let next = ps[k - 1].mul(ctx, l);
                ps.push(next);
            }
            ps
        })
        .collect();
    let mut out = Form::zero(ctx, new_nvars, f.degree);
    for (mono, &c) in monomials(f.nvars, f.degree).iter().zip(&f.coeffs) {
        if c.is_zero() {
            continue;
        }
        let mut term = Form::one(ctx, new_nvars).scale(ctx, c);
        for (i, &e) in mono.iter().enumerate() {
            if e > 0 {
                term = term.mul(ctx, &powers[i][e as usize]);
            }
        }
        out = out.add(ctx, &term);
    }
    out
}

/// Restriction of `f` to `l`, in the coordinates of `l`'s echelon frame.
pub fn restrict_to(ctx: &FieldContext, f: &Form, l: &LinSubspace) -> Form {
    let nvars = l.rows().len();
    let images: Vec<Form> = (0..f.nvars).map(|i| Form::linear(l.rows().iter().map(|r| r[i]).collect())).collect();
    substitute_linear(ctx, f, &images, nvars)
}

/// A linearly independent family of degree-`r` forms on `P^N`, in reduced echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormBasis {
    pub ctx: FieldContext,
    pub ambient: usize,
    pub degree: u32,
    pub basis: Vec<Row>,
}

impl FormBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn forms(&self) -> Vec<Form> {
        self.basis
            .iter()
            .map(|c| Form { nvars: self.ambient + 1, degree: self.degree, coeffs: c.clone() })
            .collect()
    }
}

/// Degree-`r` forms on `P^N` whose restriction to each `L_i` is a multiple
/// of the prescribed `s_i`.
///
/// Each constraint contributes the 2x2 minors `R_k s_j - R_j s_k` between the
/// restriction coefficients `R` and `s_i`, where `k` is the leading index of
/// `s_i`; the result is the kernel of all of them.
pub fn restricted_form_space(
    ctx: &FieldContext,
    ambient: usize,
    degree: u32,
    constraints: &[(LinSubspace, Form)],
) -> GeomResult<FormBasis> {
    let source = MonomialIndex::new(ambient + 1, degree);
    for (i, (l, s)) in constraints.iter().enumerate() {
        if l.ambient_dim() != ambient || l.ctx() != ctx {
            return Err(GeomError::AmbientMismatch);
        }
        if s.nvars != l.dim() + 1 || s.degree != degree || s.coeffs.len() != MonomialIndex::new(s.nvars, degree).len() {
            return Err(GeomError::DegenerateConstraint { index: i, reason: "form does not match subspace" });
        }
        if s.is_zero() {
            return Err(GeomError::DegenerateConstraint { index: i, reason: "prescribed form is zero" });
        }
        for (other, _) in &constraints[..i] {
            if meet(l, other)?.is_some() {
                return Err(GeomError::DegenerateConstraint { index: i, reason: "subspaces are not disjoint" });
            }
        }
    }
    let mut equations: Vec<Row> = Vec::new();
    for (l, s) in constraints {
        // restriction[j][col]: coefficient of the j-th monomial on L of the
        // restriction of the col-th monomial on P^N.
        let target_len = s.coeffs.len();
        let mut restriction = vec![vec![ctx.zero(); source.len()]; target_len];
        for (col, mono) in source.monomials().iter().enumerate() {
            let r = restrict_to(ctx, &Form::monomial(ctx, mono), l);
            for (j, &c) in r.coeffs.iter().enumerate() {
                restriction[j][col] = c;
            }
        }
        let k = s.coeffs.iter().position(|c| !c.is_zero()).expect("nonzero form");
        for j in (0..target_len).filter(|&j| j != k) {
            let eq: Row = (0..source.len())
                .map(|col| ctx.sub(ctx.mul(s.coeffs[k], restriction[j][col]), ctx.mul(s.coeffs[j], restriction[k][col])))
                .collect();
            equations.push(eq);
        }
    }
    let basis = if equations.is_empty() {
        let mut id: Vec<Row> = (0..source.len())
            .map(|i| (0..source.len()).map(|j| if i == j { ctx.one() } else { ctx.zero() }).collect())
            .collect();
        linalg::rref(ctx, &mut id);
        id
    } else {
        linalg::kernel(ctx, &equations, source.len())
    };
    Ok(FormBasis { ctx: ctx.clone(), ambient, degree, basis })
}

/// The rational map `x -> [w_1(x) : ... : w_M(x)]`.
pub fn apply_forms(w: &FormBasis, x: &ProjPoint) -> GeomResult<ProjPoint> {
    if x.ctx() != &w.ctx {
        return Err(GeomError::ContextMismatch);
    }
    if x.ambient_dim() != w.ambient {
        return Err(GeomError::AmbientMismatch);
    }
    let values = w.forms().iter().map(|f| f.evaluate(&w.ctx, x.coords())).collect();
    ProjPoint::new(&w.ctx, values).map_err(|_| GeomError::IndeterminacyLocus)
}
