//! JSON records for field elements, points, subspaces, forms and Weil-restriction data.
//!
//! Elements are written as coefficient arrays, lowest degree first, with
//! exactly `D` entries. On input an element may also be a plain integer
//! (reduced mod `p`), and shorter coefficient arrays are zero-padded.
//! Forms list their coefficients in graded-lex monomial order, see
//! [`crate::geom::monomials`].

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::field::{FieldContext, FieldElement, FieldError};
use crate::geom::{Form, GeomError, LinSubspace, ProjPoint};
use crate::weil::{ConjugateTuple, Thm2Image, Thm2Trace, WeilError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("modulus {given:?} does not match the field's modulus {expected:?}")]
    ModulusMismatch { given: Vec<u64>, expected: Vec<u64> },
    #[error("element has {got} coefficients, field degree is {degree}")]
    TooManyCoefficients { got: usize, degree: u32 },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Weil(#[from] WeilError),
}

pub type IoResult<T> = Result<T, IoError>;

/// `{p, D, modulus}`; the modulus may be omitted on input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    #[serde(rename = "D", default = "one")]
    pub degree: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
}

fn one() -> u32 {
    1
}

impl FieldSpec {
    pub fn of(ctx: &FieldContext) -> Self {
        FieldSpec { p: ctx.p(), degree: ctx.degree(), modulus: Some(ctx.modulus().to_vec()) }
    }

    pub fn context(&self) -> IoResult<FieldContext> {
        let ctx = FieldContext::new(self.p, self.degree)?;
        if let Some(m) = &self.modulus {
            if m.as_slice() != ctx.modulus() {
                return Err(IoError::ModulusMismatch { given: m.clone(), expected: ctx.modulus().to_vec() });
            }
        }
        Ok(ctx)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementJson {
    Int(i64),
    Coeffs(Vec<u64>),
}

pub fn element_out(ctx: &FieldContext, x: FieldElement) -> Vec<u64> {
    ctx.coeffs(x)
}

pub fn element_in(ctx: &FieldContext, x: &ElementJson) -> IoResult<FieldElement> {
    match x {
        ElementJson::Int(c) => Ok(ctx.from_int(*c)),
        ElementJson::Coeffs(c) => {
            let d = ctx.degree() as usize;
            if c.len() > d {
                return Err(IoError::TooManyCoefficients { got: c.len(), degree: ctx.degree() });
            }
            let mut padded = c.clone();
            padded.resize(d, 0);
            Ok(ctx.from_coeffs(&padded)?)
        }
    }
}

pub fn row_in(ctx: &FieldContext, row: &[ElementJson]) -> IoResult<Vec<FieldElement>> {
    row.iter().map(|x| element_in(ctx, x)).collect()
}

pub fn row_out(ctx: &FieldContext, row: &[FieldElement]) -> Vec<Vec<u64>> {
    row.iter().map(|&x| element_out(ctx, x)).collect()
}

pub fn point_in(ctx: &FieldContext, coords: &[ElementJson]) -> IoResult<ProjPoint> {
    Ok(ProjPoint::new(ctx, row_in(ctx, coords)?)?)
}

pub fn point_out(p: &ProjPoint) -> Vec<Vec<u64>> {
    row_out(p.ctx(), p.coords())
}

/// A subspace from the rows spanning it; all rows must have the same length.
pub fn subspace_in(ctx: &FieldContext, rows: &[Vec<ElementJson>]) -> IoResult<LinSubspace> {
    let ncols = rows.first().map_or(0, Vec::len);
    if ncols == 0 || rows.iter().any(|r| r.len() != ncols) {
        return Err(GeomError::BadLength { expected: ncols.max(1), got: rows.iter().map(Vec::len).min().unwrap_or(0) }.into());
    }
    let rows = rows.iter().map(|r| row_in(ctx, r)).collect::<IoResult<Vec<_>>>()?;
    Ok(LinSubspace::from_nonzero_rows(ctx, ncols - 1, rows)?)
}

/// Row-major echelon matrix.
pub fn subspace_out(l: &LinSubspace) -> Vec<Vec<Vec<u64>>> {
    l.rows().iter().map(|r| row_out(l.ctx(), r)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormJson {
    pub nvars: usize,
    pub degree: u32,
    pub coeffs: Vec<ElementJson>,
}

pub fn form_in(ctx: &FieldContext, f: &FormJson) -> IoResult<Form> {
    Ok(Form::from_coeffs(f.nvars, f.degree, row_in(ctx, &f.coeffs)?)?)
}

pub fn form_out(ctx: &FieldContext, f: &Form) -> Value {
    json!({ "nvars": f.nvars, "degree": f.degree, "coeffs": row_out(ctx, &f.coeffs) })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleJson {
    pub base_e: u32,
    pub d: u32,
    pub point: Vec<ElementJson>,
}

pub fn tuple_in(ctx: &FieldContext, t: &TupleJson) -> IoResult<ConjugateTuple> {
    Ok(ConjugateTuple::new(t.base_e, t.d, point_in(ctx, &t.point)?)?)
}

pub fn tuple_out(t: &ConjugateTuple) -> Value {
    json!({ "base_e": t.base_e(), "d": t.d(), "point": point_out(t.point()) })
}

pub fn thm2_image_out(img: &Thm2Image) -> Value {
    let ctx = img.x1.ctx();
    json!({ "x1": point_out(&img.x1), "a": row_out(ctx, &img.a), "x2": point_out(&img.x2) })
}

pub fn thm2_trace_out(t: &Thm2Trace) -> Value {
    json!({
        "conjugates": t.conjugates.iter().map(subspace_out).collect::<Vec<_>>(),
        "transversal": subspace_out(&t.transversal),
        "points": t.points.iter().map(point_out).collect::<Vec<_>>(),
        "l_frame": point_out(&t.l_frame),
        "m_frame": point_out(&t.m_frame),
        "image": thm2_image_out(&t.image),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_format() {
        let ctx = FieldContext::new(2, 2).unwrap();
        let x = ctx.add(ctx.t(), ctx.one());
        assert_eq!(element_out(&ctx, x), vec![1, 1]);
        let parsed: ElementJson = serde_json::from_str("[1,1]").unwrap();
        assert_eq!(element_in(&ctx, &parsed).unwrap(), x);
        assert_eq!(element_in(&ctx, &ElementJson::Coeffs(vec![1])).unwrap(), ctx.one());
        assert!(element_in(&ctx, &ElementJson::Coeffs(vec![1, 0, 1])).is_err());
        assert!(element_in(&ctx, &ElementJson::Coeffs(vec![2, 0])).is_err());
    }

    #[test]
    fn field_spec_checks_modulus() {
        let spec: FieldSpec = serde_json::from_str(r#"{"p":3,"D":2}"#).unwrap();
        let ctx = spec.context().unwrap();
        let full = FieldSpec::of(&ctx);
        assert_eq!(full.context().unwrap(), ctx);
        let bad = FieldSpec { modulus: Some(vec![0, 0, 1]), ..full };
        assert!(matches!(bad.context(), Err(IoError::ModulusMismatch { .. })));
        let s = serde_json::to_value(FieldSpec::of(&ctx)).unwrap();
        assert_eq!(s["D"], 2);
    }

    #[test]
    fn subspace_roundtrip() {
        let ctx = FieldContext::new(5, 1).unwrap();
        let rows: Vec<Vec<ElementJson>> = serde_json::from_str("[[1,1,0,0],[0,0,1,1]]").unwrap();
        let l = subspace_in(&ctx, &rows).unwrap();
        let out = serde_json::to_string(&subspace_out(&l)).unwrap();
        assert_eq!(out, "[[[1],[1],[0],[0]],[[0],[0],[1],[1]]]");
        let back: Vec<Vec<ElementJson>> = serde_json::from_str(&out).unwrap();
        assert_eq!(subspace_in(&ctx, &back).unwrap(), l);
        let ragged: Vec<Vec<ElementJson>> = serde_json::from_str("[[1,1,0],[0,0,1,1]]").unwrap();
        assert!(subspace_in(&ctx, &ragged).is_err());
    }

    #[test]
    fn tuple_roundtrip() {
        let ctx = FieldContext::new(3, 2).unwrap();
        let t: TupleJson = serde_json::from_str(r#"{"base_e":1,"d":2,"point":[1,[0,1],0]}"#).unwrap();
        let tuple = tuple_in(&ctx, &t).unwrap();
        let v = tuple_out(&tuple);
        let back: TupleJson = serde_json::from_value(v).unwrap();
        assert_eq!(tuple_in(&ctx, &back).unwrap(), tuple);
    }
}
