//! Points of Weil restrictions over finite fields and explicit birational
//! parametrizations built from them.
//!
//! Over `k = F_q` with `K = F_{q^d}`, a `k`-point of the Weil restriction of
//! a `K`-variety is a `K`-point; its Frobenius orbit is derived on demand and
//! never stored. All fields live inside one ambient [`FieldContext`], with
//! `q = p^base_e` and `base_e * d` dividing the ambient degree.

mod prop14;
mod thm2;

pub use prop14::{prop14_forward, prop14_inverse, Prop14Image};
pub use thm2::{
    prime_power, r_l_transversal, rational_points, thm2_forward, thm2_forward_traced, thm2_inverse, Thm2Config, Thm2Error,
    Thm2Image, Thm2Stage, Thm2Trace,
};

use thiserror::Error;

use crate::field::{FieldContext, FieldElement, FieldError};
use crate::geom::{span_points, GeomError, LinSubspace, ProjPoint};
use crate::linalg::{self, Row};

/// Genericity checks whose failure marks a point outside the domain of a birational map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gate {
    DegenerateOrbit,
    OutsideChart,
    NotInBigCell,
    NotGeneral,
    UnexpectedMeetDimension,
}

impl Gate {
    pub fn name(self) -> &'static str {
        match self {
            Gate::DegenerateOrbit => "DegenerateOrbit",
            Gate::OutsideChart => "OutsideChart",
            Gate::NotInBigCell => "NotInBigCell",
            Gate::NotGeneral => "NotGeneral",
            Gate::UnexpectedMeetDimension => "UnexpectedMeetDimension",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeilError {
    #[error("conjugates are linearly dependent")]
    DegenerateOrbit,
    #[error("point lies outside the affine chart")]
    OutsideChart,
    #[error("subspace lies outside the standard big cell")]
    NotInBigCell,
    #[error("point is not in general position")]
    NotGeneral,
    #[error("transversal meets a conjugate in more than a point")]
    UnexpectedMeetDimension,
    #[error("base degree {base_e} times extension degree {d} does not divide {degree}")]
    BadExtension { base_e: u32, d: u32, degree: u32 },
    #[error("coordinates are not defined over the extension field")]
    NotOverExtension,
    #[error("coordinates are not defined over the base field")]
    NotInBaseField,
    #[error("expected length {expected}, got {got}")]
    BadLength { expected: usize, got: usize },
    #[error("invalid parameters: {0}")]
    BadParameters(String),
    #[error(transparent)]
    Geom(GeomError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

impl From<GeomError> for WeilError {
    fn from(e: GeomError) -> Self {
        match e {
            GeomError::NotInBigCell => WeilError::NotInBigCell,
            GeomError::NotGeneral => WeilError::NotGeneral,
            GeomError::UnexpectedMeet => WeilError::UnexpectedMeetDimension,
            GeomError::Field(f) => WeilError::Field(f),
            other => WeilError::Geom(other),
        }
    }
}

impl WeilError {
    /// The genericity gate this error reports, if it is a gate failure.
    pub fn gate(&self) -> Option<Gate> {
        match self {
            WeilError::DegenerateOrbit => Some(Gate::DegenerateOrbit),
            WeilError::OutsideChart => Some(Gate::OutsideChart),
            WeilError::NotInBigCell => Some(Gate::NotInBigCell),
            WeilError::NotGeneral => Some(Gate::NotGeneral),
            WeilError::UnexpectedMeetDimension => Some(Gate::UnexpectedMeetDimension),
            _ => None,
        }
    }
}

pub type WeilResult<T> = Result<T, WeilError>;

fn check_extension(ctx: &FieldContext, base_e: u32, d: u32) -> WeilResult<()> {
    let degree = ctx.degree();
    if base_e == 0 || d == 0 || degree % (base_e * d) != 0 {
        return Err(WeilError::BadExtension { base_e, d, degree });
    }
    Ok(())
}

/// A point of `X(F_{q^d})` standing for its orbit under `sigma = x -> x^q`,
/// that is, an `F_q`-point of the Weil restriction of `X`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConjugateTuple {
    base_e: u32,
    d: u32,
    point: ProjPoint,
}

impl ConjugateTuple {
    pub fn new(base_e: u32, d: u32, point: ProjPoint) -> WeilResult<Self> {
        check_extension(point.ctx(), base_e, d)?;
        if !point.is_defined_over(base_e * d)? {
            return Err(WeilError::NotOverExtension);
        }
        Ok(ConjugateTuple { base_e, d, point })
    }

    pub fn base_e(&self) -> u32 {
        self.base_e
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn point(&self) -> &ProjPoint {
        &self.point
    }

    pub fn ctx(&self) -> &FieldContext {
        self.point.ctx()
    }

    /// `(p, sigma p, ..., sigma^{d-1} p)`.
    pub fn conjugates(&self) -> Vec<ProjPoint> {
        (0..self.d).map(|i| self.point.frobenius(self.base_e * i)).collect()
    }

    /// The `(d-1)`-plane spanned by the orbit; defined over `F_q`.
    pub fn conjugate_span(&self) -> WeilResult<LinSubspace> {
        let span = span_points(&self.conjugates())?;
        if span.dim() + 1 != self.d as usize {
            return Err(WeilError::DegenerateOrbit);
        }
        debug_assert!(span.is_defined_over(self.base_e)?);
        Ok(span)
    }
}

/// The basis `1, theta, ..., theta^{d-1}` of `F_{q^d}` over `F_q`, with the
/// inverse of the conjugate matrix `A_{ij} = sigma^i(theta^j)` for expansion.
#[derive(Clone, Debug)]
pub struct ExtensionBasis {
    ctx: FieldContext,
    base_e: u32,
    d: u32,
    powers: Vec<FieldElement>,
    inverse: Vec<Row>,
}

impl ExtensionBasis {
    /// `theta = t` when `F_{q^d}` is the whole ambient field; otherwise the
    /// smallest element (in packed order) generating `F_{q^d}` over `F_q`.
    pub fn new(ctx: &FieldContext, base_e: u32, d: u32) -> WeilResult<Self> {
        check_extension(ctx, base_e, d)?;
        let generates = |x: FieldElement| {
            ctx.frobenius(x, base_e * d) == x && (1..d).all(|j| ctx.frobenius(x, base_e * j) != x)
        };
        let theta = if base_e * d == ctx.degree() && generates(ctx.t()) {
            ctx.t()
        } else {
            ctx.elements().find(|&x| generates(x)).expect("finite fields have primitive elements")
        };
        let powers: Vec<FieldElement> = (0..d).map(|j| ctx.pow(theta, j as u64)).collect();
        let conj: Vec<Row> =
            (0..d).map(|i| powers.iter().map(|&w| ctx.frobenius(w, base_e * i)).collect()).collect();
        let n = d as usize;
        let inverse_cols: Vec<Row> = (0..n)
            .map(|k| {
                let unit: Row = (0..n).map(|i| if i == k { ctx.one() } else { ctx.zero() }).collect();
                linalg::solve(ctx, &conj, &unit).expect("conjugates of a generator are distinct")
            })
            .collect();
        let inverse = (0..n).map(|i| (0..n).map(|k| inverse_cols[k][i]).collect()).collect();
        Ok(ExtensionBasis { ctx: ctx.clone(), base_e, d, powers, inverse })
    }

    pub fn theta(&self) -> FieldElement {
        if self.d > 1 {
            self.powers[1]
        } else {
            self.ctx.one()
        }
    }

    /// Coordinates of `z in F_{q^d}` in the basis `theta^j`; they lie in `F_q`.
    pub fn expand(&self, z: FieldElement) -> Row {
        let ctx = &self.ctx;
        let conj: Row = (0..self.d).map(|i| ctx.frobenius(z, self.base_e * i)).collect();
        self.inverse.iter().map(|row| linalg::dot(ctx, row, &conj)).collect()
    }

    pub fn combine(&self, coeffs: &[FieldElement]) -> FieldElement {
        linalg::dot(&self.ctx, coeffs, &self.powers)
    }
}

/// Affine chart of the Weil restriction of `P^s` from `F_{q^d}` to `F_q`:
/// dehomogenize at coordinate 0 and expand each ratio in the basis `theta^j`,
/// giving `s * d` base-field scalars (ratio-major).
pub fn weil_param_proj(t: &ConjugateTuple) -> WeilResult<Vec<FieldElement>> {
    weil_param_with(&ExtensionBasis::new(t.ctx(), t.base_e, t.d)?, t)
}

pub(crate) fn weil_param_with(basis: &ExtensionBasis, t: &ConjugateTuple) -> WeilResult<Vec<FieldElement>> {
    let coords = t.point.coords();
    if coords[0].is_zero() {
        return Err(WeilError::OutsideChart);
    }
    // Canonical points have coords[0] = 1 here, so the ratios are the coordinates.
    Ok(coords[1..].iter().flat_map(|&z| basis.expand(z)).collect())
}

/// Inverse of [`weil_param_proj`] for a point of `P^s`.
pub fn weil_param_inverse(
    ctx: &FieldContext,
    base_e: u32,
    d: u32,
    s: usize,
    params: &[FieldElement],
) -> WeilResult<ConjugateTuple> {
    weil_param_inverse_with(&ExtensionBasis::new(ctx, base_e, d)?, s, params)
}

pub(crate) fn weil_param_inverse_with(
    basis: &ExtensionBasis,
    s: usize,
    params: &[FieldElement],
) -> WeilResult<ConjugateTuple> {
    let ctx = &basis.ctx;
    let d = basis.d as usize;
    if params.len() != s * d {
        return Err(WeilError::BadLength { expected: s * d, got: params.len() });
    }
    for &c in params {
        if !ctx.in_subfield(c, basis.base_e)? {
            return Err(WeilError::NotInBaseField);
        }
    }
    let mut coords = vec![ctx.one()];
    coords.extend(params.chunks(d).map(|chunk| basis.combine(chunk)));
    ConjugateTuple::new(basis.base_e, basis.d, ProjPoint::new(ctx, coords)?)
}
