//! Projective linear algebra over a finite field.
//!
//! Points are kept with their first nonzero coordinate equal to 1 and linear
//! subspaces as reduced row-echelon bases, so equality of geometric objects
//! is equality of representations.

mod embed;
mod forms;
mod grass;

pub use embed::{monomials, segre, veronese};
pub use forms::{apply_forms, restrict_to, restricted_form_space, substitute_linear, Form, FormBasis, MonomialIndex};
pub use grass::{bundle_fiber_coords, bundle_from_fiber_coords, grass_big_cell, grass_from_cell};

use std::fmt;
use std::hash::{Hash, Hasher};

use thiserror::Error;

use crate::field::{FieldContext, FieldElement, FieldError};
use crate::linalg::{self, Row};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("objects live in different ambient spaces")]
    AmbientMismatch,
    #[error("objects are defined over different fields")]
    ContextMismatch,
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("span of an empty list")]
    EmptySpan,
    #[error("point lies in the projection center")]
    PointInCenter,
    #[error("dimensions of the subspaces sum to {sum}, expected {expected}")]
    BadDimensionSum { sum: usize, expected: usize },
    #[error("subspaces do not span the ambient space")]
    NotSpanning,
    #[error("point is not in general position with respect to the subspaces")]
    NotGeneral,
    #[error("expected {expected} subspaces, got {got}")]
    WrongCount { expected: usize, got: usize },
    #[error("constraint {index} is degenerate: {reason}")]
    DegenerateConstraint { index: usize, reason: &'static str },
    #[error("all forms vanish at the point")]
    IndeterminacyLocus,
    #[error("subspace is not in the standard big cell")]
    NotInBigCell,
    #[error("point does not lie on the subspace")]
    PointNotOnSubspace,
    #[error("expected length {expected}, got {got}")]
    BadLength { expected: usize, got: usize },
    #[error("intersection has unexpected dimension")]
    UnexpectedMeet,
    #[error(transparent)]
    Field(#[from] FieldError),
}

pub type GeomResult<T> = Result<T, GeomError>;

/// A point of `P^N`, normalized so its first nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq)]
pub struct ProjPoint {
    ctx: FieldContext,
    coords: Vec<FieldElement>,
}

impl Hash for ProjPoint {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|&c| self.ctx.format(c)).collect();
        write!(f, "[{}]", parts.join(":"))
    }
}

impl ProjPoint {
    pub fn new(ctx: &FieldContext, mut coords: Vec<FieldElement>) -> GeomResult<Self> {
        if !linalg::normalize_leading(ctx, &mut coords) {
            return Err(GeomError::ZeroVector);
        }
        Ok(ProjPoint { ctx: ctx.clone(), coords })
    }

    /// Point with prime-field coordinates given as integers.
    pub fn from_ints(ctx: &FieldContext, coords: &[i64]) -> GeomResult<Self> {
        Self::new(ctx, coords.iter().map(|&c| ctx.from_int(c)).collect())
    }

    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    pub fn ambient_dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// Index of the first nonzero coordinate.
    pub fn pivot(&self) -> usize {
        self.coords.iter().position(|c| !c.is_zero()).expect("points are nonzero")
    }

    /// Coordinate-wise `x -> x^{p^e}`.
    pub fn frobenius(&self, e: u32) -> ProjPoint {
        let coords = self.coords.iter().map(|&c| self.ctx.frobenius(c, e)).collect();
        ProjPoint { ctx: self.ctx.clone(), coords }
    }

    /// True iff every coordinate lies in `F_{p^e}`.
    pub fn is_defined_over(&self, e: u32) -> GeomResult<bool> {
        self.ctx.check_subfield(e)?;
        Ok(self.frobenius(e) == *self)
    }

    /// Sort key comparing serialized coordinates (coefficient arrays) lexicographically.
    pub fn serial_key(&self) -> Vec<Vec<u64>> {
        self.coords.iter().map(|&c| self.ctx.coeffs(c)).collect()
    }

    fn check_compatible(&self, ctx: &FieldContext, ambient: usize) -> GeomResult<()> {
        if self.ctx != *ctx {
            return Err(GeomError::ContextMismatch);
        }
        if self.ambient_dim() != ambient {
            return Err(GeomError::AmbientMismatch);
        }
        Ok(())
    }
}

/// A nonempty linear subspace of `P^N` in reduced row-echelon form.
#[derive(Clone, PartialEq, Eq)]
pub struct LinSubspace {
    ctx: FieldContext,
    ambient: usize,
    rows: Vec<Row>,
    pivots: Vec<usize>,
}

impl Hash for LinSubspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.rows.hash(state);
    }
}

impl fmt::Debug for LinSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                let parts: Vec<String> = r.iter().map(|&c| self.ctx.format(c)).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        write!(f, "rows{{{}}}", rows.join(","))
    }
}

impl LinSubspace {
    /// Span of the given vectors in `P^ambient`; `None` when they are all zero.
    pub fn from_rows(ctx: &FieldContext, ambient: usize, rows: Vec<Row>) -> GeomResult<Option<Self>> {
        if rows.iter().any(|r| r.len() != ambient + 1) {
            return Err(GeomError::AmbientMismatch);
        }
        let mut rows = rows;
        let pivots = linalg::rref(ctx, &mut rows);
        if rows.is_empty() {
            return Ok(None);
        }
        Ok(Some(LinSubspace { ctx: ctx.clone(), ambient, rows, pivots }))
    }

    /// Like [`LinSubspace::from_rows`] but rejects the zero span.
    pub fn from_nonzero_rows(ctx: &FieldContext, ambient: usize, rows: Vec<Row>) -> GeomResult<Self> {
        Self::from_rows(ctx, ambient, rows)?.ok_or(GeomError::ZeroVector)
    }

    /// Subspace with integer (prime-field) rows.
    pub fn from_int_rows(ctx: &FieldContext, rows: &[&[i64]]) -> GeomResult<Self> {
        let ambient = rows.first().map_or(0, |r| r.len().saturating_sub(1));
        let rows = rows.iter().map(|r| r.iter().map(|&c| ctx.from_int(c)).collect()).collect();
        Self::from_nonzero_rows(ctx, ambient, rows)
    }

    pub fn whole(ctx: &FieldContext, ambient: usize) -> Self {
        let rows = (0..=ambient)
            .map(|i| (0..=ambient).map(|j| if i == j { ctx.one() } else { ctx.zero() }).collect())
            .collect();
        LinSubspace { ctx: ctx.clone(), ambient, rows, pivots: (0..=ambient).collect() }
    }

    pub fn point(p: &ProjPoint) -> Self {
        LinSubspace {
            ctx: p.ctx.clone(),
            ambient: p.ambient_dim(),
            rows: vec![p.coords.clone()],
            pivots: vec![p.pivot()],
        }
    }

    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Projective dimension.
    pub fn dim(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_whole(&self) -> bool {
        self.rows.len() == self.ambient + 1
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.frame_coords(p).is_some()
    }

    pub fn contains_subspace(&self, other: &LinSubspace) -> bool {
        other.rows.iter().all(|r| self.reduce(r).iter().all(|c| c.is_zero()))
    }

    /// `v` minus its components along the echelon rows; zero iff `v` lies in the span.
    fn reduce(&self, v: &[FieldElement]) -> Row {
        let mut out = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = out[pc];
            if c.is_zero() {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(row) {
                *o = self.ctx.sub(*o, self.ctx.mul(c, x));
            }
        }
        out
    }

    /// Coordinates of `p` in the echelon frame (entries of `p` at the pivot
    /// columns), or `None` when `p` is not on the subspace.
    pub fn frame_coords(&self, p: &ProjPoint) -> Option<Row> {
        if p.ctx != self.ctx || p.ambient_dim() != self.ambient {
            return None;
        }
        if !self.reduce(&p.coords).iter().all(|c| c.is_zero()) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| p.coords[pc]).collect())
    }

    /// The point `sum_j u_j * row_j`.
    pub fn frame_point(&self, u: &[FieldElement]) -> GeomResult<ProjPoint> {
        if u.len() != self.rows.len() {
            return Err(GeomError::BadLength { expected: self.rows.len(), got: u.len() });
        }
        ProjPoint::new(&self.ctx, linalg::combine(&self.ctx, u, &self.rows))
    }

    /// Entry-wise Frobenius `x -> x^{p^e}`; echelon form is preserved.
    pub fn frobenius(&self, e: u32) -> LinSubspace {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&c| self.ctx.frobenius(c, e)).collect())
            .collect();
        LinSubspace { ctx: self.ctx.clone(), ambient: self.ambient, rows, pivots: self.pivots.clone() }
    }

    /// True iff the subspace is defined over `F_{p^e}`.
    pub fn is_defined_over(&self, e: u32) -> GeomResult<bool> {
        self.ctx.check_subfield(e)?;
        Ok(self.frobenius(e) == *self)
    }

    pub fn join(&self, other: &LinSubspace) -> GeomResult<LinSubspace> {
        span(&[SpanItem::from(self), SpanItem::from(other)])
    }

    fn check_compatible(&self, other: &LinSubspace) -> GeomResult<()> {
        if self.ctx != other.ctx {
            return Err(GeomError::ContextMismatch);
        }
        if self.ambient != other.ambient {
            return Err(GeomError::AmbientMismatch);
        }
        Ok(())
    }
}

/// Either kind of linear object accepted by [`span`].
#[derive(Clone, Copy, Debug)]
pub enum SpanItem<'a> {
    Point(&'a ProjPoint),
    Subspace(&'a LinSubspace),
}

impl<'a> From<&'a ProjPoint> for SpanItem<'a> {
    fn from(p: &'a ProjPoint) -> Self {
        SpanItem::Point(p)
    }
}

impl<'a> From<&'a LinSubspace> for SpanItem<'a> {
    fn from(l: &'a LinSubspace) -> Self {
        SpanItem::Subspace(l)
    }
}

/// Smallest linear subspace containing every item.
pub fn span(items: &[SpanItem<'_>]) -> GeomResult<LinSubspace> {
    let (ctx, ambient) = match items.first() {
        None => return Err(GeomError::EmptySpan),
        Some(SpanItem::Point(p)) => (p.ctx.clone(), p.ambient_dim()),
        Some(SpanItem::Subspace(l)) => (l.ctx.clone(), l.ambient),
    };
    let mut rows = Vec::new();
    for item in items {
        match item {
            SpanItem::Point(p) => {
                p.check_compatible(&ctx, ambient)?;
                rows.push(p.coords.clone());
            }
            SpanItem::Subspace(l) => {
                if l.ctx != ctx {
                    return Err(GeomError::ContextMismatch);
                }
                if l.ambient != ambient {
                    return Err(GeomError::AmbientMismatch);
                }
                rows.extend(l.rows.iter().cloned());
            }
        }
    }
    LinSubspace::from_nonzero_rows(&ctx, ambient, rows)
}

/// Span of a list of points.
pub fn span_points(points: &[ProjPoint]) -> GeomResult<LinSubspace> {
    let items: Vec<SpanItem<'_>> = points.iter().map(SpanItem::from).collect();
    span(&items)
}

/// Intersection of two subspaces; `None` when it is empty.
pub fn meet(a: &LinSubspace, b: &LinSubspace) -> GeomResult<Option<LinSubspace>> {
    a.check_compatible(b)?;
    let ctx = &a.ctx;
    let na = a.rows.len();
    let nb = b.rows.len();
    // Relations sum x_i a_i + sum y_j b_j = 0, found as the kernel of the
    // transposed stack; each relation gives the common vector sum x_i a_i.
    let transposed: Vec<Row> = (0..=a.ambient)
        .map(|col| a.rows.iter().chain(&b.rows).map(|r| r[col]).collect())
        .collect();
    let relations = linalg::kernel(ctx, &transposed, na + nb);
    let common: Vec<Row> = relations.iter().map(|rel| linalg::combine(ctx, &rel[..na], &a.rows)).collect();
    if common.is_empty() {
        return Ok(None);
    }
    LinSubspace::from_rows(ctx, a.ambient, common)
}

/// Image of a vector under projection from `center`, in the frame of the
/// non-pivot columns of the center's echelon form.
fn project_vector(center: &LinSubspace, v: &[FieldElement]) -> Row {
    let reduced = center.reduce(v);
    (0..=center.ambient).filter(|c| !center.pivots.contains(c)).map(|c| reduced[c]).collect()
}

/// Linear projection `P^N --> P^{N - dim L - 1}` with center `L`.
pub fn project_from(center: &LinSubspace, x: &ProjPoint) -> GeomResult<ProjPoint> {
    x.check_compatible(&center.ctx, center.ambient)?;
    if center.is_whole() || center.contains(x) {
        return Err(GeomError::PointInCenter);
    }
    ProjPoint::new(&center.ctx, project_vector(center, &x.coords))
}

/// Image of a subspace under projection from `center`; `None` when it lies in the center.
pub fn project_subspace(center: &LinSubspace, s: &LinSubspace) -> GeomResult<Option<LinSubspace>> {
    center.check_compatible(s)?;
    if center.is_whole() {
        return Ok(None);
    }
    let rows = s.rows.iter().map(|r| project_vector(center, r)).collect();
    LinSubspace::from_rows(&center.ctx, center.ambient - center.rows.len(), rows)
}

/// True iff `p` is not contained in the span of any `n` of the `n + 1` subspaces.
pub fn is_general_for(p: &ProjPoint, subspaces: &[LinSubspace], n: usize) -> GeomResult<bool> {
    if subspaces.len() != n + 1 {
        return Err(GeomError::WrongCount { expected: n + 1, got: subspaces.len() });
    }
    for l in subspaces {
        p.check_compatible(&l.ctx, l.ambient)?;
    }
    if n == 0 {
        return Ok(true);
    }
    for skip in 0..subspaces.len() {
        let others: Vec<SpanItem<'_>> =
            subspaces.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, l)| SpanItem::from(l)).collect();
        if span(&others)?.contains(p) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The unique `n`-dimensional subspace through `p` meeting each of the `n + 1`
/// subspaces, where the subspaces span `P^N` with `sum (1 + dim L_i) = N + 1`.
///
/// Computed by induction: project from the last subspace, solve the smaller
/// problem, lift the meeting points back and span them together with `p`.
pub fn transversal(p: &ProjPoint, subspaces: &[LinSubspace]) -> GeomResult<LinSubspace> {
    let Some(first) = subspaces.first() else {
        return Err(GeomError::WrongCount { expected: 1, got: 0 });
    };
    let ambient = p.ambient_dim();
    for l in subspaces {
        p.check_compatible(&l.ctx, l.ambient)?;
    }
    let sum: usize = subspaces.iter().map(|l| l.rows.len()).sum();
    if sum != ambient + 1 {
        return Err(GeomError::BadDimensionSum { sum, expected: ambient + 1 });
    }
    let items: Vec<SpanItem<'_>> = subspaces.iter().map(SpanItem::from).collect();
    if !span(&items)?.is_whole() {
        return Err(GeomError::NotSpanning);
    }
    debug_assert_eq!(first.ambient, ambient);
    if !is_general_for(p, subspaces, subspaces.len() - 1)? {
        return Err(GeomError::NotGeneral);
    }
    transversal_rec(p, subspaces)
}

fn transversal_rec(p: &ProjPoint, subspaces: &[LinSubspace]) -> GeomResult<LinSubspace> {
    let (center, rest) = subspaces.split_last().expect("nonempty");
    if rest.is_empty() {
        return Ok(LinSubspace::point(p));
    }
    let ctx = &p.ctx;
    let p_img = project_from(center, p)?;
    // Raw row images keep the correspondence with each L_i's echelon rows.
    let raw_images: Vec<Vec<Row>> =
        rest.iter().map(|l| l.rows.iter().map(|r| project_vector(center, r)).collect()).collect();
    let images: Vec<LinSubspace> = raw_images
        .iter()
        .map(|rows| LinSubspace::from_nonzero_rows(ctx, p_img.ambient_dim(), rows.clone()))
        .collect::<GeomResult<_>>()?;
    let m_img = transversal_rec(&p_img, &images)?;
    let mut spanning = vec![p.clone()];
    for ((l, img), raw) in rest.iter().zip(&images).zip(&raw_images) {
        let hit = meet(&m_img, img)?.ok_or(GeomError::UnexpectedMeet)?;
        if hit.dim() != 0 {
            return Err(GeomError::UnexpectedMeet);
        }
        let u = linalg::express(ctx, raw, &hit.rows[0]).ok_or(GeomError::UnexpectedMeet)?;
        spanning.push(ProjPoint::new(ctx, linalg::combine(ctx, &u, &l.rows))?);
    }
    span_points(&spanning)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> FieldContext {
        FieldContext::new(5, 1).unwrap()
    }

    #[test]
    fn span_examples() {
        let ctx = FieldContext::new(3, 1).unwrap();
        let a = ProjPoint::from_ints(&ctx, &[1, 0, 0]).unwrap();
        let b = ProjPoint::from_ints(&ctx, &[0, 1, 0]).unwrap();
        let line = span_points(&[a.clone(), b]).unwrap();
        assert_eq!(line, LinSubspace::from_int_rows(&ctx, &[&[1, 0, 0], &[0, 1, 0]]).unwrap());
        assert_eq!(span_points(&[a.clone()]).unwrap().dim(), 0);

        let ctx = f5();
        let p = ProjPoint::from_ints(&ctx, &[1, 1, 1, 1]).unwrap();
        let l = LinSubspace::from_int_rows(&ctx, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]).unwrap();
        let plane = span(&[SpanItem::from(&p), SpanItem::from(&l)]).unwrap();
        let expected = LinSubspace::from_int_rows(&ctx, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 1]]).unwrap();
        assert_eq!(plane, expected);
        assert_eq!(plane.rows()[2], vec![ctx.zero(), ctx.zero(), ctx.one(), ctx.one()]);
    }

    #[test]
    fn span_rejects_mixed_ambients() {
        let ctx = f5();
        let a = ProjPoint::from_ints(&ctx, &[1, 0, 0]).unwrap();
        let b = ProjPoint::from_ints(&ctx, &[1, 0, 0, 0]).unwrap();
        assert_eq!(span_points(&[a, b]).unwrap_err(), GeomError::AmbientMismatch);
        assert_eq!(span(&[]).unwrap_err(), GeomError::EmptySpan);
    }

    #[test]
    fn meet_examples() {
        let ctx = f5();
        let a = LinSubspace::from_int_rows(&ctx, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]).unwrap();
        let b = LinSubspace::from_int_rows(&ctx, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]]).unwrap();
        let line = LinSubspace::from_int_rows(&ctx, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]).unwrap();
        assert_eq!(meet(&a, &b).unwrap(), Some(line.clone()));
        let skew = LinSubspace::from_int_rows(&ctx, &[&[0, 0, 1, 0], &[0, 0, 0, 1]]).unwrap();
        assert_eq!(meet(&line, &skew).unwrap(), None);
        assert_eq!(meet(&a, &a).unwrap(), Some(a.clone()));
    }

    #[test]
    fn projection_examples() {
        let ctx = f5();
        let center = LinSubspace::from_int_rows(&ctx, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]).unwrap();
        let x = ProjPoint::from_ints(&ctx, &[1, 1, 1, 1]).unwrap();
        assert_eq!(project_from(&center, &x).unwrap(), ProjPoint::from_ints(&ctx, &[1, 1]).unwrap());
        let y = ProjPoint::from_ints(&ctx, &[0, 0, 1, 0]).unwrap();
        assert_eq!(project_from(&center, &y).unwrap(), ProjPoint::from_ints(&ctx, &[1, 0]).unwrap());
        let z = ProjPoint::from_ints(&ctx, &[1, 3, 0, 0]).unwrap();
        assert_eq!(project_from(&center, &z).unwrap_err(), GeomError::PointInCenter);
    }

    #[test]
    fn generality_examples() {
        let ctx = f5();
        let l0 = LinSubspace::from_int_rows(&ctx, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]).unwrap();
        let l1 = LinSubspace::from_int_rows(&ctx, &[&[0, 0, 1, 0], &[0, 0, 0, 1]]).unwrap();
        let p = ProjPoint::from_ints(&ctx, &[1, 1, 1, 1]).unwrap();
        assert!(is_general_for(&p, &[l0.clone(), l1.clone()], 1).unwrap());
        let on_l0 = ProjPoint::from_ints(&ctx, &[1, 2, 0, 0]).unwrap();
        assert!(!is_general_for(&on_l0, &[l0.clone(), l1.clone()], 1).unwrap());
        let whole = LinSubspace::whole(&ctx, 3);
        assert!(is_general_for(&p, &[whole], 0).unwrap());
        assert!(matches!(is_general_for(&p, &[l0], 1), Err(GeomError::WrongCount { .. })));
    }

    #[test]
    fn transversal_examples() {
        let ctx = f5();
        let p = ProjPoint::from_ints(&ctx, &[1, 1, 1, 1]).unwrap();
        let whole = LinSubspace::whole(&ctx, 3);
        assert_eq!(transversal(&p, &[whole]).unwrap(), LinSubspace::point(&p));

        let l0 = LinSubspace::from_int_rows(&ctx, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]).unwrap();
        let l1 = LinSubspace::from_int_rows(&ctx, &[&[0, 0, 1, 0], &[0, 0, 0, 1]]).unwrap();
        let m = transversal(&p, &[l0.clone(), l1.clone()]).unwrap();
        assert_eq!(m, LinSubspace::from_int_rows(&ctx, &[&[1, 1, 0, 0], &[0, 0, 1, 1]]).unwrap());

        let on_l0 = ProjPoint::from_ints(&ctx, &[1, 2, 0, 0]).unwrap();
        assert_eq!(transversal(&on_l0, &[l0.clone(), l1.clone()]).unwrap_err(), GeomError::NotGeneral);

        let pt = LinSubspace::point(&ProjPoint::from_ints(&ctx, &[0, 0, 1, 0]).unwrap());
        assert!(matches!(transversal(&p, &[l0.clone(), pt]), Err(GeomError::BadDimensionSum { .. })));
        assert_eq!(transversal(&p, &[l0.clone(), l0]).unwrap_err(), GeomError::NotSpanning);
    }

    #[test]
    fn transversal_three_points_in_plane() {
        // n = 2 with three points spanning P^2: M is the whole plane.
        let ctx = FieldContext::new(7, 1).unwrap();
        let pts: Vec<LinSubspace> = [[1, 0, 0], [0, 1, 0], [1, 1, 1]]
            .iter()
            .map(|c| LinSubspace::point(&ProjPoint::from_ints(&ctx, c).unwrap()))
            .collect();
        let p = ProjPoint::from_ints(&ctx, &[1, 2, 3]).unwrap();
        assert!(transversal(&p, &pts).unwrap().is_whole());
    }

    #[test]
    fn frobenius_of_subspace_stays_echelon() {
        let ctx = FieldContext::new(2, 2).unwrap();
        let t = ctx.t();
        let row = vec![ctx.one(), t, ctx.zero()];
        let l = LinSubspace::from_nonzero_rows(&ctx, 2, vec![row]).unwrap();
        let lf = l.frobenius(1);
        assert_eq!(LinSubspace::from_nonzero_rows(&ctx, 2, lf.rows().to_vec()).unwrap(), lf);
        assert!(!l.is_defined_over(1).unwrap());
    }
}
