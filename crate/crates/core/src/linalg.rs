//! Dense Gaussian elimination over a [`FieldContext`].

use crate::field::{FieldContext, FieldElement};

pub type Row = Vec<FieldElement>;

/// Brings `rows` to reduced row-echelon form in place, drops zero rows and
/// returns the pivot columns.
pub fn rref(ctx: &FieldContext, rows: &mut Vec<Row>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..ncols {
        if next == rows.len() {
            break;
        }
        let Some(found) = (next..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(next, found);
        let inv = ctx.inv(rows[next][col]).expect("pivot is nonzero");
        for x in rows[next].iter_mut().skip(col) {
            *x = ctx.mul(*x, inv);
        }
        let pivot_row = rows[next].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == next || row[col].is_zero() {
                continue;
            }
            let factor = row[col];
            for (x, &y) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !y.is_zero() {
                    *x = ctx.sub(*x, ctx.mul(factor, y));
                }
            }
        }
        pivots.push(col);
        next += 1;
    }
    rows.truncate(next);
    pivots
}

pub fn rank(ctx: &FieldContext, rows: &[Row]) -> usize {
    let mut m = rows.to_vec();
    rref(ctx, &mut m).len()
}

/// Basis of `{v : A v = 0}` for `A` with `ncols` columns, in reduced echelon form.
pub fn kernel(ctx: &FieldContext, rows: &[Row], ncols: usize) -> Vec<Row> {
    let mut m = rows.to_vec();
    let pivots = rref(ctx, &mut m);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![ctx.zero(); ncols];
        v[free] = ctx.one();
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = ctx.neg(row[free]);
        }
        basis.push(v);
    }
    rref(ctx, &mut basis);
    basis
}

/// Scales `v` so its first nonzero entry is 1. Returns false for the zero vector.
pub fn normalize_leading(ctx: &FieldContext, v: &mut [FieldElement]) -> bool {
    let Some(lead) = v.iter().copied().find(|x| !x.is_zero()) else {
        return false;
    };
    let inv = ctx.inv(lead).expect("nonzero");
    for x in v.iter_mut() {
        *x = ctx.mul(*x, inv);
    }
    true
}

pub fn dot(ctx: &FieldContext, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    a.iter().zip(b).fold(ctx.zero(), |acc, (&x, &y)| ctx.add(acc, ctx.mul(x, y)))
}

/// `sum_i coeffs[i] * rows[i]`.
pub fn combine(ctx: &FieldContext, coeffs: &[FieldElement], rows: &[Row]) -> Row {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut out = vec![ctx.zero(); ncols];
    for (&c, row) in coeffs.iter().zip(rows) {
        if c.is_zero() {
            continue;
        }
        for (o, &x) in out.iter_mut().zip(row) {
            *o = ctx.add(*o, ctx.mul(c, x));
        }
    }
    out
}

/// Coefficients `u` with `sum_j u_j * rows[j] = v`, for linearly independent
/// `rows`; `None` when `v` is outside their span.
pub fn express(ctx: &FieldContext, rows: &[Row], v: &[FieldElement]) -> Option<Row> {
    let k = rows.len();
    let transposed: Vec<Row> = (0..v.len())
        .map(|col| rows.iter().map(|r| r[col]).chain(std::iter::once(v[col])).collect())
        .collect();
    let relations = kernel(ctx, &transposed, k + 1);
    // Independent rows admit at most one relation, and it must involve v.
    if relations.len() != 1 || relations[0][k].is_zero() {
        return None;
    }
    let scale = ctx.neg(ctx.inv(relations[0][k]).ok()?);
    Some(relations[0][..k].iter().map(|&c| ctx.mul(c, scale)).collect())
}

/// Solves the square system `A x = b`, returning `None` when `A` is singular.
pub fn solve(ctx: &FieldContext, a: &[Row], b: &[FieldElement]) -> Option<Row> {
    let n = a.len();
    let mut aug: Vec<Row> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    let pivots = rref(ctx, &mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(aug.iter().map(|r| r[n]).collect())
}
