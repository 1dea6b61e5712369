//! Affine coordinates on the standard big cell of a Grassmannian, and the
//! pointed-subspace chart `(p, L) -> (p, L/p)`.

use super::{project_subspace, GeomError, GeomResult, LinSubspace, ProjPoint};
use crate::field::{FieldContext, FieldElement};
use crate::linalg::Row;

/// Non-pivot entries of `L`'s echelon matrix, row-major, provided the pivots
/// are exactly `0..=dim L`. Length `(m+1)(n-m)`.
pub fn grass_big_cell(l: &LinSubspace) -> GeomResult<Vec<FieldElement>> {
    let m = l.dim();
    if l.pivots().iter().enumerate().any(|(i, &p)| p != i) {
        return Err(GeomError::NotInBigCell);
    }
    Ok(l.rows().iter().flat_map(|r| r[m + 1..].iter().copied()).collect())
}

/// Inverse of [`grass_big_cell`]: the `m`-plane of `P^n` with echelon rows `[I | coords]`.
pub fn grass_from_cell(ctx: &FieldContext, coords: &[FieldElement], m: usize, n: usize) -> GeomResult<LinSubspace> {
    if m > n {
        return Err(GeomError::AmbientMismatch);
    }
    let width = n - m;
    let expected = (m + 1) * width;
    if coords.len() != expected {
        return Err(GeomError::BadLength { expected, got: coords.len() });
    }
    let rows: Vec<Row> = (0..=m)
        .map(|i| {
            let mut r: Row = (0..=m).map(|j| if i == j { ctx.one() } else { ctx.zero() }).collect();
            r.extend_from_slice(&coords[i * width..(i + 1) * width]);
            r
        })
        .collect();
    LinSubspace::from_nonzero_rows(ctx, n, rows)
}

/// Encodes an `m`-plane `L` through `p` as the big-cell coordinates of
/// `L/p` inside `P^n/p = P^{n-1}`. Length `m(n-m)`.
pub fn bundle_fiber_coords(l: &LinSubspace, p: &ProjPoint) -> GeomResult<Vec<FieldElement>> {
    if !l.contains(p) {
        return Err(GeomError::PointNotOnSubspace);
    }
    if l.dim() == 0 {
        return Ok(Vec::new());
    }
    let center = LinSubspace::point(p);
    let quotient = project_subspace(&center, l)?.ok_or(GeomError::PointNotOnSubspace)?;
    grass_big_cell(&quotient)
}

/// Inverse of [`bundle_fiber_coords`] for an `m`-plane through `p`.
pub fn bundle_from_fiber_coords(p: &ProjPoint, coords: &[FieldElement], m: usize) -> GeomResult<LinSubspace> {
    let n = p.ambient_dim();
    if m > n {
        return Err(GeomError::AmbientMismatch);
    }
    if m == 0 {
        if !coords.is_empty() {
            return Err(GeomError::BadLength { expected: 0, got: coords.len() });
        }
        return Ok(LinSubspace::point(p));
    }
    let ctx = p.ctx();
    let quotient = grass_from_cell(ctx, coords, m - 1, n - 1)?;
    // Quotient coordinates are the columns other than p's pivot; lift by
    // putting a zero back in that column.
    let pivot = p.pivot();
    let mut rows: Vec<Row> = quotient
        .rows()
        .iter()
        .map(|r| {
            let mut lifted = r.clone();
            lifted.insert(pivot, ctx.zero());
            lifted
        })
        .collect();
    rows.push(p.coords().to_vec());
    LinSubspace::from_nonzero_rows(ctx, n, rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_cell_examples() {
        let ctx = FieldContext::new(5, 1).unwrap();
        let l = LinSubspace::from_int_rows(&ctx, &[&[1, 0, 1], &[0, 1, 1]]).unwrap();
        assert_eq!(grass_big_cell(&l).unwrap(), vec![ctx.one(), ctx.one()]);
        assert_eq!(grass_from_cell(&ctx, &[ctx.one(), ctx.one()], 1, 2).unwrap(), l);
        let std = grass_from_cell(&ctx, &[ctx.zero(); 2], 1, 2).unwrap();
        assert_eq!(std, LinSubspace::from_int_rows(&ctx, &[&[1, 0, 0], &[0, 1, 0]]).unwrap());
        let off = LinSubspace::from_int_rows(&ctx, &[&[1, 0, 0], &[0, 0, 1]]).unwrap();
        assert_eq!(grass_big_cell(&off).unwrap_err(), GeomError::NotInBigCell);
        assert!(matches!(grass_from_cell(&ctx, &[ctx.one()], 1, 2), Err(GeomError::BadLength { .. })));
    }

    #[test]
    fn bundle_examples() {
        let ctx = FieldContext::new(5, 1).unwrap();
        let whole = LinSubspace::whole(&ctx, 3);
        let p = ProjPoint::from_ints(&ctx, &[1, 2, 3, 4]).unwrap();
        assert!(bundle_fiber_coords(&whole, &p).unwrap().is_empty());
        assert_eq!(bundle_from_fiber_coords(&p, &[], 3).unwrap(), whole);

        let l = LinSubspace::from_int_rows(&ctx, &[&[1, 0, 0, 1], &[0, 1, 0, 1]]).unwrap();
        let x = ProjPoint::from_ints(&ctx, &[1, 0, 0, 1]).unwrap();
        // L/x is the point (1, 0, 1) of P^2 in columns 1..3.
        let coords = bundle_fiber_coords(&l, &x).unwrap();
        assert_eq!(coords, vec![ctx.zero(), ctx.one()]);
        assert_eq!(bundle_from_fiber_coords(&x, &coords, 1).unwrap(), l);

        let off = ProjPoint::from_ints(&ctx, &[0, 0, 1, 0]).unwrap();
        assert_eq!(bundle_fiber_coords(&l, &off).unwrap_err(), GeomError::PointNotOnSubspace);
    }

    #[test]
    fn bundle_roundtrip_exhaustive_small() {
        // Every line through every point of P^2(F_3) that lies in the chart.
        let ctx = FieldContext::new(3, 1).unwrap();
        let mut ok = 0;
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let Ok(p) = ProjPoint::from_ints(&ctx, &[a, b, c]) else { continue };
                    for u in 0..3 {
                        let coords = [ctx.from_int(u)];
                        let l = bundle_from_fiber_coords(&p, &coords, 1).unwrap();
                        assert!(l.contains(&p));
                        assert_eq!(bundle_fiber_coords(&l, &p).unwrap(), coords.to_vec());
                        ok += 1;
                    }
                }
            }
        }
        assert_eq!(ok, 26 * 3);
    }
}
