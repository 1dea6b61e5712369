//! `Re_{K/k}(P^n_K) ~ P^n x A^{mn}` for `|K:k| = m + 1 <= n`.
//!
//! A general `K`-point `p0` spans, with its conjugates, a rational `m`-plane
//! `L`. In `L`'s echelon frame `p0` becomes a `K`-point `y` of `P^m`, whose
//! Weil parametrization has `m(m+1)` coordinates. The `theta^0` components
//! give a rational point `z` of `L` (the trivialized fiber), the remaining
//! `m^2` are affine. The pair `(L, z)` is a pointed `m`-plane, which the
//! bundle chart turns into `x in P^n` plus `m(n-m)` affine coordinates.

use super::{
    weil_param_inverse_with, weil_param_with, ConjugateTuple, ExtensionBasis, WeilError, WeilResult,
};
use crate::field::{FieldContext, FieldElement};
use crate::geom::{bundle_fiber_coords, bundle_from_fiber_coords, ProjPoint};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prop14Image {
    pub x: ProjPoint,
    pub a: Vec<FieldElement>,
}

fn check_dims(m: usize, n: usize) -> WeilResult<()> {
    if m >= n {
        return Err(WeilError::BadParameters(format!("extension degree {} must be at most n = {n}", m + 1)));
    }
    Ok(())
}

/// Affine coordinates are measured from the moment-curve point
/// `[1 : theta : ... : theta^m]`, whose conjugates are independent, so that
/// `a = 0` lands on a general orbit.
fn offset(k: usize, j: usize) -> bool {
    k == j
}

pub fn prop14_forward(t: &ConjugateTuple) -> WeilResult<Prop14Image> {
    prop14_forward_with(&ExtensionBasis::new(t.ctx(), t.base_e(), t.d())?, t)
}

pub(crate) fn prop14_forward_with(basis: &ExtensionBasis, t: &ConjugateTuple) -> WeilResult<Prop14Image> {
    let ctx = t.ctx();
    let n = t.point().ambient_dim();
    let m = t.d() as usize - 1;
    check_dims(m, n)?;
    let l = t.conjugate_span()?;
    let y_coords = l.frame_coords(t.point()).expect("p0 lies on its conjugate span");
    if y_coords[0].is_zero() {
        return Err(WeilError::OutsideChart);
    }
    let y = ConjugateTuple::new(t.base_e(), t.d(), ProjPoint::new(ctx, y_coords)?)?;
    let c = weil_param_with(basis, &y)?;
    let d = m + 1;
    let mut z = vec![ctx.one()];
    let mut affine = Vec::with_capacity(m * m);
    for k in 1..=m {
        let chunk = &c[(k - 1) * d..k * d];
        z.push(chunk[0]);
        for (j, &cj) in chunk.iter().enumerate().skip(1) {
            affine.push(if offset(k, j) { ctx.sub(cj, ctx.one()) } else { cj });
        }
    }
    let x = l.frame_point(&z)?;
    let mut a = bundle_fiber_coords(&l, &x)?;
    a.extend(affine);
    debug_assert_eq!(a.len(), m * n);
    Ok(Prop14Image { x, a })
}

pub fn prop14_inverse(x: &ProjPoint, a: &[FieldElement], d: u32, base_e: u32) -> WeilResult<ConjugateTuple> {
    prop14_inverse_with(&ExtensionBasis::new(x.ctx(), base_e, d)?, x, a)
}

pub(crate) fn prop14_inverse_with(basis: &ExtensionBasis, x: &ProjPoint, a: &[FieldElement]) -> WeilResult<ConjugateTuple> {
    let ctx: &FieldContext = x.ctx();
    let n = x.ambient_dim();
    let m = basis.d as usize - 1;
    check_dims(m, n)?;
    if a.len() != m * n {
        return Err(WeilError::BadLength { expected: m * n, got: a.len() });
    }
    if !x.is_defined_over(basis.base_e)? {
        return Err(WeilError::NotInBaseField);
    }
    for &c in a {
        if !ctx.in_subfield(c, basis.base_e)? {
            return Err(WeilError::NotInBaseField);
        }
    }
    let (fiber, affine) = a.split_at(m * (n - m));
    let l = bundle_from_fiber_coords(x, fiber, m)?;
    let z = l.frame_coords(x).expect("x lies on the reconstructed plane");
    if z[0].is_zero() {
        return Err(WeilError::OutsideChart);
    }
    let mut c = Vec::with_capacity(m * (m + 1));
    for k in 1..=m {
        c.push(z[k]);
        for j in 1..=m {
            let v = affine[(k - 1) * m + (j - 1)];
            c.push(if offset(k, j) { ctx.add(v, ctx.one()) } else { v });
        }
    }
    let y = weil_param_inverse_with(basis, m, &c)?;
    let p0 = l.frame_point(y.point().coords())?;
    let t = ConjugateTuple::new(basis.base_e, basis.d, p0)?;
    if t.conjugate_span()? != l {
        return Err(WeilError::DegenerateOrbit);
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::LinSubspace;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn forward_example_over_f4() {
        let f4 = FieldContext::new(2, 2).unwrap();
        let t = f4.t();
        let p0 = ProjPoint::new(&f4, vec![f4.one(), t, f4.add(t, f4.one())]).unwrap();
        let tuple = ConjugateTuple::new(1, 2, p0).unwrap();
        let l = tuple.conjugate_span().unwrap();
        assert_eq!(l, LinSubspace::from_int_rows(&f4, &[&[1, 0, 1], &[0, 1, 1]]).unwrap());
        assert_eq!(l.frame_coords(tuple.point()).unwrap(), vec![f4.one(), t]);

        let image = prop14_forward(&tuple).unwrap();
        // y = [1:t] expands to (0, 1): z = [1:0] gives x = (1,0,1), and the
        // affine coordinate is 1 - 1 = 0.
        assert_eq!(image.x, ProjPoint::from_ints(&f4, &[1, 0, 1]).unwrap());
        assert_eq!(image.a.len(), 2);
        assert_eq!(image.a[1], f4.zero());
        assert_eq!(prop14_inverse(&image.x, &image.a, 2, 1).unwrap(), tuple);
    }

    #[test]
    fn zero_affine_part_is_standard_configuration() {
        let ctx = FieldContext::new(3, 2).unwrap();
        let x = ProjPoint::from_ints(&ctx, &[1, 0, 0]).unwrap();
        let t = prop14_inverse(&x, &[ctx.zero(); 2], 2, 1).unwrap();
        assert_eq!(t.point().coords(), &[ctx.one(), ctx.t(), ctx.zero()]);
        assert_eq!(t.conjugate_span().unwrap(), LinSubspace::from_int_rows(&ctx, &[&[1, 0, 0], &[0, 1, 0]]).unwrap());
    }

    #[test]
    fn malformed_inputs() {
        let ctx = FieldContext::new(3, 2).unwrap();
        let x = ProjPoint::from_ints(&ctx, &[1, 0, 0]).unwrap();
        assert!(matches!(prop14_inverse(&x, &[ctx.zero(); 3], 2, 1), Err(WeilError::BadLength { .. })));
        assert_eq!(prop14_inverse(&x, &[ctx.t(), ctx.zero()], 2, 1).unwrap_err(), WeilError::NotInBaseField);
        let line = ProjPoint::from_ints(&ctx, &[1, 0]).unwrap();
        assert!(matches!(prop14_inverse(&line, &[ctx.zero()], 2, 1), Err(WeilError::BadParameters(_))));
        let deg = ConjugateTuple::new(1, 2, ProjPoint::from_ints(&ctx, &[1, 1, 0]).unwrap()).unwrap();
        assert_eq!(prop14_forward(&deg).unwrap_err(), WeilError::DegenerateOrbit);
    }

    fn roundtrip_all(ctx: &FieldContext, base_e: u32, d: u32, n: usize, samples: usize, seed: u64) -> usize {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut ok = 0;
        for _ in 0..samples {
            let coords = (0..=n).map(|_| ctx.random_in_subfield(&mut rng, base_e * d).unwrap()).collect();
            let Ok(p) = ProjPoint::new(ctx, coords) else { continue };
            let t = ConjugateTuple::new(base_e, d, p).unwrap();
            match prop14_forward(&t) {
                Ok(img) => {
                    assert_eq!(img.a.len(), (d as usize - 1) * n);
                    assert!(img.x.is_defined_over(base_e).unwrap());
                    assert!(img.a.iter().all(|&c| ctx.in_subfield(c, base_e).unwrap()));
                    assert_eq!(prop14_inverse(&img.x, &img.a, d, base_e).unwrap(), t);
                    ok += 1;
                }
                Err(e) => assert!(e.gate().is_some(), "{e}"),
            }
        }
        ok
    }

    #[test]
    fn roundtrips() {
        let ctx = FieldContext::new(3, 2).unwrap();
        assert!(roundtrip_all(&ctx, 1, 2, 2, 200, 1) > 100);
        let ctx = FieldContext::new(2, 3).unwrap();
        assert!(roundtrip_all(&ctx, 1, 3, 3, 200, 2) > 50);
        // base field F_4 inside F_16
        let ctx = FieldContext::new(2, 4).unwrap();
        assert!(roundtrip_all(&ctx, 2, 2, 2, 200, 3) > 100);
    }

    #[test]
    fn inverse_then_forward_is_identity() {
        let ctx = FieldContext::new(5, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut ok = 0;
        for _ in 0..200 {
            let x = ProjPoint::new(&ctx, (0..4).map(|_| ctx.random_in_subfield(&mut rng, 1).unwrap()).collect());
            let Ok(x) = x else { continue };
            let a: Vec<_> = (0..3).map(|_| ctx.random_in_subfield(&mut rng, 1).unwrap()).collect();
            match prop14_inverse(&x, &a, 2, 1) {
                Ok(t) => {
                    assert_eq!(prop14_forward(&t).unwrap(), Prop14Image { x, a });
                    ok += 1;
                }
                Err(e) => assert!(e.gate().is_some(), "{e}"),
            }
        }
        assert!(ok > 100);
    }
}
