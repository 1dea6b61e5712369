use num_integer::Integer;
use proptest::prelude::*;

use sb_core::brauer::{BrauerClass, SbVariety};
use sb_core::cert::{build_certificate, check_certificate, dimension_profile};
use sb_core::field::{FieldContext, FieldElement};
use sb_core::geom::{meet, segre, LinSubspace, ProjPoint};

fn f81() -> FieldContext {
    FieldContext::new(3, 4).unwrap()
}

fn elem(ctx: &FieldContext, raw: u64) -> FieldElement {
    ctx.element(raw % ctx.order()).unwrap()
}

fn class_strategy() -> impl Strategy<Value = BrauerClass> {
    proptest::collection::vec((prop::sample::select(vec![2u64, 3, 5, 7, 11]), 0u64..60, 1u64..=12), 0..4).prop_map(
        |parts| {
            // Each local invariant is paired with its negative at another prime so the sum vanishes.
            let mut c = BrauerClass::trivial();
            for (p, num, den) in parts {
                let other = if p == 2 { 3 } else { 2 };
                let num = num % den;
                let g = num.gcd(&den);
                let (num, den) = (num / g, den / g);
                let x = BrauerClass::from_finite(&[(p, num, den), (other, (den - num) % den, den)]).unwrap();
                c = c.tensor(&x);
            }
            c
        },
    )
}

proptest! {
    #[test]
    fn field_axioms(a in 0u64..81, b in 0u64..81, c in 0u64..81) {
        let ctx = f81();
        let (a, b, c) = (elem(&ctx, a), elem(&ctx, b), elem(&ctx, c));
        prop_assert_eq!(ctx.mul(a, ctx.add(b, c)), ctx.add(ctx.mul(a, b), ctx.mul(a, c)));
        prop_assert_eq!(ctx.frobenius(ctx.add(a, b), 1), ctx.add(ctx.frobenius(a, 1), ctx.frobenius(b, 1)));
        prop_assert_eq!(ctx.frobenius(ctx.mul(a, b), 2), ctx.mul(ctx.frobenius(a, 2), ctx.frobenius(b, 2)));
        prop_assert_eq!(ctx.frobenius(a, 4), a);
        if !a.is_zero() {
            prop_assert_eq!(ctx.mul(a, ctx.inv(a).unwrap()), ctx.one());
        }
    }

    #[test]
    fn segre_is_scale_invariant(x in prop::collection::vec(0u64..81, 3), y in prop::collection::vec(0u64..81, 2), s in 1u64..81) {
        let ctx = f81();
        let xs: Vec<_> = x.iter().map(|&v| elem(&ctx, v)).collect();
        let ys: Vec<_> = y.iter().map(|&v| elem(&ctx, v)).collect();
        let (Ok(px), Ok(py)) = (ProjPoint::new(&ctx, xs.clone()), ProjPoint::new(&ctx, ys)) else { return Ok(()) };
        let scaled = ProjPoint::new(&ctx, xs.iter().map(|&v| ctx.mul(v, elem(&ctx, s))).collect()).unwrap();
        prop_assert_eq!(segre(&px, &py).unwrap(), segre(&scaled, &py).unwrap());
    }

    #[test]
    fn grassmann_dimension_formula(a in prop::collection::vec(0u64..5, 10), b in prop::collection::vec(0u64..5, 10)) {
        let ctx = FieldContext::new(5, 1).unwrap();
        let rows = |v: &[u64]| v.chunks(5).map(|r| r.iter().map(|&c| elem(&ctx, c)).collect()).collect::<Vec<_>>();
        let (Some(la), Some(lb)) = (
            LinSubspace::from_rows(&ctx, 4, rows(&a)).unwrap(),
            LinSubspace::from_rows(&ctx, 4, rows(&b)).unwrap(),
        ) else { return Ok(()) };
        let joined = la.join(&lb).unwrap();
        let met = meet(&la, &lb).unwrap().map_or(-1, |m| m.dim() as i64);
        prop_assert_eq!(la.dim() as i64 + lb.dim() as i64, joined.dim() as i64 + met);
    }

    #[test]
    fn brauer_group_laws(a in class_strategy(), b in class_strategy(), k in -50i64..50) {
        prop_assert_eq!(a.period().lcm(&b.period()) % a.tensor(&b).period(), 0);
        prop_assert_eq!(a.inverse().inverse(), a.clone());
        prop_assert_eq!(a.power(k).tensor(&a.power(-k)), BrauerClass::trivial());
        let text = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<BrauerClass>(&text).unwrap(), a.clone());
        prop_assert_eq!(a.index(), a.period());
    }

    #[test]
    fn generated_certificates_check(a in class_strategy(), k in 1i64..60, extra in 0u64..3) {
        let dim = a.index() * (1 + extra) - 1;
        let b = a.power(k);
        prop_assume!(a.same_subgroup(&b));
        let p = SbVariety::new(a, dim).unwrap();
        let q = SbVariety::new(b, dim).unwrap();
        if let Ok(cert) = build_certificate(&p, &q) {
            prop_assert!(check_certificate(&cert).is_valid());
            prop_assert!(dimension_profile(&cert).iter().all(|&d| d == dim));
        }
    }
}
