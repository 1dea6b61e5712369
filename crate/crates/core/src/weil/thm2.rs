//! The explicit birational map `P^N ~ P^n x A^{nm} x P^m` in the split case,
//! `N = (n+1)(m+1) - 1`, going through the transversal construction and the
//! Weil restriction chart of [`super::prop14_forward`].

use std::fmt;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use super::prop14::{prop14_forward_with, prop14_inverse_with};
use super::{ConjugateTuple, ExtensionBasis, WeilError, WeilResult};
use crate::field::{prime_factors, FieldContext, FieldElement, FieldError};
use crate::geom::{is_general_for, meet, segre, span, span_points, transversal, LinSubspace, ProjPoint, SpanItem};
use crate::linalg;

/// Pipeline stage at which a product-map evaluation failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Thm2Stage {
    Input,
    Transversal,
    WeilChart,
    Frame,
}

impl fmt::Display for Thm2Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Thm2Stage::Input => "input",
            Thm2Stage::Transversal => "transversal",
            Thm2Stage::WeilChart => "weil-chart",
            Thm2Stage::Frame => "frame",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{stage}: {source}")]
pub struct Thm2Error {
    pub stage: Thm2Stage,
    pub source: WeilError,
}

trait Stage<T> {
    fn at(self, stage: Thm2Stage) -> Result<T, Thm2Error>;
}

impl<T, E: Into<WeilError>> Stage<T> for Result<T, E> {
    fn at(self, stage: Thm2Stage) -> Result<T, Thm2Error> {
        self.map_err(|e| Thm2Error { stage, source: e.into() })
    }
}

/// `q = p^e` for a prime `p`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0];
    let (mut rest, mut e) = (q, 0);
    while rest > 1 {
        rest /= p;
        e += 1;
    }
    Some((p, e))
}

/// Data for the map on `P^N` over `F_q`: the point `p` of `P^m` over
/// `F_{q^{m+1}}`, the plane `L = segre(P^n x {p})` and its conjugates.
#[derive(Clone, Debug)]
pub struct Thm2Config {
    ctx: FieldContext,
    q: u64,
    e: u32,
    n: usize,
    m: usize,
    point: ProjPoint,
    conjugates: Vec<LinSubspace>,
    basis: ExtensionBasis,
}

impl Thm2Config {
    pub fn new(q: u64, n: usize, m: usize) -> WeilResult<Self> {
        let (p, e) = prime_power(q).ok_or(WeilError::Field(FieldError::NotPrime(q)))?;
        if m == 0 || m >= n {
            return Err(WeilError::BadParameters(format!("need 1 <= m < n, got n = {n}, m = {m}")));
        }
        if (m + 1).gcd(&(n + 1)) != 1 {
            return Err(WeilError::BadParameters(format!("n + 1 = {} and m + 1 = {} are not coprime", n + 1, m + 1)));
        }
        let d = (m + 1) as u32;
        let ctx = FieldContext::new(p, e * d)?;
        let point = first_spanning_point(&ctx, e, m);
        let mut rows = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut unit = vec![ctx.zero(); n + 1];
            unit[i] = ctx.one();
            let ei = ProjPoint::new(&ctx, unit)?;
            rows.push(segre(&ei, &point)?.coords().to_vec());
        }
        let big_n = (n + 1) * (m + 1) - 1;
        let l = LinSubspace::from_nonzero_rows(&ctx, big_n, rows)?;
        let conjugates: Vec<LinSubspace> = (0..d).map(|k| l.frobenius(e * k)).collect();
        let items: Vec<SpanItem<'_>> = conjugates.iter().map(SpanItem::from).collect();
        if !span(&items)?.is_whole() {
            return Err(WeilError::DegenerateOrbit);
        }
        let basis = ExtensionBasis::new(&ctx, e, d)?;
        Ok(Thm2Config { ctx, q, e, n, m, point, conjugates, basis })
    }

    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `q = p^base_e`.
    pub fn base_e(&self) -> u32 {
        self.e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `N = (n+1)(m+1) - 1`.
    pub fn ambient_dim(&self) -> usize {
        (self.n + 1) * (self.m + 1) - 1
    }

    pub fn point(&self) -> &ProjPoint {
        &self.point
    }

    pub fn l(&self) -> &LinSubspace {
        &self.conjugates[0]
    }

    pub fn conjugates(&self) -> &[LinSubspace] {
        &self.conjugates
    }

    /// All points of `P^N(F_q)` in a fixed order, for exhaustive sweeps.
    pub fn rational_points(&self) -> impl Iterator<Item = ProjPoint> + '_ {
        rational_points(&self.ctx, self.e, self.ambient_dim())
    }
}

/// Smallest point of `P^m(F_{q^{m+1}})` in the order of serialized
/// coordinates whose conjugates span `P^m`. A leading zero coordinate keeps
/// the whole orbit in a hyperplane, so the search starts at `[1 : ...]`.
fn first_spanning_point(ctx: &FieldContext, e: u32, m: usize) -> ProjPoint {
    let d = (m + 1) as u32;
    let mut elements = ctx.subfield_elements(e * d).expect("valid subfield");
    elements.sort_by_key(|&x| ctx.coeffs(x));
    let mut coords = vec![ctx.one(); m + 1];
    fn search(ctx: &FieldContext, e: u32, elements: &[FieldElement], coords: &mut Vec<FieldElement>, i: usize) -> bool {
        if i == coords.len() {
            let p = ProjPoint::new(ctx, coords.clone()).expect("leading 1");
            let orbit: Vec<_> = (0..coords.len() as u32).map(|k| p.frobenius(e * k).coords().to_vec()).collect();
            return linalg::rank(ctx, &orbit) == coords.len();
        }
        for &x in elements {
            coords[i] = x;
            if search(ctx, e, elements, coords, i + 1) {
                return true;
            }
        }
        false
    }
    assert!(search(ctx, e, &elements, &mut coords, 1), "normal bases exist");
    ProjPoint::new(ctx, coords).expect("leading 1")
}

/// Points of `P^dim` over `F_{p^e}`, leading coordinate first.
pub fn rational_points(ctx: &FieldContext, e: u32, dim: usize) -> impl Iterator<Item = ProjPoint> + '_ {
    let elements = ctx.subfield_elements(e).expect("valid subfield");
    let q = elements.len();
    (0..=dim).flat_map(move |lead| {
        let elements = elements.clone();
        (0..q.pow((dim - lead) as u32)).map(move |mut idx| {
            let mut coords = vec![ctx.zero(); dim + 1];
            coords[lead] = ctx.one();
            for c in coords[lead + 1..].iter_mut().rev() {
                *c = elements[idx % q];
                idx /= q;
            }
            ProjPoint::new(ctx, coords).expect("leading 1")
        })
    })
}

fn check_point(cfg: &Thm2Config, x: &ProjPoint, dim: usize) -> WeilResult<()> {
    if x.ctx() != &cfg.ctx || x.ambient_dim() != dim {
        return Err(WeilError::BadLength { expected: dim + 1, got: x.coords().len() });
    }
    if !x.is_defined_over(cfg.e)? {
        return Err(WeilError::NotInBaseField);
    }
    Ok(())
}

/// The transversal `M` through `x` meeting every conjugate of `L`, and the
/// meeting points, which form a Frobenius orbit.
pub fn r_l_transversal(x: &ProjPoint, cfg: &Thm2Config) -> WeilResult<(LinSubspace, Vec<ProjPoint>)> {
    if !is_general_for(x, &cfg.conjugates, cfg.m)? {
        return Err(WeilError::NotGeneral);
    }
    let m_space = transversal(x, &cfg.conjugates)?;
    let mut pts = Vec::with_capacity(cfg.conjugates.len());
    for li in &cfg.conjugates {
        let hit = meet(&m_space, li)?.ok_or(WeilError::UnexpectedMeetDimension)?;
        if hit.dim() != 0 {
            return Err(WeilError::UnexpectedMeetDimension);
        }
        pts.push(hit.frame_point(&[cfg.ctx.one()])?);
    }
    Ok((m_space, pts))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Thm2Image {
    pub x1: ProjPoint,
    pub a: Vec<FieldElement>,
    pub x2: ProjPoint,
}

/// Intermediate objects of one forward evaluation.
#[derive(Clone, Debug)]
pub struct Thm2Trace {
    pub conjugates: Vec<LinSubspace>,
    pub transversal: LinSubspace,
    pub points: Vec<ProjPoint>,
    /// `points[0]` in the echelon frame of `L`.
    pub l_frame: ProjPoint,
    /// `x` in the echelon frame of the transversal.
    pub m_frame: ProjPoint,
    pub image: Thm2Image,
}

pub fn thm2_forward(x: &ProjPoint, cfg: &Thm2Config) -> Result<Thm2Image, Thm2Error> {
    thm2_forward_traced(x, cfg).map(|t| t.image)
}

pub fn thm2_forward_traced(x: &ProjPoint, cfg: &Thm2Config) -> Result<Thm2Trace, Thm2Error> {
    check_point(cfg, x, cfg.ambient_dim()).at(Thm2Stage::Input)?;
    let (m_space, pts) = r_l_transversal(x, cfg).at(Thm2Stage::Transversal)?;
    debug_assert!(m_space.is_defined_over(cfg.e).unwrap_or(false));
    let u0 = cfg.l().frame_coords(&pts[0]).expect("meeting point lies on L");
    let l_frame = ProjPoint::new(&cfg.ctx, u0).at(Thm2Stage::WeilChart)?;
    let tuple = ConjugateTuple::new(cfg.e, cfg.m as u32 + 1, l_frame.clone()).at(Thm2Stage::WeilChart)?;
    let p14 = prop14_forward_with(&cfg.basis, &tuple).at(Thm2Stage::WeilChart)?;
    let x2_coords = m_space.frame_coords(x).expect("x lies on its transversal");
    let m_frame = ProjPoint::new(&cfg.ctx, x2_coords).at(Thm2Stage::Frame)?;
    let image = Thm2Image { x1: p14.x, a: p14.a, x2: m_frame.clone() };
    Ok(Thm2Trace { conjugates: cfg.conjugates.clone(), transversal: m_space, points: pts, l_frame, m_frame, image })
}

pub fn thm2_inverse(image: &Thm2Image, cfg: &Thm2Config) -> Result<ProjPoint, Thm2Error> {
    let Thm2Image { x1, a, x2 } = image;
    check_point(cfg, x1, cfg.n).at(Thm2Stage::Input)?;
    check_point(cfg, x2, cfg.m).at(Thm2Stage::Input)?;
    let tuple = prop14_inverse_with(&cfg.basis, x1, a).at(Thm2Stage::WeilChart)?;
    let pts: Vec<ProjPoint> = cfg
        .conjugates
        .iter()
        .zip(tuple.conjugates())
        .map(|(li, u)| li.frame_point(u.coords()))
        .collect::<Result<_, _>>()
        .at(Thm2Stage::Frame)?;
    let m_space = span_points(&pts).at(Thm2Stage::Frame)?;
    let x = m_space.frame_point(x2.coords()).at(Thm2Stage::Frame)?;
    if !is_general_for(&x, &cfg.conjugates, cfg.m).at(Thm2Stage::Transversal)? {
        return Err(Thm2Error { stage: Thm2Stage::Transversal, source: WeilError::NotGeneral });
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_rational(cfg: &Thm2Config, rng: &mut ChaCha8Rng) -> ProjPoint {
        loop {
            let coords =
                (0..=cfg.ambient_dim()).map(|_| cfg.ctx.random_in_subfield(rng, cfg.e).unwrap()).collect();
            if let Ok(p) = ProjPoint::new(&cfg.ctx, coords) {
                return p;
            }
        }
    }

    #[test]
    fn config_validation() {
        assert!(matches!(Thm2Config::new(3, 3, 1), Err(WeilError::BadParameters(_))));
        assert!(matches!(Thm2Config::new(3, 1, 2), Err(WeilError::BadParameters(_))));
        assert!(matches!(Thm2Config::new(6, 2, 1), Err(WeilError::Field(_))));
        let cfg = Thm2Config::new(3, 2, 1).unwrap();
        assert_eq!(cfg.ambient_dim(), 5);
        assert_eq!(cfg.conjugates().len(), 2);
        assert!(cfg.conjugates().iter().all(|l| l.dim() == 2));
        assert!(!cfg.point().is_defined_over(1).unwrap());
        // q = 4 lives in F_16
        let cfg4 = Thm2Config::new(4, 2, 1).unwrap();
        assert_eq!((cfg4.ctx().p(), cfg4.ctx().degree()), (2, 4));
    }

    #[test]
    fn chosen_point_is_smallest_spanning() {
        let cfg = Thm2Config::new(3, 2, 1).unwrap();
        let ctx = cfg.ctx();
        // [1:a] spans iff a is not in F_3; the smallest such key is t.
        assert_eq!(cfg.point().coords(), &[ctx.one(), ctx.t()]);
    }

    #[test]
    fn rational_point_count() {
        let ctx = FieldContext::new(3, 2).unwrap();
        let pts: Vec<_> = rational_points(&ctx, 1, 2).collect();
        assert_eq!(pts.len(), 13);
        let set: std::collections::HashSet<_> = pts.iter().cloned().collect();
        assert_eq!(set.len(), 13);
    }

    #[test]
    fn transversal_matches_exhaustive_search() {
        let cfg = Thm2Config::new(3, 2, 1).unwrap();
        let ctx = cfg.ctx();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut checked = 0;
        while checked < 5 {
            let x = random_rational(&cfg, &mut rng);
            let Ok((m_space, pts)) = r_l_transversal(&x, &cfg) else { continue };
            // Lines through x meeting L_0 are spanned by x and a point of L_0.
            let mut found = std::collections::HashSet::new();
            for a in rational_points(ctx, 2, 2) {
                let y = cfg.l().frame_point(a.coords()).unwrap();
                if y == x {
                    continue;
                }
                let line = span_points(&[x.clone(), y]).unwrap();
                if meet(&line, &cfg.conjugates()[1]).unwrap().is_some() {
                    found.insert(line);
                }
            }
            assert_eq!(found.len(), 1);
            assert!(found.contains(&m_space));
            assert_eq!(pts[1], pts[0].frobenius(1));
            checked += 1;
        }
    }

    #[test]
    fn transversal_is_equivariant() {
        let cfg = Thm2Config::new(2, 4, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut checked = 0;
        while checked < 10 {
            // an arbitrary extension point, not only rational ones
            let coords = (0..=cfg.ambient_dim()).map(|_| cfg.ctx.random(&mut rng)).collect();
            let Ok(x) = ProjPoint::new(&cfg.ctx, coords) else { continue };
            let Ok(m_space) = transversal(&x, cfg.conjugates()) else { continue };
            let shifted: Vec<_> = cfg.conjugates().iter().map(|l| l.frobenius(1)).collect();
            assert_eq!(transversal(&x.frobenius(1), &shifted).unwrap(), m_space.frobenius(1));
            checked += 1;
        }
    }

    #[test]
    fn roundtrip_q3() {
        let cfg = Thm2Config::new(3, 2, 1).unwrap();
        let mut ok = 0;
        for x in cfg.rational_points() {
            match thm2_forward(&x, &cfg) {
                Ok(img) => {
                    assert_eq!(img.x1.ambient_dim() + img.a.len() + img.x2.ambient_dim(), 5);
                    assert_eq!(thm2_inverse(&img, &cfg).unwrap(), x);
                    ok += 1;
                }
                Err(e) => assert!(e.source.gate().is_some(), "{e}"),
            }
        }
        assert!(ok >= 100, "{ok}");
    }

    #[test]
    fn inverse_then_forward() {
        let cfg = Thm2Config::new(2, 2, 1).unwrap();
        let ctx = cfg.ctx();
        let base = ctx.subfield_elements(1).unwrap();
        let mut ok = 0;
        for x1 in rational_points(ctx, 1, 2) {
            for x2 in rational_points(ctx, 1, 1) {
                for &a0 in &base {
                    for &a1 in &base {
                        let img = Thm2Image { x1: x1.clone(), a: vec![a0, a1], x2: x2.clone() };
                        match thm2_inverse(&img, &cfg) {
                            Ok(x) => {
                                assert_eq!(thm2_forward(&x, &cfg).unwrap(), img);
                                ok += 1;
                            }
                            Err(e) => assert!(e.source.gate().is_some(), "{e}"),
                        }
                    }
                }
            }
        }
        assert!(ok > 0);
    }

    #[test]
    fn indeterminacy_is_reported_with_stage() {
        let cfg = Thm2Config::new(3, 2, 1).unwrap();
        // A rational point of the Segre variety: its transversal meets L in
        // a point whose orbit is a single rational point.
        let ctx = cfg.ctx();
        let x = ProjPoint::from_ints(ctx, &[1, 0, 0, 0, 0, 0]).unwrap();
        let err = thm2_forward(&x, &cfg).unwrap_err();
        assert_eq!(err, Thm2Error { stage: Thm2Stage::WeilChart, source: WeilError::DegenerateOrbit });

        let other = Thm2Config::new(5, 2, 1).unwrap();
        let img = thm2_forward(&cfg.rational_points().nth(200).unwrap(), &cfg);
        if let Ok(img) = img {
            assert_eq!(thm2_inverse(&img, &other).unwrap_err().stage, Thm2Stage::Input);
        }
    }
}
