use super::{GeomError, GeomResult, ProjPoint};

/// Exponent vectors of all degree-`degree` monomials in `nvars` variables,
/// in graded lexicographic order (`x_0^r` first, `x_{n}^r` last).
pub fn monomials(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(nvars: usize, degree: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == nvars {
            prefix.push(degree);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=degree).rev() {
            prefix.push(e);
            rec(nvars, degree - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if degree == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(nvars, degree, &mut Vec::with_capacity(nvars), &mut out);
    out
}

/// Segre embedding `P^n x P^m -> P^{(n+1)(m+1)-1}`, `z_{ij} = x_i y_j` row-major.
pub fn segre(x: &ProjPoint, y: &ProjPoint) -> GeomResult<ProjPoint> {
    if x.ctx != y.ctx {
        return Err(GeomError::ContextMismatch);
    }
    let ctx = &x.ctx;
    let coords = x.coords.iter().flat_map(|&a| y.coords.iter().map(move |&b| ctx.mul(a, b))).collect();
    ProjPoint::new(ctx, coords)
}

/// Degree-`r` Veronese embedding in graded lexicographic monomial order.
pub fn veronese(x: &ProjPoint, r: u32) -> ProjPoint {
    let ctx = &x.ctx;
    let coords = monomials(x.coords.len(), r)
        .iter()
        .map(|mono| {
            mono.iter().zip(&x.coords).fold(ctx.one(), |acc, (&e, &c)| ctx.mul(acc, ctx.pow(c, e as u64)))
        })
        .collect();
    ProjPoint::new(ctx, coords).expect("x^r is nonzero for the leading coordinate")
}
