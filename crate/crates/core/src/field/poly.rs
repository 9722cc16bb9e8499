//! Dense univariate polynomials over GF(p^2), little-endian coefficients.
//! Only what root finding and the Hasse-invariant test need.

use super::{FieldContext, FieldElement};

pub(crate) type Poly = Vec<FieldElement>;

pub(crate) fn trim(mut f: Poly) -> Poly {
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
    f
}

/// Degree, with the zero polynomial reported as `None`.
pub(crate) fn degree(f: &[FieldElement]) -> Option<usize> {
    f.iter().rposition(|c| !c.is_zero())
}

pub(crate) fn sub(ctx: &FieldContext, f: &[FieldElement], g: &[FieldElement]) -> Poly {
    let n = f.len().max(g.len());
    let out = (0..n)
        .map(|i| {
            let a = f.get(i).copied().unwrap_or_else(|| ctx.zero());
            let b = g.get(i).copied().unwrap_or_else(|| ctx.zero());
            a - b
        })
        .collect();
    trim(out)
}

/// Product truncated to degree `<= max_degree`.
pub(crate) fn mul_truncated(
    ctx: &FieldContext,
    f: &[FieldElement],
    g: &[FieldElement],
    max_degree: usize,
) -> Poly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let len = (f.len() + g.len() - 1).min(max_degree + 1);
    let mut out = vec![ctx.zero(); len];
    for (i, a) in f.iter().enumerate() {
        if a.is_zero() || i >= len {
            continue;
        }
        for (j, b) in g.iter().enumerate().take(len - i) {
            if !b.is_zero() {
                out[i + j] += *a * *b;
            }
        }
    }
    trim(out)
}

pub(crate) fn mul(ctx: &FieldContext, f: &[FieldElement], g: &[FieldElement]) -> Poly {
    mul_truncated(ctx, f, g, usize::MAX - 1)
}

/// Remainder of `f` modulo nonzero `m`.
pub(crate) fn rem(f: &[FieldElement], m: &[FieldElement]) -> Poly {
    let dm = degree(m).expect("division by the zero polynomial");
    let lead_inv = m[dm].inv().expect("nonzero leading coefficient");
    let mut r: Poly = trim(f.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let factor = r[dr] * lead_inv;
        let shift = dr - dm;
        for (i, c) in m.iter().enumerate().take(dm + 1) {
            r[shift + i] -= factor * *c;
        }
        r = trim(r);
    }
    r
}

/// Exact quotient of `f` by nonzero `m` (remainder discarded).
pub(crate) fn div(ctx: &FieldContext, f: &[FieldElement], m: &[FieldElement]) -> Poly {
    let dm = degree(m).expect("division by the zero polynomial");
    let lead_inv = m[dm].inv().expect("nonzero leading coefficient");
    let mut r: Poly = trim(f.to_vec());
    let mut q = vec![ctx.zero(); r.len().saturating_sub(dm).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let factor = r[dr] * lead_inv;
        let shift = dr - dm;
        q[shift] = factor;
        for (i, c) in m.iter().enumerate().take(dm + 1) {
            r[shift + i] -= factor * *c;
        }
        r = trim(r);
    }
    trim(q)
}

pub(crate) fn monic(f: Poly) -> Poly {
    match degree(&f) {
        None => f,
        Some(d) => {
            let inv = f[d].inv().expect("nonzero leading coefficient");
            f.into_iter().take(d + 1).map(|c| c * inv).collect()
        }
    }
}

/// Monic greatest common divisor.
pub(crate) fn gcd(f: &[FieldElement], g: &[FieldElement]) -> Poly {
    let mut a = trim(f.to_vec());
    let mut b = trim(g.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    monic(a)
}

/// `base^exp mod m`.
pub(crate) fn pow_mod(ctx: &FieldContext, base: &[FieldElement], mut exp: u128, m: &[FieldElement]) -> Poly {
    let mut acc: Poly = rem(&[ctx.one()], m);
    let mut b = rem(base, m);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = rem(&mul(ctx, &acc, &b), m);
        }
        b = rem(&mul(ctx, &b, &b), m);
        exp >>= 1;
    }
    acc
}

pub(crate) fn eval(ctx: &FieldContext, f: &[FieldElement], x: FieldElement) -> FieldElement {
    f.iter().rev().fold(ctx.zero(), |acc, c| acc * x + *c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_identity() {
        let ctx = FieldContext::new(31).unwrap();
        let e = |k: i64| ctx.from_i64(k);
        let f = vec![e(3), e(-2), e(5), e(1), e(7)];
        let m = vec![e(1), e(0), e(2)];
        let q = div(&ctx, &f, &m);
        let r = rem(&f, &m);
        let back = sub(&ctx, &f, &mul(&ctx, &q, &m));
        assert_eq!(back, r);
        assert!(degree(&r).unwrap() < 2);
    }

    #[test]
    fn gcd_of_shared_linear_factor() {
        let ctx = FieldContext::new(31).unwrap();
        let e = |k: i64| ctx.from_i64(k);
        // (x - 2)(x - 3) and (x - 2)(x + 5)
        let f = mul(&ctx, &[e(-2), e(1)], &[e(-3), e(1)]);
        let g = mul(&ctx, &[e(-2), e(1)], &[e(5), e(1)]);
        assert_eq!(gcd(&f, &g), vec![e(-2), e(1)]);
    }

    #[test]
    fn truncated_product_keeps_low_terms() {
        let ctx = FieldContext::new(13).unwrap();
        let e = |k: i64| ctx.from_i64(k);
        let f = vec![e(1), e(1)];
        let full = mul(&ctx, &mul(&ctx, &f, &f), &f);
        let cut = mul_truncated(&ctx, &mul(&ctx, &f, &f), &f, 1);
        assert_eq!(cut, full[..2].to_vec());
    }
}
