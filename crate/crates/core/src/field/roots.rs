//! Roots of depressed cubics `x^3 + a x + b` over GF(p^2).

use super::poly::{self, Poly};
use super::{FieldContext, FieldElement};
use crate::error::{Error, Result};

/// Root-finding strategy for [`cubic_roots_with`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RootFinder {
    /// Distinct-degree then equal-degree factorisation (Cantor-Zassenhaus)
    /// with a deterministic sequence of shifts.
    #[default]
    Splitting,
    /// Evaluate the cubic at every element of GF(p^2).
    Exhaustive,
}

/// The three distinct roots of `x^3 + a x + b` in canonical order.
///
/// Fails with [`Error::RepeatedRoot`] when the discriminant vanishes and with
/// [`Error::NotSplit`] when fewer than three roots lie in GF(p^2).
pub fn cubic_roots(a: FieldElement, b: FieldElement) -> Result<[FieldElement; 3]> {
    cubic_roots_with(a, b, RootFinder::Splitting)
}

/// [`cubic_roots`] by brute-force scan of the field.
pub fn cubic_roots_exhaustive(a: FieldElement, b: FieldElement) -> Result<[FieldElement; 3]> {
    cubic_roots_with(a, b, RootFinder::Exhaustive)
}

pub fn cubic_roots_with(a: FieldElement, b: FieldElement, finder: RootFinder) -> Result<[FieldElement; 3]> {
    let ctx = a.ctx();
    let four = ctx.from_u64(4);
    let twenty_seven = ctx.from_u64(27);
    let disc = four * a * a * a + twenty_seven * b * b;
    if disc.is_zero() {
        return Err(Error::RepeatedRoot);
    }
    let mut roots = match finder {
        RootFinder::Exhaustive => {
            let f = [b, a, ctx.zero(), ctx.one()];
            ctx.elements().filter(|&x| poly::eval(&ctx, &f, x).is_zero()).collect()
        }
        RootFinder::Splitting => split_roots(&ctx, a, b),
    };
    roots.sort();
    roots.dedup();
    match roots.as_slice() {
        [r0, r1, r2] => Ok([*r0, *r1, *r2]),
        other => Err(Error::NotSplit { found: other.len() }),
    }
}

/// All distinct GF(p^2)-roots of the cubic, unordered.
fn split_roots(ctx: &FieldContext, a: FieldElement, b: FieldElement) -> Vec<FieldElement> {
    let f: Poly = vec![b, a, ctx.zero(), ctx.one()];
    // g = gcd(x^q - x, f) is the product of the distinct linear factors.
    let x = vec![ctx.zero(), ctx.one()];
    let xq = poly::pow_mod(ctx, &x, ctx.order(), &f);
    let g = poly::gcd(&poly::sub(ctx, &xq, &x), &f);
    let mut out = Vec::new();
    equal_degree_split(ctx, g, &mut out);
    out
}

/// Split a monic squarefree product of distinct linear factors.
fn equal_degree_split(ctx: &FieldContext, g: Poly, out: &mut Vec<FieldElement>) {
    match poly::degree(&g) {
        None | Some(0) => {}
        Some(1) => out.push(-g[0]),
        Some(2) => {
            // x^2 + c1 x + c0
            let (c0, c1) = (g[0], g[1]);
            let two_inv = ctx.from_u64(2).inv().expect("p > 2");
            let disc = c1 * c1 - ctx.from_u64(4) * c0;
            let s = disc.sqrt().expect("split quadratic has a square discriminant");
            out.push((-c1 + s) * two_inv);
            out.push((-c1 - s) * two_inv);
        }
        Some(d) => {
            let half = (ctx.order() - 1) / 2;
            for delta in shifts(ctx) {
                let shifted = vec![delta, ctx.one()];
                let h = poly::pow_mod(ctx, &shifted, half, &g);
                let h = poly::sub(ctx, &h, &[ctx.one()]);
                let factor = poly::gcd(&h, &g);
                let df = poly::degree(&factor).unwrap_or(0);
                if df > 0 && df < d {
                    let rest = poly::div(ctx, &g, &factor);
                    equal_degree_split(ctx, factor, out);
                    equal_degree_split(ctx, poly::monic(rest), out);
                    return;
                }
            }
            unreachable!("no splitting shift found for a split polynomial");
        }
    }
}

/// Deterministic shift sequence `k0 + k1 z`, with `k1 >= 1` first: shifts
/// from GF(p) alone never separate roots that all lie in GF(p).
fn shifts(ctx: &FieldContext) -> impl Iterator<Item = FieldElement> + '_ {
    let p = ctx.p();
    (1..p)
        .flat_map(move |k1| (0..p).map(move |k0| ctx.element(k0, k1)))
        .chain((0..p).map(move |k0| ctx.element(k0, 0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_x3_minus_4x_over_f23() {
        let ctx = FieldContext::new(23).unwrap();
        let roots = cubic_roots(ctx.from_i64(-4), ctx.zero()).unwrap();
        // x(x - 2)(x + 2)
        assert_eq!(roots, [ctx.from_u64(0), ctx.from_u64(2), ctx.from_u64(21)]);
    }

    #[test]
    fn roots_of_x3_minus_1_include_one() {
        let ctx = FieldContext::new(23).unwrap();
        let roots = cubic_roots(ctx.zero(), ctx.from_i64(-1)).unwrap();
        assert!(roots.contains(&ctx.one()));
        for r in roots {
            assert!(r.pow(3).is_one());
        }
    }

    #[test]
    fn repeated_root_is_rejected() {
        let ctx = FieldContext::new(23).unwrap();
        // (x - 1)^2 (x + 2)
        for finder in [RootFinder::Splitting, RootFinder::Exhaustive] {
            assert_eq!(
                cubic_roots_with(ctx.from_i64(-3), ctx.from_i64(2), finder),
                Err(Error::RepeatedRoot)
            );
        }
    }

    #[test]
    fn irreducible_cubic_is_not_split() {
        // An ordinary curve with j = 0 over p = 13 (1 mod 3): x^3 + 2 has no roots
        // in GF(13^2) because 2 is not a cube there.
        let ctx = FieldContext::new(13).unwrap();
        let cubes: std::collections::HashSet<_> = ctx.elements().map(|x| x.pow(3)).collect();
        let b = ctx.elements().find(|b| !b.is_zero() && !cubes.contains(&-*b)).unwrap();
        for finder in [RootFinder::Splitting, RootFinder::Exhaustive] {
            assert_eq!(cubic_roots_with(ctx.zero(), b, finder), Err(Error::NotSplit { found: 0 }));
        }
    }

    #[test]
    fn splitting_matches_exhaustive_scan() {
        for p in [5u64, 7, 11, 13, 23, 29] {
            let ctx = FieldContext::new(p).unwrap();
            for (i, a) in ctx.elements().enumerate().step_by(7) {
                for b in ctx.elements().skip(i % 5).step_by(11) {
                    let fast = cubic_roots_with(a, b, RootFinder::Splitting);
                    let slow = cubic_roots_with(a, b, RootFinder::Exhaustive);
                    assert_eq!(fast, slow, "p = {p}, a = {a}, b = {b}");
                }
            }
        }
    }

    #[test]
    fn roots_satisfy_vieta() {
        let ctx = FieldContext::new(47).unwrap();
        let mut checked = 0;
        for a in ctx.elements().step_by(97) {
            for b in ctx.elements().step_by(89) {
                if let Ok([r0, r1, r2]) = cubic_roots(a, b) {
                    assert!((r0 + r1 + r2).is_zero());
                    assert_eq!(r0 * r1 + r1 * r2 + r0 * r2, a);
                    assert_eq!(r0 * r1 * r2, -b);
                    checked += 1;
                }
            }
        }
        assert!(checked > 10);
    }
}
