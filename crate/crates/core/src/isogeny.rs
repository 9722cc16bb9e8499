//! Separable degree-2 isogenies from Velu's formulas.

use std::fmt;

use rand::Rng;

use crate::curve::{formulas, Curve, Point};
use crate::error::{Error, Result};
use crate::field::FieldElement;

/// The isogeny with kernel `{O, (kernel_x, 0)}` out of `domain`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Isogeny2 {
    domain: Curve,
    codomain: Curve,
    kernel_x: FieldElement,
    dual_kernel_x: FieldElement,
}

/// The two roots of the domain cubic other than `x0`, i.e. the roots of
/// `x^2 + x0 x + (x0^2 + a)`, in canonical order.
pub fn other_roots(curve: &Curve, x0: FieldElement) -> Result<[FieldElement; 2]> {
    if !curve.rhs(x0).is_zero() {
        return Err(Error::NotAKernelRoot(x0.to_string()));
    }
    let ctx = curve.ctx();
    let disc = -(ctx.from_u64(3) * x0.square()) - ctx.from_u64(4) * curve.a();
    let s = disc.sqrt().ok_or(Error::NotSplit { found: 1 })?;
    if s.is_zero() {
        return Err(Error::RepeatedRoot);
    }
    let half = ctx.from_u64(ctx.p().div_ceil(2));
    let r0 = (-x0 + s) * half;
    let r1 = (-x0 - s) * half;
    Ok(if r0 < r1 { [r0, r1] } else { [r1, r0] })
}

impl Isogeny2 {
    /// Velu's construction. Fails if `x0` is not a root of the domain cubic,
    /// if the other roots are not in GF(p^2), or if the codomain is singular.
    pub fn velu2(domain: &Curve, x0: FieldElement) -> Result<Self> {
        let others = other_roots(domain, x0)?;
        Self::with_other_roots(domain, x0, others)
    }

    /// [`Isogeny2::velu2`] when the remaining two roots are already known.
    pub fn with_other_roots(domain: &Curve, x0: FieldElement, others: [FieldElement; 2]) -> Result<Self> {
        let [x2, x3] = others;
        if !domain.rhs(x0).is_zero() {
            return Err(Error::NotAKernelRoot(x0.to_string()));
        }
        debug_assert!((x0 + x2 + x3).is_zero() && domain.rhs(x2).is_zero());
        let (a, b) = formulas::velu_codomain(&domain.a(), &domain.b(), &x0);
        let codomain = Curve::new(a, b).map_err(|_| Error::DegenerateCodomain)?;
        if x2 == x0 || x3 == x0 {
            return Err(Error::RepeatedRoot);
        }
        // Both other 2-torsion points map to x = -2 x0.
        let dual_kernel_x = -(x0 + x0);
        if !codomain.rhs(dual_kernel_x).is_zero() {
            return Err(Error::DualKernelMismatch);
        }
        Ok(Isogeny2 { domain: *domain, codomain, kernel_x: x0, dual_kernel_x })
    }

    pub fn domain(&self) -> &Curve {
        &self.domain
    }

    pub fn codomain(&self) -> &Curve {
        &self.codomain
    }

    pub fn kernel_x(&self) -> FieldElement {
        self.kernel_x
    }

    /// x-coordinate of the image of the other two 2-torsion points.
    pub fn dual_kernel_x(&self) -> FieldElement {
        self.dual_kernel_x
    }

    /// Image of a domain point. The kernel maps to `O`.
    pub fn apply(&self, p: &Point) -> Point {
        match *p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                match formulas::velu_map(&self.domain.a(), &self.kernel_x, &x, &y) {
                    Some((u, v)) => Point::Affine(u, v),
                    None => Point::Infinity,
                }
            }
        }
    }

    /// The Velu isogeny out of the codomain with kernel `dual_kernel_x`. Its
    /// codomain is isomorphic to, but in general not equal to, `domain`.
    pub fn dual(&self) -> Result<Self> {
        Self::velu2(&self.codomain, self.dual_kernel_x)
    }

    /// Checks that `dual ∘ self` kills exactly `O` and the 2-torsion of the
    /// domain. Exhaustive over GF(p^2) for `p <= exhaustive_limit`, otherwise
    /// on the 2-torsion plus `samples` random points.
    pub fn verify_two_map_with<R: Rng>(&self, exhaustive_limit: u64, samples: usize, rng: &mut R) -> bool {
        let Ok(dual) = self.dual() else {
            return false;
        };
        let Ok(roots) = self.domain.two_torsion_roots() else {
            return false;
        };
        let zero = self.kernel_x.ctx().zero();
        let killed = |p: &Point| dual.apply(&self.apply(p)).is_infinity();
        let is_two_torsion = |p: &Point| match p {
            Point::Infinity => true,
            Point::Affine(_, y) => y.is_zero(),
        };
        if !roots.iter().all(|&r| killed(&Point::Affine(r, zero))) {
            return false;
        }
        let ctx = self.domain.ctx();
        if ctx.p() <= exhaustive_limit {
            let points = self.domain.points();
            let kernel_size = points.iter().filter(|p| killed(p)).count();
            return kernel_size == 4 && points.iter().all(|p| killed(p) == is_two_torsion(p));
        }
        let mut checked = 0;
        while checked < samples {
            let x = ctx.element(rng.gen_range(0..ctx.p()), rng.gen_range(0..ctx.p()));
            if let Some(pt) = self.domain.lift_x(x) {
                if killed(&pt) != is_two_torsion(&pt) {
                    return false;
                }
                checked += 1;
            }
        }
        true
    }

    /// [`Isogeny2::verify_two_map_with`] with the default policy: exhaustive
    /// for `p <= 100`, 64 seeded samples above.
    pub fn verify_two_map(&self) -> bool {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(self.kernel_x.c0() ^ self.kernel_x.c1());
        self.verify_two_map_with(100, 64, &mut rng)
    }
}

impl fmt::Display for Isogeny2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}) --x0={}--> ({})",
            self.domain.j_invariant(),
            self.kernel_x,
            self.codomain.j_invariant()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldContext;
    use proptest::prelude::*;

    fn example(p: u64) -> (FieldContext, Isogeny2) {
        let ctx = FieldContext::new(p).unwrap();
        let e = Curve::from_ints(&ctx, -4, 0).unwrap();
        let iso = Isogeny2::velu2(&e, ctx.from_i64(-2)).unwrap();
        (ctx, iso)
    }

    #[test]
    fn worked_example_over_large_prime_field() {
        let (ctx, iso) = example(1009);
        assert_eq!(*iso.codomain(), Curve::from_ints(&ctx, -44, 112).unwrap());
        assert_eq!(iso.dual_kernel_x(), ctx.from_u64(4));
        assert_eq!(iso.apply(&Point::Affine(ctx.zero(), ctx.zero())), Point::Affine(ctx.from_u64(4), ctx.zero()));
        assert_eq!(iso.apply(&Point::Affine(ctx.from_i64(-2), ctx.zero())), Point::Infinity);
        assert_eq!(iso.apply(&Point::Infinity), Point::Infinity);
        let dual = iso.dual().unwrap();
        assert_eq!(dual.kernel_x(), ctx.from_u64(4));
        assert_eq!(*dual.codomain(), Curve::from_ints(&ctx, -64, 0).unwrap());
        // 1728 and 287496 = 66^3 reduced mod 1009.
        assert_eq!(iso.to_string(), "(719) --x0=1007--> (940)");
    }

    #[test]
    fn rejects_non_roots() {
        let ctx = FieldContext::new(23).unwrap();
        let e = Curve::from_ints(&ctx, -4, 0).unwrap();
        assert!(matches!(Isogeny2::velu2(&e, ctx.one()), Err(Error::NotAKernelRoot(_))));
    }

    #[test]
    fn homomorphism_exhaustive_over_f23() {
        let (_, iso) = example(23);
        let dom = *iso.domain();
        let cod = *iso.codomain();
        let pts = dom.points();
        for p in &pts {
            assert!(cod.contains(&iso.apply(p)));
        }
        for p in &pts {
            for q in &pts {
                assert_eq!(iso.apply(&dom.add(p, q)), cod.add(&iso.apply(p), &iso.apply(q)));
            }
        }
    }

    #[test]
    fn two_map_kernel_on_worked_example() {
        let (ctx, iso) = example(23);
        assert!(iso.verify_two_map());
        let dual = iso.dual().unwrap();
        let killed: Vec<Point> = iso
            .domain()
            .points()
            .into_iter()
            .filter(|p| dual.apply(&iso.apply(p)).is_infinity())
            .collect();
        let expected: Vec<Point> = [None, Some(0), Some(2), Some(-2)]
            .iter()
            .map(|x| match x {
                None => Point::Infinity,
                Some(x) => Point::Affine(ctx.from_i64(*x), ctx.zero()),
            })
            .collect();
        assert_eq!(killed.len(), 4);
        for e in expected {
            assert!(killed.contains(&e));
        }
    }

    #[test]
    fn dual_kernel_is_image_of_other_roots() {
        // t = (x0 - x2)(x0 - x3), so the image of x2 is x2 + x3 - x0 = -2 x0.
        for p in [47u64, 61, 101] {
            let ctx = FieldContext::new(p).unwrap();
            let e = crate::curve::find_initial_curve(&ctx).unwrap();
            let mut curves = vec![e];
            for r in e.two_torsion_roots().unwrap() {
                curves.push(*Isogeny2::velu2(&e, r).unwrap().codomain());
            }
            for c in curves {
                for r in c.two_torsion_roots().unwrap() {
                    let iso = Isogeny2::velu2(&c, r).unwrap();
                    assert_eq!(iso.dual_kernel_x(), -(ctx.from_u64(2) * r));
                    for x in other_roots(&c, r).unwrap() {
                        assert_eq!(iso.apply(&Point::Affine(x, ctx.zero())), Point::Affine(iso.dual_kernel_x(), ctx.zero()));
                    }
                }
            }
        }
    }

    /// For generic j, `iota ∘ dual ∘ phi = ±[2]`, where `iota` is the
    /// isomorphism `(x, y) -> (u^2 x, u^3 y)` from the dual's codomain back to
    /// the domain. Only x-coordinates are compared, which absorbs the sign.
    #[test]
    fn dual_composition_is_doubling_up_to_isomorphism() {
        let ctx = FieldContext::new(83).unwrap();
        let start = crate::curve::find_initial_curve(&ctx).unwrap();
        let mut curves = vec![start];
        for r in start.two_torsion_roots().unwrap() {
            curves.push(*Isogeny2::velu2(&start, r).unwrap().codomain());
        }
        let mut checked = 0;
        for e in curves {
            let j = e.j_invariant();
            if j.is_zero() || j.equals_int(1728) {
                continue;
            }
            for r in e.two_torsion_roots().unwrap() {
                let iso = Isogeny2::velu2(&e, r).unwrap();
                let back = *iso.dual().unwrap().codomain();
                // u^2 = (a_E b_back) / (b_E a_back) when a, b are nonzero.
                let u2 = (e.b() * back.a()).div(&(e.a() * back.b())).unwrap();
                assert_eq!(u2.square() * back.a(), e.a());
                assert_eq!(u2.square() * u2 * back.b(), e.b());
                for p in e.points().into_iter().step_by(37) {
                    let lhs = iso.dual().unwrap().apply(&iso.apply(&p)).x().map(|x| u2 * x);
                    assert_eq!(lhs, e.scalar_mul(2, &p).x());
                    checked += 1;
                }
            }
        }
        assert!(checked > 100);
    }

    fn supersingular_walk(p: u64, choices: &[usize]) -> Vec<Isogeny2> {
        let ctx = FieldContext::new(p).unwrap();
        let mut e = crate::curve::find_initial_curve(&ctx).unwrap();
        let mut out = Vec::new();
        for &c in choices {
            let roots = e.two_torsion_roots().unwrap();
            let iso = Isogeny2::velu2(&e, roots[c % 3]).unwrap();
            e = *iso.codomain();
            out.push(iso);
        }
        out
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn supersingularity_is_edge_invariant(choices in prop::collection::vec(0usize..3, 1..12)) {
            for iso in supersingular_walk(47, &choices) {
                prop_assert!(iso.domain().is_supersingular());
                prop_assert!(iso.codomain().is_supersingular());
            }
        }

        #[test]
        fn dual_returns_to_domain_class(choices in prop::collection::vec(0usize..3, 1..12)) {
            for iso in supersingular_walk(47, &choices) {
                let dual = iso.dual().unwrap();
                prop_assert_eq!(dual.codomain().j_invariant(), iso.domain().j_invariant());
                let dd = dual.dual().unwrap();
                prop_assert_eq!(dd.domain().j_invariant(), iso.domain().j_invariant());
                prop_assert_eq!(dd.codomain().j_invariant(), iso.codomain().j_invariant());
            }
        }
    }
}
