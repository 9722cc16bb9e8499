//! Short-Weierstrass curves `y^2 = x^3 + ax + b` over GF(p^2).

pub mod formulas;

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{cubic_roots, poly, FieldContext, FieldElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Point {
    Infinity,
    Affine(FieldElement, FieldElement),
}

impl Point {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn x(&self) -> Option<FieldElement> {
        match self {
            Point::Infinity => None,
            Point::Affine(x, _) => Some(*x),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Infinity => write!(f, "O"),
            Point::Affine(x, y) => write!(f, "({x}, {y})"),
        }
    }
}

/// A smooth curve in short-Weierstrass form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Curve {
    a: FieldElement,
    b: FieldElement,
}

impl Curve {
    /// Fails with [`Error::SingularCurve`] when the discriminant vanishes.
    pub fn new(a: FieldElement, b: FieldElement) -> Result<Self> {
        if a.ctx() != b.ctx() {
            return Err(Error::ContextMismatch);
        }
        if formulas::discriminant(&a, &b).is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(Curve { a, b })
    }

    /// Curve from small integer coefficients.
    pub fn from_ints(ctx: &FieldContext, a: i64, b: i64) -> Result<Self> {
        Curve::new(ctx.from_i64(a), ctx.from_i64(b))
    }

    pub fn a(&self) -> FieldElement {
        self.a
    }

    pub fn b(&self) -> FieldElement {
        self.b
    }

    pub fn ctx(&self) -> FieldContext {
        self.a.ctx()
    }

    pub fn discriminant(&self) -> FieldElement {
        formulas::discriminant(&self.a, &self.b)
    }

    pub fn j_invariant(&self) -> FieldElement {
        formulas::j_invariant(&self.a, &self.b).expect("smooth curve has a nonzero j denominator")
    }

    /// `x^3 + ax + b` at `x`.
    pub fn rhs(&self, x: FieldElement) -> FieldElement {
        formulas::cubic(&self.a, &self.b, &x)
    }

    pub fn contains(&self, p: &Point) -> bool {
        match *p {
            Point::Infinity => true,
            Point::Affine(x, y) => {
                x.ctx() == self.ctx() && y.ctx() == self.ctx() && y.square() == self.rhs(x)
            }
        }
    }

    pub fn neg(&self, p: &Point) -> Point {
        match *p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(x, -y),
        }
    }

    /// Chord-and-tangent addition. The line through `P` and `Q` meets the
    /// curve in a third point, whose reflection is the sum.
    pub fn add(&self, p: &Point, q: &Point) -> Point {
        let (xp, yp, xq, yq) = match (*p, *q) {
            (Point::Infinity, _) => return *q,
            (_, Point::Infinity) => return *p,
            (Point::Affine(xp, yp), Point::Affine(xq, yq)) => (xp, yp, xq, yq),
        };
        if xp == xq && yp == -yq {
            return Point::Infinity;
        }
        let ctx = self.ctx();
        let s = if xp == xq {
            (ctx.from_u64(3) * xp.square() + self.a) * (ctx.from_u64(2) * yp).inv().expect("y != 0")
        } else {
            (yp - yq) * (xp - xq).inv().expect("distinct x")
        };
        let xr = s.square() - xp - xq;
        let yr = s * (xp - xr) - yp;
        Point::Affine(xr, yr)
    }

    pub fn double(&self, p: &Point) -> Point {
        self.add(p, p)
    }

    /// `[m]P` by double-and-add; negative `m` multiplies `-P`.
    pub fn scalar_mul(&self, m: i64, p: &Point) -> Point {
        let base = if m < 0 { self.neg(p) } else { *p };
        let mut k = m.unsigned_abs();
        let mut acc = Point::Infinity;
        let mut addend = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &addend);
            }
            addend = self.double(&addend);
            k >>= 1;
        }
        acc
    }

    /// Every point with coordinates in the given iterator of x-values.
    fn points_over(&self, xs: impl Iterator<Item = FieldElement>) -> Vec<Point> {
        let mut out = vec![Point::Infinity];
        for x in xs {
            if let Some(y) = self.rhs(x).sqrt() {
                out.push(Point::Affine(x, y));
                if !y.is_zero() {
                    out.push(Point::Affine(x, -y));
                }
            }
        }
        out
    }

    /// All points with coordinates in GF(p^2); `O(p^2)` work.
    pub fn points(&self) -> Vec<Point> {
        let ctx = self.ctx();
        self.points_over(ctx.elements())
    }

    /// Points with both coordinates in the prime field.
    pub fn prime_field_points(&self) -> Vec<Point> {
        let ctx = self.ctx();
        self.points_over(ctx.base_elements())
            .into_iter()
            .filter(|p| match p {
                Point::Infinity => true,
                Point::Affine(_, y) => y.is_in_base_field(),
            })
            .collect()
    }

    /// A point whose x-coordinate is `x`, if any.
    pub fn lift_x(&self, x: FieldElement) -> Option<Point> {
        self.rhs(x).sqrt().map(|y| Point::Affine(x, y))
    }

    /// The three roots of the cubic in canonical order.
    pub fn two_torsion_roots(&self) -> Result<[FieldElement; 3]> {
        cubic_roots(self.a, self.b)
    }

    /// Hasse-invariant test: the coefficient of `x^(p-1)` in
    /// `(x^3 + ax + b)^((p-1)/2)` vanishes.
    pub fn is_supersingular(&self) -> bool {
        hasse_invariant(self).is_zero()
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ctx = self.ctx();
        write!(
            f,
            "y^2 = x^3 + ({})x + ({}) over GF({}^2), {}",
            self.a,
            self.b,
            ctx.p(),
            ctx.modulus_string()
        )
    }
}

/// Coefficient of `x^(p-1)` in `f^((p-1)/2)`, with every intermediate
/// product truncated above degree `p - 1`.
pub fn hasse_invariant(curve: &Curve) -> FieldElement {
    let ctx = curve.ctx();
    let top = (ctx.p() - 1) as usize;
    let f = vec![curve.b(), curve.a(), ctx.zero(), ctx.one()];
    let mut exp = (ctx.p() - 1) / 2;
    let mut acc = vec![ctx.one()];
    let mut base = f;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = poly::mul_truncated(&ctx, &acc, &base, top);
        }
        exp >>= 1;
        if exp > 0 {
            base = poly::mul_truncated(&ctx, &base, &base, top);
        }
    }
    acc.get(top).copied().unwrap_or_else(|| ctx.zero())
}

/// Same coefficient as [`hasse_invariant`] in `O(p)`: `g = f^m` satisfies
/// `f g' = m f' g`, i.e.
/// `b (n+1) g[n+1] = (3m - n + 2) g[n-2] + a (m - n) g[n]`.
pub fn hasse_invariant_by_recurrence(curve: &Curve) -> FieldElement {
    let ctx = curve.ctx();
    let p = ctx.p();
    let m = (p - 1) / 2;
    let (a, b) = (curve.a(), curve.b());
    if b.is_zero() {
        // f^m = x^m (x^2 + a)^m; need the x^m coefficient of (x^2 + a)^m.
        if m % 2 == 1 {
            return ctx.zero();
        }
        let k = m / 2;
        let mut binom = ctx.one();
        for i in 0..k {
            binom = binom * ctx.from_u64(m - i) * ctx.from_u64(i + 1).inv().expect("i + 1 < p");
        }
        return binom * a.pow(k as u128);
    }
    let top = (p - 1) as usize;
    let b_inv = b.inv().expect("b != 0");
    let mut g = vec![ctx.zero(); top + 1];
    g[0] = b.pow(m as u128);
    for n in 0..top {
        let back = if n >= 2 { g[n - 2] } else { ctx.zero() };
        let c1 = ctx.from_i64(3 * m as i64 - n as i64 + 2);
        let c2 = ctx.from_i64(m as i64 - n as i64);
        let rhs = c1 * back + a * c2 * g[n];
        g[n + 1] = rhs * b_inv * ctx.from_u64(n as u64 + 1).inv().expect("n + 1 < p");
    }
    g[top]
}

/// Number of supersingular j-invariants in characteristic `p`.
pub fn supersingular_count(p: u64) -> u64 {
    let extra = match p % 12 {
        1 => 0,
        5 | 7 => 1,
        11 => 2,
        _ => 0,
    };
    p / 12 + extra
}

/// A curve with the given j-invariant. `j = 0` and `j = 1728` get the fixed
/// models `y^2 = x^3 - 1` and `y^2 = x^3 + x`.
pub fn curve_from_j(j: FieldElement) -> Curve {
    let ctx = j.ctx();
    if j.is_zero() {
        return Curve::from_ints(&ctx, 0, -1).expect("p > 3");
    }
    if j.equals_int(1728) {
        return Curve::from_ints(&ctx, 1, 0).expect("p > 3");
    }
    let k = j * (ctx.from_u64(1728) - j).inv().expect("j != 1728");
    Curve::new(ctx.from_u64(3) * k, ctx.from_u64(2) * k).expect("j not in {0, 1728}")
}

/// Deterministic starting curve for the walk and the graph search.
pub fn find_initial_curve(ctx: &FieldContext) -> Result<Curve> {
    let p = ctx.p();
    if p % 4 == 3 {
        return Curve::from_ints(ctx, 1, 0);
    }
    if p % 3 == 2 {
        return Curve::from_ints(ctx, 0, -1);
    }
    // Screen with the linear-time recurrence, confirm with the powering test.
    for b in 1..p {
        for a in 0..p {
            if let Ok(curve) = Curve::new(ctx.from_u64(a), ctx.from_u64(b)) {
                if hasse_invariant_by_recurrence(&curve).is_zero() && curve.is_supersingular() {
                    return Ok(curve);
                }
            }
        }
    }
    Err(Error::SearchExhausted(p))
}
