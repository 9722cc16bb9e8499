//! Short-Weierstrass and degree-2 Velu formulas, generic over the coefficient
//! ring. The same code runs over GF(p^2) for the hash and over the integers
//! or rationals for hand-checkable examples.

use crate::scalar::{Field, Ring};

/// `-16 (4a^3 + 27b^2)`.
pub fn discriminant<R: Ring>(a: &R, b: &R) -> R {
    let inner = a.lift(4) * a.cube() + a.lift(27) * b.square();
    -(a.lift(16) * inner)
}

/// `1728 * 4a^3 / (4a^3 + 27b^2)`, or `None` when the denominator vanishes.
pub fn j_invariant<F: Field>(a: &F, b: &F) -> Option<F> {
    let four_a3 = a.lift(4) * a.cube();
    let denom = four_a3.clone() + a.lift(27) * b.square();
    (a.lift(1728) * four_a3).try_div(&denom)
}

/// Value of the cubic `x^3 + a x + b`.
pub fn cubic<R: Ring>(a: &R, b: &R, x: &R) -> R {
    x.cube() + a.clone() * x.clone() + b.clone()
}

/// Codomain coefficients `(A, B)` of the 2-isogeny with kernel `(x0, 0)`:
/// `A = -15 x0^2 - 4a`, `B = 8b - 14 x0^3`.
pub fn velu_codomain<R: Ring>(a: &R, b: &R, x0: &R) -> (R, R) {
    let big_a = -(a.lift(15) * x0.square()) - a.lift(4) * a.clone();
    let big_b = a.lift(8) * b.clone() - a.lift(14) * x0.cube();
    (big_a, big_b)
}

/// `t = 3 x0^2 + a`, the numerator shared by both coordinate maps.
pub fn velu_t<R: Ring>(a: &R, x0: &R) -> R {
    a.lift(3) * x0.square() + a.clone()
}

/// Image of the affine point `(x, y)` under the isogeny with kernel
/// `(x0, 0)`: `(x + t/(x - x0), y - t y/(x - x0)^2)`. `None` at the pole,
/// i.e. when `x = x0`.
pub fn velu_map<F: Field>(a: &F, x0: &F, x: &F, y: &F) -> Option<(F, F)> {
    let t = velu_t(a, x0);
    let inv = (x.clone() - x0.clone()).try_inv()?;
    let new_x = x.clone() + t.clone() * inv.clone();
    let new_y = y.clone() - t * y.clone() * inv.square();
    Some((new_x, new_y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&0i64, &0i64), 0);
        assert_eq!(discriminant(&-4i64, &0i64), 4096);
        assert_eq!(4096 % 23, 2);
        assert_eq!(discriminant(&0i64, &-1i64), -432);
    }

    #[test]
    fn velu_on_integer_example() {
        let (a, b) = velu_codomain(&BigInt::from(-4), &BigInt::from(0), &BigInt::from(-2));
        assert_eq!((a, b), (BigInt::from(-44), BigInt::from(112)));
        let (a2, b2) = velu_codomain(&BigInt::from(-44), &BigInt::from(112), &BigInt::from(4));
        assert_eq!((a2, b2), (BigInt::from(-64), BigInt::from(0)));
    }

    #[test]
    fn velu_map_sends_other_torsion_to_four() {
        let (x, y) = velu_map(&q(-4), &q(-2), &q(0), &q(0)).unwrap();
        assert_eq!((x, y), (q(4), q(0)));
        let (x, y) = velu_map(&q(-4), &q(-2), &q(2), &q(0)).unwrap();
        assert_eq!((x, y), (q(4), q(0)));
        assert!(velu_map(&q(-4), &q(-2), &q(-2), &q(0)).is_none());
    }

    #[test]
    fn j_invariant_of_special_forms() {
        assert_eq!(j_invariant(&q(0), &q(5)), Some(q(0)));
        assert_eq!(j_invariant(&q(-4), &q(0)), Some(q(1728)));
        assert_eq!(j_invariant(&q(-64), &q(0)), Some(q(1728)));
        assert_eq!(j_invariant(&q(0), &q(0)), None);
    }
}
