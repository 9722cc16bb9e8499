//! Scalar abstractions shared by the algebra and the Markov analysis.
//!
//! Two families of traits live here:
//!
//! * [`Ring`] / [`Field`]: what the short-Weierstrass and Velu formulas need.
//!   They are implemented for every `num-traits` number type (integers,
//!   big integers, rationals, floats) through a blanket impl, and separately
//!   for [`FieldElement`](crate::field::FieldElement), whose constants depend
//!   on a runtime modulus.
//! * [`Scalar`]: probabilities. Matrices and distributions are generic over
//!   it, so the same code runs exactly over `BigRational` and approximately
//!   over `f64`/`f32`.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};

/// A commutative ring whose small integer constants can be produced from
/// any existing element (which carries the modulus, if there is one).
pub trait Ring:
    Clone + PartialEq + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    /// The integer `k` as an element of the same ring as `self`.
    fn lift(&self, k: i64) -> Self;

    fn is_zero_elem(&self) -> bool;

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    fn cube(&self) -> Self {
        self.square() * self.clone()
    }
}

/// A [`Ring`] with (partial) inversion.
pub trait Field: Ring {
    /// Multiplicative inverse, `None` for zero.
    fn try_inv(&self) -> Option<Self>;

    fn try_div(&self, rhs: &Self) -> Option<Self> {
        rhs.try_inv().map(|inv| self.clone() * inv)
    }
}

impl<T> Ring for T
where
    T: Num + Clone + Neg<Output = T> + FromPrimitive,
{
    fn lift(&self, k: i64) -> Self {
        T::from_i64(k).expect("small constant must be representable")
    }

    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

/// Number types with exact or well-behaved division. Integer types are
/// deliberately excluded.
pub trait DivisionRing: Num + Clone + Neg<Output = Self> + FromPrimitive {}

impl DivisionRing for f32 {}
impl DivisionRing for f64 {}
impl DivisionRing for BigRational {}
impl DivisionRing for num_rational::Rational64 {}

impl<T: DivisionRing> Field for T {
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(T::one() / self.clone())
        }
    }
}

/// A probability-valued scalar.
pub trait Scalar:
    Clone + Debug + PartialOrd + Send + Sync + Num + Signed + FromPrimitive + ToPrimitive + 'static
{
    /// Whether arithmetic on this type is exact.
    const EXACT: bool;

    /// `num / den`.
    fn ratio(num: i64, den: i64) -> Self;

    fn from_bigint(n: &BigInt) -> Self;

    /// Zero up to the type's working precision.
    fn negligible(&self) -> bool;

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn from_bigint(n: &BigInt) -> Self {
        n.to_f64().unwrap_or(f64::INFINITY)
    }

    fn negligible(&self) -> bool {
        self.abs() <= 1e-12
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn ratio(num: i64, den: i64) -> Self {
        num as f32 / den as f32
    }

    fn from_bigint(n: &BigInt) -> Self {
        n.to_f32().unwrap_or(f32::INFINITY)
    }

    fn negligible(&self) -> bool {
        self.abs() <= 1e-5
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn negligible(&self) -> bool {
        self.is_zero()
    }
}

/// Sum of a slice of scalars.
pub fn sum<S: Scalar>(values: &[S]) -> S {
    values.iter().fold(S::zero(), |acc, v| acc + v.clone())
}

/// L1 distance between two equally long vectors.
pub fn l1_distance<S: Scalar>(lhs: &[S], rhs: &[S]) -> S {
    assert_eq!(lhs.len(), rhs.len(), "length mismatch");
    lhs.iter()
        .zip(rhs)
        .fold(S::zero(), |acc, (x, y)| acc + (x.clone() - y.clone()).abs())
}

/// `1 / n` in any scalar type.
pub fn reciprocal<S: Scalar>(n: usize) -> S {
    S::one() / S::from_usize(n).expect("count representable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn ring_lift_matches_integer_constants() {
        assert_eq!(5i64.lift(-3), -3);
        assert_eq!(BigInt::from(1).lift(12), BigInt::from(12));
        assert_eq!(BigRational::one().lift(7), BigRational::from_integer(7.into()));
    }

    #[test]
    fn exact_and_float_ratio_agree() {
        let exact = BigRational::ratio(6, 11);
        let approx = f64::ratio(6, 11);
        assert!((exact.to_f64_lossy() - approx).abs() < 1e-15);
        assert_eq!((BigRational::EXACT, f64::EXACT), (true, false));
    }

    #[test]
    fn l1_distance_is_exact_over_rationals() {
        let a = vec![BigRational::ratio(1, 3), BigRational::ratio(2, 3)];
        let b = vec![BigRational::ratio(1, 2), BigRational::ratio(1, 2)];
        assert_eq!(l1_distance(&a, &b), BigRational::ratio(1, 3));
    }
}
