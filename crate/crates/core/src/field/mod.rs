//! Arithmetic in GF(p) and its quadratic extension GF(p^2).
//!
//! GF(p^2) is built as GF(p)[z] / (z^2 - r) for a fixed non-residue `r`:
//! `r = -1` when p = 3 (mod 4), otherwise the smallest positive non-residue.
//! Elements are pairs `(c0, c1)` meaning `c0 + c1*z`, always reduced, and are
//! totally ordered lexicographically on `(c0, c1)`.

mod modular;
pub(crate) mod poly;
mod roots;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

pub use modular::{is_prime, is_probable_prime, legendre, primes_in, smallest_nonresidue};
pub use roots::{cubic_roots, cubic_roots_exhaustive, cubic_roots_with, RootFinder};

use crate::error::{Error, Result};
use crate::scalar::{Field, Ring};
use modular::{add_mod, inv_mod, mul_mod, sqrt_mod, sub_mod};

/// The prime `p` together with the choice of quadratic modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldContext {
    p: u64,
    /// `z^2 = nonresidue`.
    nonresidue: u64,
}

impl FieldContext {
    /// Largest supported prime; products of residues are taken in `u128`.
    pub const MAX_PRIME: u64 = 1 << 62;

    pub fn new(p: u64) -> Result<Self> {
        if p <= 3 || p > Self::MAX_PRIME || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        let nonresidue = if p % 4 == 3 { p - 1 } else { smallest_nonresidue(p) };
        Ok(FieldContext { p, nonresidue })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Field size `q = p^2`.
    pub fn order(&self) -> u128 {
        self.p as u128 * self.p as u128
    }

    /// The residue `r` with `z^2 = r`.
    pub fn nonresidue(&self) -> u64 {
        self.nonresidue
    }

    /// Lower coefficients `(m0, m1)` of the monic modulus `z^2 + m1*z + m0`.
    pub fn modulus_poly(&self) -> (u64, u64) {
        ((self.p - self.nonresidue) % self.p, 0)
    }

    /// Human-readable modulus, e.g. `z^2 + 1` or `z^2 - 2`.
    pub fn modulus_string(&self) -> String {
        if self.nonresidue == self.p - 1 {
            "z^2 + 1".to_string()
        } else {
            format!("z^2 - {}", self.nonresidue)
        }
    }

    #[inline]
    pub fn element(&self, c0: u64, c1: u64) -> FieldElement {
        FieldElement {
            c0: c0 % self.p,
            c1: c1 % self.p,
            ctx: *self,
        }
    }

    pub fn from_u64(&self, n: u64) -> FieldElement {
        self.element(n, 0)
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        let r = (n as i128).rem_euclid(self.p as i128) as u64;
        self.element(r, 0)
    }

    pub fn zero(&self) -> FieldElement {
        self.element(0, 0)
    }

    pub fn one(&self) -> FieldElement {
        self.element(1, 0)
    }

    /// The adjoined generator `z`.
    pub fn gen(&self) -> FieldElement {
        self.element(0, 1)
    }

    /// Every element of GF(p^2), in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let p = self.p;
        (0..p).flat_map(move |c0| (0..p).map(move |c1| self.element(c0, c1)))
    }

    /// Every element of the prime subfield GF(p).
    pub fn base_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.p).map(move |c0| self.element(c0, 0))
    }

    /// Parse the canonical text encoding (`"c0"` or `"c0+c1*z"`).
    pub fn parse_element(&self, text: &str) -> Result<FieldElement> {
        let bad = || Error::ParseElement(text.to_string());
        let text = text.trim();
        let parse = |s: &str| -> Result<u64> {
            let v: u64 = s.trim().parse().map_err(|_| bad())?;
            if v >= self.p {
                return Err(bad());
            }
            Ok(v)
        };
        match text.split_once('+') {
            None => Ok(self.element(parse(text)?, 0)),
            Some((c0, rest)) => {
                let c1 = rest.trim().strip_suffix("*z").ok_or_else(bad)?;
                Ok(self.element(parse(c0)?, parse(c1)?))
            }
        }
    }
}

impl fmt::Display for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^2), {}", self.p, self.modulus_string())
    }
}

/// An element `c0 + c1*z` of GF(p^2).
#[derive(Clone, Copy, Debug)]
pub struct FieldElement {
    c0: u64,
    c1: u64,
    ctx: FieldContext,
}

impl FieldElement {
    #[inline]
    pub fn c0(&self) -> u64 {
        self.c0
    }

    #[inline]
    pub fn c1(&self) -> u64 {
        self.c1
    }

    #[inline]
    pub fn ctx(&self) -> FieldContext {
        self.ctx
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.c0 == 0 && self.c1 == 0
    }

    pub fn is_one(&self) -> bool {
        self.c0 == 1 && self.c1 == 0
    }

    /// Whether the element lies in the prime subfield.
    pub fn is_in_base_field(&self) -> bool {
        self.c1 == 0
    }

    /// `self == k` for a small integer `k`.
    pub fn equals_int(&self, k: i64) -> bool {
        *self == self.ctx.from_i64(k)
    }

    /// The p-power Frobenius: `c0 - c1*z`, since `z^p = -z`.
    pub fn frobenius(&self) -> Self {
        let p = self.ctx.p;
        self.ctx.element(self.c0, (p - self.c1) % p)
    }

    /// The norm `c0^2 - r c1^2` down to GF(p).
    pub fn norm(&self) -> u64 {
        let p = self.ctx.p;
        sub_mod(
            mul_mod(self.c0, self.c0, p),
            mul_mod(self.ctx.nonresidue, mul_mod(self.c1, self.c1, p), p),
            p,
        )
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // x^{-1} = conj(x) / N(x)
        let p = self.ctx.p;
        let n_inv = inv_mod(self.norm(), p);
        Ok(self
            .ctx
            .element(mul_mod(self.c0, n_inv, p), mul_mod((p - self.c1) % p, n_inv, p)))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(*self * rhs.inv()?)
    }

    pub fn square(&self) -> Self {
        *self * *self
    }

    pub fn pow(&self, mut exp: u128) -> Self {
        let mut acc = self.ctx.one();
        let mut base = *self;
        while exp > 0 {
            if exp & 1 == 1 {
                acc *= base;
            }
            base = base.square();
            exp >>= 1;
        }
        acc
    }

    /// Quadratic character in GF(p^2): 1, -1, or 0.
    pub fn legendre(&self) -> i8 {
        // chi_{p^2}(x) = chi_p(N(x))
        legendre(self.norm(), self.ctx.p)
    }

    pub fn is_square(&self) -> bool {
        self.legendre() >= 0
    }

    /// A square root in GF(p^2), or `None` when none exists.
    pub fn sqrt(&self) -> Option<Self> {
        let ctx = self.ctx;
        let p = ctx.p;
        if self.is_zero() {
            return Some(*self);
        }
        if self.c1 == 0 {
            // Every element of GF(p) is a square in GF(p^2).
            if let Some(r) = sqrt_mod(self.c0, p) {
                return Some(ctx.element(r, 0));
            }
            let t = mul_mod(self.c0, inv_mod(ctx.nonresidue, p), p);
            let r = sqrt_mod(t, p)?;
            return Some(ctx.element(0, r));
        }
        let n = sqrt_mod(self.norm(), p)?;
        let half = inv_mod(2, p);
        let mut b0_sq = mul_mod(add_mod(self.c0, n, p), half, p);
        if legendre(b0_sq, p) == -1 {
            b0_sq = mul_mod(sub_mod(self.c0, n, p), half, p);
        }
        let b0 = sqrt_mod(b0_sq, p)?;
        if b0 == 0 {
            return None;
        }
        let b1 = mul_mod(self.c1, inv_mod(mul_mod(2, b0, p), p), p);
        let root = ctx.element(b0, b1);
        debug_assert_eq!(root.square(), *self);
        Some(root)
    }

    #[inline]
    fn check_ctx(&self, other: &Self) {
        debug_assert_eq!(self.ctx, other.ctx, "{}", Error::ContextMismatch);
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.c0 == other.c0 && self.c1 == other.c1 && self.ctx.p == other.ctx.p
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.c0.hash(state);
        self.c1.hash(state);
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.c0, self.c1).cmp(&(other.c0, other.c1))
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical text encoding: `c0` when `c1 = 0`, else `c0+c1*z`.
impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c1 == 0 {
            write!(f, "{}", self.c0)
        } else {
            write!(f, "{}+{}*z", self.c0, self.c1)
        }
    }
}

impl Add for FieldElement {
    type Output = Self;

    #[inline]
    fn add(self, rhs: Self) -> Self {
        self.check_ctx(&rhs);
        let p = self.ctx.p;
        FieldElement {
            c0: add_mod(self.c0, rhs.c0, p),
            c1: add_mod(self.c1, rhs.c1, p),
            ctx: self.ctx,
        }
    }
}

impl Sub for FieldElement {
    type Output = Self;

    #[inline]
    fn sub(self, rhs: Self) -> Self {
        self.check_ctx(&rhs);
        let p = self.ctx.p;
        FieldElement {
            c0: sub_mod(self.c0, rhs.c0, p),
            c1: sub_mod(self.c1, rhs.c1, p),
            ctx: self.ctx,
        }
    }
}

impl Mul for FieldElement {
    type Output = Self;

    #[inline]
    fn mul(self, rhs: Self) -> Self {
        self.check_ctx(&rhs);
        if self.ctx.p < modular::SMALL_MODULUS {
            let p = self.ctx.p;
            let r = self.ctx.nonresidue;
            let c0 = (self.c0 * rhs.c0 % p + r * (self.c1 * rhs.c1 % p)) % p;
            let c1 = (self.c0 * rhs.c1 + self.c1 * rhs.c0) % p;
            return FieldElement { c0, c1, ctx: self.ctx };
        }
        let p = self.ctx.p as u128;
        let (a0, a1, b0, b1) = (self.c0 as u128, self.c1 as u128, rhs.c0 as u128, rhs.c1 as u128);
        let r = self.ctx.nonresidue as u128;
        let c0 = (a0 * b0 % p + r * (a1 * b1 % p)) % p;
        let c1 = (a0 * b1 % p + a1 * b0 % p) % p;
        FieldElement {
            c0: c0 as u64,
            c1: c1 as u64,
            ctx: self.ctx,
        }
    }
}

impl Neg for FieldElement {
    type Output = Self;

    #[inline]
    fn neg(self) -> Self {
        let p = self.ctx.p;
        FieldElement {
            c0: (p - self.c0) % p,
            c1: (p - self.c1) % p,
            ctx: self.ctx,
        }
    }
}

impl AddAssign for FieldElement {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl SubAssign for FieldElement {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl MulAssign for FieldElement {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl Ring for FieldElement {
    fn lift(&self, k: i64) -> Self {
        self.ctx.from_i64(k)
    }

    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

impl Field for FieldElement {
    fn try_inv(&self) -> Option<Self> {
        self.inv().ok()
    }
}
