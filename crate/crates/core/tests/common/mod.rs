//! Brute-force reference walker with its own GF(p^2) arithmetic. It shares
//! no code with the library: roots are found by scanning every field
//! element, and the dual kernel is taken from the image of a root rather
//! than from any closed form.

#![allow(dead_code)]

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fp2 {
    pub c0: u64,
    pub c1: u64,
}

#[derive(Clone, Copy, Debug)]
pub struct Gf {
    pub p: u64,
    /// `z^2 = r`.
    pub r: u64,
}

impl Gf {
    pub fn new(p: u64) -> Self {
        let r = if p % 4 == 3 {
            p - 1
        } else {
            let squares: Vec<u64> = (1..p).map(|x| x * x % p).collect();
            (2..p).find(|d| !squares.contains(d)).unwrap()
        };
        Gf { p, r }
    }

    pub fn int(&self, n: i64) -> Fp2 {
        Fp2 { c0: n.rem_euclid(self.p as i64) as u64, c1: 0 }
    }

    pub fn add(&self, x: Fp2, y: Fp2) -> Fp2 {
        Fp2 { c0: (x.c0 + y.c0) % self.p, c1: (x.c1 + y.c1) % self.p }
    }

    pub fn neg(&self, x: Fp2) -> Fp2 {
        Fp2 { c0: (self.p - x.c0) % self.p, c1: (self.p - x.c1) % self.p }
    }

    pub fn sub(&self, x: Fp2, y: Fp2) -> Fp2 {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: Fp2, y: Fp2) -> Fp2 {
        let p = self.p;
        Fp2 {
            c0: (x.c0 * y.c0 + self.r * (x.c1 * y.c1 % p)) % p,
            c1: (x.c0 * y.c1 + x.c1 * y.c0) % p,
        }
    }

    /// Inverse by exhaustive search.
    pub fn inv(&self, x: Fp2) -> Fp2 {
        self.all().find(|&y| self.mul(x, y) == self.int(1)).expect("nonzero element")
    }

    pub fn all(&self) -> impl Iterator<Item = Fp2> + '_ {
        (0..self.p).flat_map(move |c0| (0..self.p).map(move |c1| Fp2 { c0, c1 }))
    }

    pub fn is_zero(&self, x: Fp2) -> bool {
        x.c0 == 0 && x.c1 == 0
    }
}

/// Curve `y^2 = x^3 + a x + b` with `a, b` as raw pairs.
#[derive(Clone, Copy, Debug)]
pub struct RawCurve {
    pub a: Fp2,
    pub b: Fp2,
}

pub fn cubic(f: &Gf, e: RawCurve, x: Fp2) -> Fp2 {
    f.add(f.add(f.mul(f.mul(x, x), x), f.mul(e.a, x)), e.b)
}

/// All roots of the cubic, sorted by `(c0, c1)`.
pub fn roots(f: &Gf, e: RawCurve) -> Vec<Fp2> {
    f.all().filter(|&x| f.is_zero(cubic(f, e, x))).collect()
}

pub fn j_invariant(f: &Gf, e: RawCurve) -> Fp2 {
    let a3 = f.mul(f.int(4), f.mul(f.mul(e.a, e.a), e.a));
    let b2 = f.mul(f.int(27), f.mul(e.b, e.b));
    f.mul(f.mul(f.int(1728), a3), f.inv(f.add(a3, b2)))
}

/// Codomain of the 2-isogeny with kernel `(x0, 0)`, and the x-coordinate of
/// the image of another 2-torsion point `x1`.
pub fn velu(f: &Gf, e: RawCurve, x0: Fp2, x1: Fp2) -> (RawCurve, Fp2) {
    let x0sq = f.mul(x0, x0);
    let t = f.add(f.mul(f.int(3), x0sq), e.a);
    let w = f.mul(x0, t);
    let a = f.sub(e.a, f.mul(f.int(5), t));
    let b = f.sub(e.b, f.mul(f.int(7), w));
    let image = f.add(x1, f.mul(t, f.inv(f.sub(x1, x0))));
    (RawCurve { a, b }, image)
}

/// Initial curve for primes where it is fixed by a congruence.
pub fn initial_curve(f: &Gf) -> Option<RawCurve> {
    if f.p % 4 == 3 {
        Some(RawCurve { a: f.int(1), b: f.int(0) })
    } else if f.p % 3 == 2 {
        Some(RawCurve { a: f.int(0), b: f.int(-1) })
    } else {
        None
    }
}

/// End j-invariant of the walk on `bits`, recomputing everything each step.
pub fn walk(f: &Gf, bits: &[bool]) -> Fp2 {
    let mut e = initial_curve(f).expect("prime fixed by congruence");
    let mut forbidden = roots(f, e)[0];
    for &bit in bits {
        let rs = roots(f, e);
        assert_eq!(rs.len(), 3, "cubic splits");
        let others: Vec<Fp2> = rs.into_iter().filter(|&x| x != forbidden).collect();
        let (chosen, rest) = if bit { (others[1], others[0]) } else { (others[0], others[1]) };
        let (next, image) = velu(f, e, chosen, rest);
        e = next;
        forbidden = image;
    }
    j_invariant(f, e)
}

/// All `2^len` bitstrings, most significant bit first.
pub fn all_bitstrings(len: usize) -> Vec<Vec<bool>> {
    (0..1u32 << len).map(|n| (0..len).rev().map(|i| (n >> i) & 1 == 1).collect()).collect()
}
