//! Collision probabilities and deviation from the uniform ideal, exact over
//! arbitrary-size primes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::curve::supersingular_count;
use crate::field::is_probable_prime;

fn q(n: BigInt, d: BigInt) -> BigRational {
    BigRational::new(n, d)
}

fn residue(p: &BigInt) -> u64 {
    p.mod_floor(&BigInt::from(12)).to_u64().expect("residue < 12")
}

/// Number of supersingular j-invariants, for primes of any size.
pub fn node_count(p: &BigInt) -> BigInt {
    let extra = match residue(p) {
        5 | 7 => 1,
        11 => 2,
        _ => 0,
    };
    p / 12 + extra
}

/// Collision probability of the limit distribution in closed form:
/// `(12p - 44)/(p-1)^2`, `(12p - 48)/(p-1)^2`, `(12p - 80)/(p-1)^2` for
/// p = 5, 7, 11 (mod 12), and `1/n` for p = 1 (mod 12).
pub fn closed_form_collision(p: &BigInt) -> BigRational {
    let pm1 = p - 1;
    let den = &pm1 * &pm1;
    let twelve_p = p * 12;
    match residue(p) {
        5 => q(twelve_p - 44, den),
        7 => q(twelve_p - 48, den),
        11 => q(twelve_p - 80, den),
        _ => q(BigInt::one(), node_count(p)),
    }
}

/// `n = (p + k)/12` for the offset `k` of the residue class.
fn ideal_offset(p: &BigInt) -> Option<i64> {
    match residue(p) {
        5 => Some(7),
        7 => Some(5),
        11 => Some(13),
        _ => None,
    }
}

/// Collision probability of the uniform distribution on the same nodes.
pub fn ideal_collision(p: &BigInt) -> BigRational {
    q(BigInt::one(), node_count(p))
}

/// Excess collision probability over the uniform ideal, by the closed forms
/// `(64p - 320)/(p^3 + 5p^2 - 13p + 7)`, `(36p - 252)/(p^3 + 3p^2 - 9p + 5)`
/// and `(100p - 1052)/(p^3 + 11p^2 - 25p + 13)`; zero for p = 1 (mod 12).
pub fn ideal_deviation(p: &BigInt) -> BigRational {
    let p2 = p * p;
    let p3 = &p2 * p;
    let (num, den) = match residue(p) {
        5 => (p * 64 - 320, &p3 + &p2 * 5 - p * 13 + 7),
        7 => (p * 36 - 252, &p3 + &p2 * 3 - p * 9 + 5),
        11 => (p * 100 - 1052, &p3 + &p2 * 11 - p * 25 + 13),
        _ => return BigRational::zero(),
    };
    q(num, den)
}

/// `closed_form_collision(p) - 12/(p + k)`, the definition the closed forms
/// of [`ideal_deviation`] simplify.
pub fn deviation_by_difference(p: &BigInt) -> BigRational {
    match ideal_offset(p) {
        Some(k) => closed_form_collision(p) - q(BigInt::from(12), p + k),
        None => closed_form_collision(p) - ideal_collision(p),
    }
}

/// Node count from the graph side, for small primes.
pub fn small_node_count(p: u64) -> u64 {
    supersingular_count(p)
}

/// Prime closest to `target` with the given residue mod 12; ties go to the
/// smaller candidate.
pub fn nearest_prime_in_class(target: &BigInt, class: u64) -> BigInt {
    let twelve = BigInt::from(12);
    let offset = (BigInt::from(class) - target).mod_floor(&twelve);
    // Candidates target + offset + 12k above and target + offset - 12 - 12k below.
    let mut up = target + &offset;
    let mut down = &up - &twelve;
    loop {
        let du = &up - target;
        let dd = target - &down;
        if dd <= du {
            if is_probable_prime(&down) {
                return down;
            }
            down -= &twelve;
        } else {
            if is_probable_prime(&up) {
                return up;
            }
            up += &twelve;
        }
    }
}

/// Decimal scientific notation with `digits` significant figures, rounded
/// half up, e.g. `1.91e-152`.
pub fn to_scientific(x: &BigRational, digits: usize) -> String {
    assert!(digits >= 1);
    if x.is_zero() {
        return "0".to_string();
    }
    let sign = if x.is_negative() { "-" } else { "" };
    let x = x.abs();
    let ten = BigInt::from(10);
    // Estimate the exponent from digit counts, then fix it up.
    let mut exp = x.numer().to_string().len() as i64 - x.denom().to_string().len() as i64;
    let scale = |e: i64| -> BigRational {
        if e >= 0 {
            BigRational::from_integer(ten.pow(e as u32))
        } else {
            q(BigInt::one(), ten.pow((-e) as u32))
        }
    };
    while x < scale(exp) {
        exp -= 1;
    }
    while x >= scale(exp + 1) {
        exp += 1;
    }
    let shifted = x / scale(exp - digits as i64 + 1);
    let mut mantissa = (shifted + q(BigInt::one(), BigInt::from(2))).floor().to_integer();
    if mantissa >= ten.pow(digits as u32) {
        mantissa /= 10;
        exp += 1;
    }
    let m = mantissa.to_string();
    let body = if digits > 1 { format!("{}.{}", &m[..1], &m[1..]) } else { m };
    format!("{sign}{body}e{exp}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::primes_in;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn r(n: i64, d: i64) -> BigRational {
        q(b(n), b(d))
    }

    #[test]
    fn closed_forms_at_examples() {
        assert_eq!(closed_form_collision(&b(41)), r(7, 25));
        assert_eq!(closed_form_collision(&b(43)), r(13, 49));
        assert_eq!(closed_form_collision(&b(61)), r(1, 5));
        assert_eq!(ideal_deviation(&b(41)), r(2304, 76800));
        assert_eq!(ideal_deviation(&b(41)), r(3, 100));
        assert_eq!(ideal_deviation(&b(61)), r(0, 1));
    }

    #[test]
    fn deviation_identity_for_small_primes() {
        for p in primes_in(5, 1000) {
            let p = b(p as i64);
            assert_eq!(ideal_deviation(&p), deviation_by_difference(&p), "p = {p}");
            assert_eq!(node_count(&p), b(small_node_count(p.to_u64().unwrap()) as i64));
        }
    }

    #[test]
    fn scientific_rendering() {
        assert_eq!(to_scientific(&r(3, 100), 3), "3.00e-2");
        assert_eq!(to_scientific(&r(12345, 1), 3), "1.23e4");
        assert_eq!(to_scientific(&r(9999, 1000), 3), "1.00e1");
        assert_eq!(to_scientific(&r(-1, 3), 2), "-3.3e-1");
        assert_eq!(to_scientific(&r(1, 1), 1), "1e0");
    }

    #[test]
    fn nearest_primes_in_classes() {
        assert_eq!(nearest_prime_in_class(&b(100), 5), b(101));
        assert_eq!(nearest_prime_in_class(&b(100), 7), b(103));
        assert_eq!(nearest_prime_in_class(&b(100), 11), b(107));
        assert_eq!(nearest_prime_in_class(&b(100), 1), b(97));
    }
}
