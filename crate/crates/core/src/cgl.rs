//! The CGL hash: a no-backtracking walk on 2-isogenies driven by input bits.
//!
//! Conventions (tag [`CONVENTION_TAG`]):
//! * GF(p^2) modulus: `z^2 + 1` for p = 3 (mod 4), else `z^2 - d` with `d`
//!   the least non-residue;
//! * root order: lexicographic on `(c0, c1)`; the starting forbidden root is
//!   the smallest root of the initial curve, and at each step bit 0 picks the
//!   smaller of the two remaining roots;
//! * bytes are expanded to bits most-significant first.

use serde::{Deserialize, Serialize};

use crate::curve::{find_initial_curve, Curve};
use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};
use crate::isogeny::{other_roots, Isogeny2};

pub const CONVENTION_TAG: &str = "lex-walk-v1";

/// Machine-readable description of the conventions that fix hash values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Convention {
    pub name: String,
    pub modulus_rule: String,
    pub root_order: String,
    pub bit_order: String,
}

impl Default for Convention {
    fn default() -> Self {
        Convention {
            name: CONVENTION_TAG.to_string(),
            modulus_rule: "z^2+1 if p=3 mod 4, else z^2-d with d the least non-residue".to_string(),
            root_order: "lexicographic (c0, c1); start forbids the least root; bit 0 takes the lesser remaining root"
                .to_string(),
            bit_order: "msb-first within each byte".to_string(),
        }
    }
}

/// Walk state: the current curve and the root whose isogeny would backtrack.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HashState {
    current: Curve,
    forbidden_x: FieldElement,
    steps_taken: u64,
}

impl HashState {
    /// Start of every walk over `ctx`.
    pub fn init(ctx: &FieldContext) -> Result<Self> {
        let current = find_initial_curve(ctx)?;
        let roots = current.two_torsion_roots()?;
        Ok(HashState { current, forbidden_x: roots[0], steps_taken: 0 })
    }

    /// State at an arbitrary curve and forbidden root.
    pub fn at(current: Curve, forbidden_x: FieldElement) -> Result<Self> {
        if !current.rhs(forbidden_x).is_zero() {
            return Err(Error::NotAKernelRoot(forbidden_x.to_string()));
        }
        Ok(HashState { current, forbidden_x, steps_taken: 0 })
    }

    pub fn current(&self) -> &Curve {
        &self.current
    }

    pub fn forbidden_x(&self) -> FieldElement {
        self.forbidden_x
    }

    pub fn steps_taken(&self) -> u64 {
        self.steps_taken
    }

    pub fn j_invariant(&self) -> FieldElement {
        self.current.j_invariant()
    }

    /// The isogeny taken for `bit`.
    pub fn isogeny_for(&self, bit: bool) -> Result<Isogeny2> {
        let [lo, hi] = other_roots(&self.current, self.forbidden_x)?;
        let (chosen, rest) = if bit { (hi, lo) } else { (lo, hi) };
        Isogeny2::with_other_roots(&self.current, chosen, [self.forbidden_x, rest])
    }

    pub fn step(&self, bit: bool) -> Result<Self> {
        let iso = self.isogeny_for(bit)?;
        Ok(HashState {
            current: *iso.codomain(),
            forbidden_x: iso.dual_kernel_x(),
            steps_taken: self.steps_taken + 1,
        })
    }

    /// [`HashState::step`] that also re-checks supersingularity of the new
    /// curve. Costs `O(p^2 log p)` per step, so it is kept off the hot path.
    pub fn step_checked(&self, bit: bool) -> Result<Self> {
        let next = self.step(bit)?;
        if !next.current.is_supersingular() {
            return Err(Error::GraphIntegrity(format!("walk left the supersingular locus at {}", next.current)));
        }
        Ok(next)
    }

    pub fn absorb<I: IntoIterator<Item = bool>>(&self, bits: I) -> Result<Self> {
        bits.into_iter().try_fold(*self, |s, bit| s.step(bit))
    }
}

/// Bits of `bytes`, most significant first.
pub fn bytes_to_bits(bytes: &[u8]) -> Vec<bool> {
    bytes.iter().flat_map(|&byte| (0..8).rev().map(move |i| (byte >> i) & 1 == 1)).collect()
}

/// Parse a string of `'0'`/`'1'` characters.
pub fn parse_bitstring(text: &str) -> Result<Vec<bool>> {
    text.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::Malformed(format!("not a bit: {other:?}"))),
        })
        .collect()
}

/// j-invariant reached by walking `bits` from the initial state.
pub fn hash_bits<I: IntoIterator<Item = bool>>(ctx: &FieldContext, bits: I) -> Result<FieldElement> {
    Ok(HashState::init(ctx)?.absorb(bits)?.j_invariant())
}

pub fn hash_bytes(ctx: &FieldContext, bytes: &[u8]) -> Result<FieldElement> {
    hash_bits(ctx, bytes_to_bits(bytes))
}
