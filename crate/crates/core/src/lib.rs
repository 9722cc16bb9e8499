//! The CGL hash: a walk on the supersingular 2-isogeny graph over GF(p^2)
//! driven by the input bits, with tooling to build the graph, model the
//! walk as a Markov chain on (current, previous) node pairs, and compare its
//! exact stationary distribution with closed forms.

pub mod cgl;
pub mod curve;
pub mod error;
pub mod field;
pub mod graph;
pub mod isogeny;
pub mod markov;
pub mod scalar;

pub use error::{Error, Result};
pub use curve::{Curve, Point};
pub use field::{FieldContext, FieldElement};
pub use graph::IsogenyGraph;
pub use isogeny::Isogeny2;
pub use markov::{Analysis, Distribution, PairMatrix};

use num_rational::BigRational;

/// Transition matrix with exact rational entries.
pub type ExactPairMatrix = PairMatrix<BigRational>;
/// Transition matrix in double precision.
pub type FloatPairMatrix = PairMatrix<f64>;
/// Exact analysis of one prime.
pub type ExactAnalysis = Analysis<BigRational>;
/// Double-precision analysis of one prime.
pub type FloatAnalysis = Analysis<f64>;
