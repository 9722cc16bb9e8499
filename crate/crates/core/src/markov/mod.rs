//! Stationary behaviour of the walk: the pair-state chain, its exact
//! stationary vector, the closed-form node distribution it should match, and
//! collision analytics.

pub mod analytics;
pub mod chain;
pub mod distribution;
pub mod empirical;
pub mod linalg;

pub use chain::{ClassChain, PairMatrix, PairState};
pub use distribution::Distribution;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::graph::IsogenyGraph;
use crate::scalar::Scalar;

pub type PairDistribution<S> = Distribution<(FieldElement, FieldElement), S>;
pub type NodeDistribution<S> = Distribution<FieldElement, S>;

/// The eigenvalue-1 eigenvector of `m`, normalized to a distribution, by
/// row reduction of `M - I`. Errors if the eigenspace is not a line.
pub fn stationary_distribution<S: Scalar>(m: &PairMatrix<S>) -> Result<PairDistribution<S>> {
    let mut a = m.to_dense();
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = row[i].clone() - S::one();
    }
    let echelon = linalg::row_reduce(a);
    if echelon.nullity() != 1 {
        return Err(Error::AmbiguousEigenspace { dimension: echelon.nullity() });
    }
    let v = echelon.nullspace_basis().remove(0);
    let total = crate::scalar::sum(&v);
    let mass = v.into_iter().map(|x| x / total.clone()).collect();
    Distribution::new(m.labels().to_vec(), mass)
}

/// Mass of each node as the current node, in discovery order.
pub fn node_marginals<S: Scalar>(pairs: &PairDistribution<S>) -> NodeDistribution<S> {
    pairs.marginal(|(current, _)| *current)
}

/// Weight of a node in units of `1 / ((p - 1) / 2)`.
pub fn node_units(is_j0: bool, is_j1728: bool) -> i64 {
    match (is_j0, is_j1728) {
        (true, _) => 2,
        (_, true) => 3,
        _ => 6,
    }
}

/// Closed-form limit distribution of the hash value: 6, 3 and 2 units of
/// `1 / ((p - 1) / 2)` for generic j, j = 1728 and j = 0.
pub fn theoretical_node_distribution<S: Scalar>(graph: &IsogenyGraph) -> Result<NodeDistribution<S>> {
    let half = ((graph.p() - 1) / 2) as i64;
    let support = graph.nodes().map(|n| n.j).collect();
    let mass = graph.nodes().map(|n| S::ratio(node_units(n.is_j0, n.is_j1728), half)).collect();
    Distribution::new(support, mass)
}

/// Closed-form stationary pair distribution: 1 unit for the 1728 loop,
/// otherwise 2 units per dual pair between the two nodes.
pub fn theoretical_pair_distribution<S: Scalar>(graph: &IsogenyGraph, states: &[PairState]) -> Result<PairDistribution<S>> {
    let census = graph.dual_pair_census()?;
    let half = ((graph.p() - 1) / 2) as i64;
    let mass = states
        .iter()
        .map(|&(u, v)| {
            let units = if u == v && graph.node(u).is_j1728 { 1 } else { 2 * census.dual_pairs(u, v) as i64 };
            S::ratio(units, half)
        })
        .collect();
    let labels = states.iter().map(|&(u, v)| (graph.node(u).j, graph.node(v).j)).collect();
    Distribution::new(labels, mass)
}

/// Power iteration from the uniform vector towards `target`.
pub fn power_iteration<S: Scalar>(
    m: &PairMatrix<S>,
    target: &PairDistribution<S>,
    tolerance: &S,
    max_steps: usize,
) -> linalg::PowerIteration<S> {
    let n = m.dim();
    let start = vec![crate::scalar::reciprocal::<S>(n); n];
    linalg::power_iterate(|v| m.apply(v), start, target.mass(), tolerance, max_steps)
}

/// Everything the exact analysis derives for one prime.
#[derive(Clone, Debug)]
pub struct Analysis<S> {
    pub matrix: PairMatrix<S>,
    pub stationary: PairDistribution<S>,
    pub marginals: NodeDistribution<S>,
    pub theoretical: NodeDistribution<S>,
}

impl<S: Scalar> Analysis<S> {
    pub fn run(graph: &IsogenyGraph) -> Result<Self> {
        let matrix = PairMatrix::build(graph)?;
        let stationary = stationary_distribution(&matrix)?;
        let marginals = node_marginals(&stationary);
        let theoretical = theoretical_node_distribution(graph)?;
        Ok(Analysis { matrix, stationary, marginals, theoretical })
    }

    /// Marginals equal the closed form (exactly, for exact scalars).
    pub fn matches_theory(&self) -> bool {
        self.marginals.l1_distance(&self.theoretical).negligible()
    }
}
