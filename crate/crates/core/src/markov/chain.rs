//! The walk as a Markov chain, at two granularities.
//!
//! [`ClassChain`] has one state per (node, kernel class of the forbidden
//! root). It is exactly the walk's law under uniform bits. [`PairMatrix`]
//! lumps it to (current, previous) node pairs, which is well defined because
//! every root of a class leads to the same neighbour and every class mapping
//! to one pair induces the same pair-level column; both are checked.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::graph::IsogenyGraph;
use crate::scalar::Scalar;

/// `(node index, kernel class)`.
pub type ClassState = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassChain {
    states: Vec<ClassState>,
    /// Per state, the two equally likely successors.
    successors: Vec<[usize; 2]>,
    /// Per state, the node its forbidden kernel leads back to.
    previous: Vec<usize>,
}

impl ClassChain {
    pub fn build(graph: &IsogenyGraph) -> Result<Self> {
        let mut states = Vec::new();
        for node in graph.nodes() {
            for c in 0..node.class_count() {
                states.push((node.index, c));
            }
        }
        let index: BTreeMap<ClassState, usize> = states.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut successors = Vec::with_capacity(states.len());
        let mut previous = Vec::with_capacity(states.len());
        for &(u, c) in &states {
            let node = graph.node(u);
            let out = graph.out_edges(u);
            let mut outcome: Option<[usize; 2]> = None;
            let mut back: Option<usize> = None;
            for f in node.class_members(c) {
                let mut next: Vec<usize> = (0..3)
                    .filter(|&k| k != f)
                    .map(|k| index[&(out[k].to, out[k].arrival_class)])
                    .collect();
                next.sort_unstable();
                let next = [next[0], next[1]];
                if outcome.is_some_and(|o| o != next) {
                    return Err(Error::Aggregation(format!(
                        "roots of class {c} at j = {} disagree on successors",
                        node.j
                    )));
                }
                if back.is_some_and(|b| b != out[f].to) {
                    return Err(Error::Aggregation(format!("class {c} at j = {} points at two nodes", node.j)));
                }
                outcome = Some(next);
                back = Some(out[f].to);
            }
            successors.push(outcome.expect("classes are nonempty"));
            previous.push(back.expect("classes are nonempty"));
        }
        Ok(ClassChain { states, successors, previous })
    }

    pub fn states(&self) -> &[ClassState] {
        &self.states
    }

    pub fn successors(&self, s: usize) -> [usize; 2] {
        self.successors[s]
    }

    /// Node that state `s`'s forbidden kernel points back to.
    pub fn previous(&self, s: usize) -> usize {
        self.previous[s]
    }

    /// State of a fresh walk: the first node's representative is the initial
    /// curve and the smallest root is forbidden.
    pub fn initial_state(&self, graph: &IsogenyGraph) -> usize {
        let class = graph.node(0).class_of[0];
        self.states.iter().position(|&s| s == (0, class)).expect("initial state exists")
    }

    /// Number of length-`steps` bitstrings ending in each state, starting
    /// from `start`.
    pub fn walk_counts(&self, start: usize, steps: usize) -> Vec<u128> {
        let mut counts = vec![0u128; self.states.len()];
        counts[start] = 1;
        for _ in 0..steps {
            let mut next = vec![0u128; counts.len()];
            for (s, &c) in counts.iter().enumerate() {
                if c > 0 {
                    for t in self.successors[s] {
                        next[t] += c;
                    }
                }
            }
            counts = next;
        }
        counts
    }

    /// [`ClassChain::walk_counts`] summed per node.
    pub fn node_counts(&self, start: usize, steps: usize, node_count: usize) -> Vec<u128> {
        let mut out = vec![0u128; node_count];
        for (s, c) in self.walk_counts(start, steps).into_iter().enumerate() {
            out[self.states[s].0] += c;
        }
        out
    }
}

/// `(current, previous)` by node index.
pub type PairState = (usize, usize);

/// Left-stochastic transition matrix on valid (current, previous) pairs,
/// stored by columns. States are ordered by (current, previous) discovery
/// index.
#[derive(Clone, Debug, PartialEq)]
pub struct PairMatrix<S> {
    states: Vec<PairState>,
    labels: Vec<(FieldElement, FieldElement)>,
    /// `columns[s]` lists `(row, probability)` with distinct rows.
    columns: Vec<Vec<(usize, S)>>,
}

impl<S: Scalar> PairMatrix<S> {
    pub fn build(graph: &IsogenyGraph) -> Result<Self> {
        let chain = ClassChain::build(graph)?;
        Self::from_chain(graph, &chain)
    }

    pub fn from_chain(graph: &IsogenyGraph, chain: &ClassChain) -> Result<Self> {
        let pair_of = |s: usize| (chain.states()[s].0, chain.previous(s));
        let mut states: Vec<PairState> = (0..chain.states().len()).map(pair_of).collect();
        states.sort_unstable();
        states.dedup();

        let mut valid: Vec<PairState> = graph.edges().iter().map(|e| (e.to, e.from)).collect();
        valid.sort_unstable();
        valid.dedup();
        if valid != states {
            return Err(Error::Aggregation("lumped states differ from the valid pairs".into()));
        }

        let index: BTreeMap<PairState, usize> = states.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut halves: Vec<Option<BTreeMap<usize, i64>>> = vec![None; states.len()];
        for s in 0..chain.states().len() {
            let col = index[&pair_of(s)];
            let mut entry = BTreeMap::new();
            for t in chain.successors(s) {
                *entry.entry(index[&pair_of(t)]).or_insert(0) += 1;
            }
            match &halves[col] {
                Some(existing) if *existing != entry => {
                    let (cur, prev) = states[col];
                    return Err(Error::Aggregation(format!(
                        "pair ({}, {}) has two different transition columns",
                        graph.node(cur).j,
                        graph.node(prev).j
                    )));
                }
                _ => halves[col] = Some(entry),
            }
        }
        let columns = halves
            .into_iter()
            .map(|h| h.expect("every pair comes from some class").into_iter().map(|(r, k)| (r, S::ratio(k, 2))).collect())
            .collect();
        let labels = states.iter().map(|&(c, p)| (graph.node(c).j, graph.node(p).j)).collect();
        Ok(PairMatrix { states, labels, columns })
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[PairState] {
        &self.states
    }

    /// `(current j, previous j)` per state.
    pub fn labels(&self) -> &[(FieldElement, FieldElement)] {
        &self.labels
    }

    pub fn column(&self, col: usize) -> &[(usize, S)] {
        &self.columns[col]
    }

    pub fn entry(&self, row: usize, col: usize) -> S {
        self.columns[col].iter().find(|(r, _)| *r == row).map_or_else(S::zero, |(_, v)| v.clone())
    }

    pub fn column_sums(&self) -> Vec<S> {
        self.columns.iter().map(|c| c.iter().fold(S::zero(), |acc, (_, v)| acc + v.clone())).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<S>> {
        let n = self.dim();
        let mut m = vec![vec![S::zero(); n]; n];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                m[*r][c] = v.clone();
            }
        }
        m
    }

    /// `M v`.
    pub fn apply(&self, v: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim()];
        for (c, col) in self.columns.iter().enumerate() {
            if v[c].is_zero() {
                continue;
            }
            for (r, p) in col {
                out[*r] = out[*r].clone() + p.clone() * v[c].clone();
            }
        }
        out
    }

    /// Row index of the state with these node indices.
    pub fn position(&self, state: PairState) -> Option<usize> {
        self.states.binary_search(&state).ok()
    }

    /// Same matrix in another scalar type.
    pub fn convert<T: Scalar>(&self) -> PairMatrix<T> {
        let columns = self
            .columns
            .iter()
            .map(|col| {
                col.iter()
                    .map(|(r, v)| {
                        let halves = (v.clone() * S::from_i64(2).expect("small")).to_i64().expect("multiple of 1/2");
                        (*r, T::ratio(halves, 2))
                    })
                    .collect()
            })
            .collect();
        PairMatrix { states: self.states.clone(), labels: self.labels.clone(), columns }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn class_chain_at_p23() {
        let g = IsogenyGraph::for_prime(23).unwrap();
        let chain = ClassChain::build(&g).unwrap();
        // 1728: {0}, {±i}; 19: three singletons; 0: one class.
        assert_eq!(chain.states().len(), 6);
        let start = chain.initial_state(&g);
        assert_eq!(chain.states()[start], (0, 0));
        assert_eq!(chain.walk_counts(start, 5).iter().sum::<u128>(), 32);
    }

    #[test]
    fn columns_sum_to_one() {
        for p in [23u64, 41, 43, 47, 61, 101, 131] {
            let g = IsogenyGraph::for_prime(p).unwrap();
            let m = PairMatrix::<BigRational>::build(&g).unwrap();
            assert!(m.column_sums().iter().all(|s| *s == BigRational::ratio(1, 1)));
            // Entry (row (j1, j2), column (j0, j0')) is nonzero only if j2 = j0.
            for c in 0..m.dim() {
                for (r, _) in m.column(c) {
                    assert_eq!(m.states()[*r].1, m.states()[c].0);
                }
            }
        }
    }

    #[test]
    fn regular_graph_columns_follow_edges() {
        // p = 61 is 3-regular, but j = 41 carries two loops, so arriving there
        // from 50 leaves both remaining edges pointing at the same pair.
        let g = IsogenyGraph::for_prime(61).unwrap();
        let m = PairMatrix::<f64>::build(&g).unwrap();
        let mut singles = Vec::new();
        for c in 0..m.dim() {
            let (cur, prev) = m.states()[c];
            let others: Vec<usize> = g.out_edges(cur).iter().map(|e| e.to).collect();
            let mut entries: Vec<(PairState, f64)> = m.column(c).iter().map(|(r, v)| (m.states()[*r], *v)).collect();
            entries.sort_by_key(|e| e.0);
            if entries.len() == 1 {
                assert_eq!(entries[0].1, 1.0);
                singles.push((g.node(cur).j.to_string(), g.node(prev).j.to_string()));
            } else {
                assert_eq!(entries.len(), 2, "column {c}");
                assert!(entries.iter().all(|(s, v)| *v == 0.5 && s.1 == cur && others.contains(&s.0)));
            }
        }
        assert_eq!(singles, vec![("41".to_string(), "50".to_string())]);
    }

    #[test]
    fn conversion_preserves_entries() {
        let g = IsogenyGraph::for_prime(47).unwrap();
        let exact = PairMatrix::<BigRational>::build(&g).unwrap();
        assert_eq!(exact.convert::<f64>(), PairMatrix::<f64>::build(&g).unwrap());
    }
}
