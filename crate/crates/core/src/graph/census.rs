use serde::{Deserialize, Serialize};

use super::IsogenyGraph;
use crate::error::{Error, Result};

/// Edge and dual-pair counts for one unordered node pair `{u, v}`, `u <= v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub u: usize,
    pub v: usize,
    /// Edges `u -> v`.
    pub forward: usize,
    /// Edges `v -> u`; equal to `forward` for loops.
    pub backward: usize,
    pub dual_pairs: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub entries: Vec<CensusEntry>,
}

impl Census {
    /// Dual pairs between adjacent nodes:
    /// * a pair touching j = 0 has one, since all three arrows out of j = 0
    ///   share one dual;
    /// * `{1728, v}` with `v` generic has as many as there are arrows
    ///   `v -> 1728` (the two arrows out of 1728 to `v` share a dual);
    /// * generic pairs, and loops, have one per arrow, and arrows must be
    ///   balanced between generic nodes.
    pub fn of(graph: &IsogenyGraph) -> Result<Self> {
        let n = graph.node_count();
        let mut entries = Vec::new();
        for u in 0..n {
            for v in u..n {
                let forward = graph.multiplicity(u, v);
                let backward = graph.multiplicity(v, u);
                if forward == 0 && backward == 0 {
                    continue;
                }
                let (nu, nv) = (graph.node(u), graph.node(v));
                let dual_pairs = if nu.is_j0 || nv.is_j0 {
                    1
                } else if u == v {
                    forward
                } else if nu.is_j1728 {
                    backward
                } else if nv.is_j1728 || forward == backward {
                    forward
                } else {
                    return Err(Error::GraphIntegrity(format!(
                        "unbalanced arrows between {} and {}: {forward} vs {backward}",
                        nu.j, nv.j
                    )));
                };
                if dual_pairs >= 3 && u != v {
                    return Err(Error::GraphIntegrity(format!("three dual pairs between {} and {}", nu.j, nv.j)));
                }
                entries.push(CensusEntry { u, v, forward, backward, dual_pairs });
            }
        }
        Ok(Census { entries })
    }

    pub fn entry(&self, u: usize, v: usize) -> Option<&CensusEntry> {
        let (u, v) = if u <= v { (u, v) } else { (v, u) };
        self.entries.iter().find(|e| e.u == u && e.v == v)
    }

    /// Dual pairs between `u` and `v` (zero if not adjacent).
    pub fn dual_pairs(&self, u: usize, v: usize) -> usize {
        self.entry(u, v).map_or(0, |e| e.dual_pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::primes_in;

    #[test]
    fn p23_census() {
        let g = IsogenyGraph::for_prime(23).unwrap();
        let c = g.dual_pair_census().unwrap();
        let at = |j: u64| g.index_of(&g.ctx().from_u64(j)).unwrap();
        assert_eq!(c.dual_pairs(at(19), at(0)), 1);
        assert_eq!(c.dual_pairs(at(19), at(3)), 1);
        assert_eq!(c.dual_pairs(at(3), at(3)), 1);
        assert_eq!(c.dual_pairs(at(19), at(19)), 1);
        assert_eq!(c.entries.len(), 4);
    }

    /// A generic node has three dual pairs in total, a loop counting once;
    /// the special nodes have one besides the 1728 loop.
    #[test]
    fn dual_pairs_account_for_every_generic_edge() {
        for p in primes_in(5, 200) {
            let g = IsogenyGraph::for_prime(p).unwrap();
            let c = g.dual_pair_census().unwrap();
            for node in g.nodes() {
                let u = node.index;
                let total: usize = (0..g.node_count())
                    .filter(|&v| !(node.is_j1728 && v == u))
                    .map(|v| c.dual_pairs(u, v))
                    .sum();
                let expected = if node.is_special() && g.node_count() > 1 {
                    1
                } else if node.is_special() {
                    // p = 5 or 7: a single special node whose arrows are all loops.
                    usize::from(node.is_j0)
                } else {
                    3
                };
                assert_eq!(total, expected, "p = {p}, j = {}", node.j);
            }
        }
    }
}
