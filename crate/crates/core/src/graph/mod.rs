//! The supersingular 2-isogeny graph over GF(p^2).
//!
//! Nodes are j-invariants, each with one representative curve: the curve on
//! which the node was discovered, except that j = 0 and j = 1728 always use
//! `y^2 = x^3 - 1` and `y^2 = x^3 + x`. Edges are kept per kernel root, so
//! parallel edges and loops keep their multiplicity.
//!
//! Every edge also records where its dual kernel lands on the target's
//! representative, as a *kernel class*: an orbit of the target's roots under
//! the automorphisms of the representative (the three roots of j = 0 form one
//! class, `{0}` and `{±i}` are the classes at j = 1728, and otherwise every
//! root is its own class). This is what the Markov analysis runs on.

mod census;
mod export;

use std::collections::VecDeque;

use indexmap::IndexMap;

pub use census::{Census, CensusEntry};
pub use export::{EdgeExport, GraphExport, GraphMetadata, NodeExport};

use crate::curve::{curve_from_j, find_initial_curve, Curve};
use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};
use crate::isogeny::Isogeny2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeRecord {
    pub index: usize,
    pub j: FieldElement,
    pub representative: Curve,
    pub is_j0: bool,
    pub is_j1728: bool,
    /// Roots of the representative in canonical order.
    pub roots: [FieldElement; 3],
    /// `class_of[k]` is the kernel class of `roots[k]`; classes are numbered
    /// by their least root.
    pub class_of: [usize; 3],
}

impl NodeRecord {
    pub fn class_count(&self) -> usize {
        self.class_of.iter().max().map_or(0, |m| m + 1)
    }

    /// Root positions belonging to class `c`.
    pub fn class_members(&self, c: usize) -> impl Iterator<Item = usize> + '_ {
        (0..3).filter(move |&k| self.class_of[k] == c)
    }

    pub fn is_special(&self) -> bool {
        self.is_j0 || self.is_j1728
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeRecord {
    pub from: usize,
    pub to: usize,
    /// Position of the kernel among the source representative's roots.
    pub root_index: usize,
    pub kernel_x: FieldElement,
    /// Dual kernel on the Velu codomain, before identification with the
    /// target's representative.
    pub dual_kernel_x: FieldElement,
    /// Kernel class on the target's representative reached by the dual kernel.
    pub arrival_class: usize,
}

#[derive(Clone, Debug)]
pub struct IsogenyGraph {
    ctx: FieldContext,
    nodes: IndexMap<FieldElement, NodeRecord>,
    /// `edges[3 * i + k]` leaves node `i` through root `k`.
    edges: Vec<EdgeRecord>,
}

/// Ratios `lambda` with `x -> lambda x` carrying `from` onto `to`:
/// `lambda^2 a_from = a_to` and `lambda^3 b_from = b_to`.
fn is_scaling(from: &Curve, to: &Curve, lambda: FieldElement) -> bool {
    !lambda.is_zero() && lambda.square() * from.a() == to.a() && lambda.square() * lambda * from.b() == to.b()
}

/// Roots of `to` that an isomorphism `from -> to` can send `x` to.
fn images_of_root(from: &Curve, to: &Curve, x: FieldElement, to_roots: &[FieldElement; 3]) -> Vec<usize> {
    (0..3)
        .filter(|&k| {
            let r = to_roots[k];
            if x.is_zero() {
                // Any isomorphism fixes 0; it only has to exist.
                r.is_zero()
            } else {
                r.div(&x).is_ok_and(|lambda| is_scaling(from, to, lambda))
            }
        })
        .collect()
}

/// Orbits of the roots under automorphisms `x -> lambda x` of `curve`.
fn kernel_classes(curve: &Curve, roots: &[FieldElement; 3]) -> [usize; 3] {
    let mut class_of = [usize::MAX; 3];
    let mut next = 0;
    for k in 0..3 {
        if class_of[k] != usize::MAX {
            continue;
        }
        for m in images_of_root(curve, curve, roots[k], roots) {
            class_of[m] = next;
        }
        next += 1;
    }
    class_of
}

impl IsogenyGraph {
    /// Breadth-first construction from the initial curve.
    pub fn build(ctx: &FieldContext) -> Result<Self> {
        let start = find_initial_curve(ctx)?;
        let mut nodes: IndexMap<FieldElement, NodeRecord> = IndexMap::new();
        let mut pending: Vec<(usize, usize, Isogeny2)> = Vec::new();
        let mut queue = VecDeque::new();

        let add_node = |nodes: &mut IndexMap<FieldElement, NodeRecord>, j: FieldElement, found_on: Curve| {
            let special = j.is_zero() || j.equals_int(1728);
            let representative = if special { curve_from_j(j) } else { found_on };
            let roots = representative.two_torsion_roots()?;
            let index = nodes.len();
            nodes.insert(
                j,
                NodeRecord {
                    index,
                    j,
                    representative,
                    is_j0: j.is_zero(),
                    is_j1728: j.equals_int(1728),
                    roots,
                    class_of: kernel_classes(&representative, &roots),
                },
            );
            Ok::<usize, Error>(index)
        };

        let first = add_node(&mut nodes, start.j_invariant(), start)?;
        queue.push_back(first);
        while let Some(i) = queue.pop_front() {
            let node = nodes[i].clone();
            for (k, &root) in node.roots.iter().enumerate() {
                let iso = Isogeny2::velu2(&node.representative, root)?;
                let j = iso.codomain().j_invariant();
                if !nodes.contains_key(&j) {
                    let t = add_node(&mut nodes, j, *iso.codomain())?;
                    queue.push_back(t);
                }
                pending.push((i, k, iso));
            }
        }

        let mut edges = Vec::with_capacity(pending.len());
        for (from, root_index, iso) in pending {
            let j = iso.codomain().j_invariant();
            let to = nodes.get_index_of(&j).expect("target was inserted");
            let target = &nodes[to];
            let hits = images_of_root(iso.codomain(), &target.representative, iso.dual_kernel_x(), &target.roots);
            let Some(&first_hit) = hits.first() else {
                return Err(Error::GraphIntegrity(format!("no isomorphism carries the dual kernel of {iso}")));
            };
            let arrival_class = target.class_of[first_hit];
            if hits.iter().any(|&h| target.class_of[h] != arrival_class) {
                return Err(Error::GraphIntegrity(format!("dual kernel of {iso} spans two classes")));
            }
            edges.push(EdgeRecord {
                from,
                to,
                root_index,
                kernel_x: iso.kernel_x(),
                dual_kernel_x: iso.dual_kernel_x(),
                arrival_class,
            });
        }
        Ok(IsogenyGraph { ctx: *ctx, nodes, edges })
    }

    /// [`IsogenyGraph::build`] from a bare prime.
    pub fn for_prime(p: u64) -> Result<Self> {
        Self::build(&FieldContext::new(p)?)
    }

    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn p(&self) -> u64 {
        self.ctx.p()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Nodes in discovery order.
    pub fn nodes(&self) -> impl ExactSizeIterator<Item = &NodeRecord> {
        self.nodes.values()
    }

    pub fn node(&self, index: usize) -> &NodeRecord {
        &self.nodes[index]
    }

    pub fn index_of(&self, j: &FieldElement) -> Option<usize> {
        self.nodes.get_index_of(j)
    }

    pub fn edges(&self) -> &[EdgeRecord] {
        &self.edges
    }

    /// The three out-edges of node `i`, in root order.
    pub fn out_edges(&self, i: usize) -> &[EdgeRecord] {
        &self.edges[3 * i..3 * i + 3]
    }

    pub fn out_degree(&self, i: usize) -> usize {
        self.out_edges(i).len()
    }

    pub fn in_degree(&self, i: usize) -> usize {
        self.edges.iter().filter(|e| e.to == i).count()
    }

    /// Number of edges `u -> v`.
    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.out_edges(u).iter().filter(|e| e.to == v).count()
    }

    /// Index of the j = 0 node, if present.
    pub fn j0_index(&self) -> Option<usize> {
        self.nodes().find(|n| n.is_j0).map(|n| n.index)
    }

    pub fn j1728_index(&self) -> Option<usize> {
        self.nodes().find(|n| n.is_j1728).map(|n| n.index)
    }

    /// Every node reaches every other along directed edges.
    pub fn is_strongly_connected(&self) -> bool {
        let n = self.node_count();
        let reach = |forward: bool| {
            let mut seen = vec![false; n];
            let mut stack = vec![0];
            seen[0] = true;
            while let Some(u) = stack.pop() {
                for e in &self.edges {
                    let (a, b) = if forward { (e.from, e.to) } else { (e.to, e.from) };
                    if a == u && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
            seen.into_iter().all(|s| s)
        };
        n > 0 && reach(true) && reach(false)
    }

    /// Per node pair edge counts and dual-pair counts.
    pub fn dual_pair_census(&self) -> Result<Census> {
        Census::of(self)
    }

    pub fn to_export(&self) -> Result<GraphExport> {
        GraphExport::from_graph(self)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_export()?).expect("export is serializable"))
    }

    pub fn to_dot(&self) -> String {
        export::to_dot(self)
    }
}
