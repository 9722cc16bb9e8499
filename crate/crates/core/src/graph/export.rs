use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Census, IsogenyGraph};
use crate::cgl::Convention;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphMetadata {
    pub p: u64,
    pub modulus: String,
    pub convention: Convention,
    pub node_count: usize,
    pub edge_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeExport {
    pub index: usize,
    pub j: String,
    pub is_j0: bool,
    pub is_j1728: bool,
    pub a: String,
    pub b: String,
    pub representative: String,
    pub roots: Vec<String>,
    pub kernel_classes: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeExport {
    pub from: usize,
    pub to: usize,
    pub from_j: String,
    pub to_j: String,
    pub kernel_x: String,
    pub dual_kernel_x: String,
    pub arrival_class: usize,
}

/// Serializable snapshot of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphExport {
    pub metadata: GraphMetadata,
    pub nodes: Vec<NodeExport>,
    pub edges: Vec<EdgeExport>,
    pub census: Census,
}

impl GraphExport {
    pub fn from_graph(g: &IsogenyGraph) -> Result<Self> {
        let nodes = g
            .nodes()
            .map(|n| NodeExport {
                index: n.index,
                j: n.j.to_string(),
                is_j0: n.is_j0,
                is_j1728: n.is_j1728,
                a: n.representative.a().to_string(),
                b: n.representative.b().to_string(),
                representative: n.representative.to_string(),
                roots: n.roots.iter().map(ToString::to_string).collect(),
                kernel_classes: n.class_of.to_vec(),
            })
            .collect();
        let edges = g
            .edges()
            .iter()
            .map(|e| EdgeExport {
                from: e.from,
                to: e.to,
                from_j: g.node(e.from).j.to_string(),
                to_j: g.node(e.to).j.to_string(),
                kernel_x: e.kernel_x.to_string(),
                dual_kernel_x: e.dual_kernel_x.to_string(),
                arrival_class: e.arrival_class,
            })
            .collect();
        Ok(GraphExport {
            metadata: GraphMetadata {
                p: g.p(),
                modulus: g.ctx().modulus_string(),
                convention: Convention::default(),
                node_count: g.node_count(),
                edge_count: g.edges().len(),
            },
            nodes,
            edges,
            census: g.dual_pair_census()?,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
    }
}

/// Graphviz digraph, one statement per edge, nodes and edges in discovery
/// order. Nodes are labelled by their canonical j; j = 0 and j = 1728 are
/// drawn as double circles.
pub(super) fn to_dot(g: &IsogenyGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph G2_p{} {{", g.p());
    let _ = writeln!(
        out,
        "  graph [label=\"supersingular 2-isogeny graph, p = {}, {}, {}\"];",
        g.p(),
        g.ctx().modulus_string(),
        crate::cgl::CONVENTION_TAG
    );
    for n in g.nodes() {
        let shape = if n.is_special() { "doublecircle" } else { "circle" };
        let _ = writeln!(out, "  n{} [label=\"{}\", shape={}];", n.index, n.j, shape);
    }
    for e in g.edges() {
        let _ = writeln!(out, "  n{} -> n{} [label=\"{}\"];", e.from, e.to, e.kernel_x);
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Minimal structural check of the DOT subset emitted above: a header,
    /// balanced braces, and node or edge statements that each end in `;`.
    fn check_dot(text: &str) -> std::result::Result<usize, String> {
        let mut lines = text.lines();
        let header = lines.next().ok_or("empty")?;
        if !(header.starts_with("digraph ") && header.ends_with('{')) {
            return Err(format!("bad header {header:?}"));
        }
        let mut edges = 0;
        let mut closed = false;
        for line in lines {
            let t = line.trim();
            if closed {
                return Err("content after closing brace".into());
            }
            if t == "}" {
                closed = true;
                continue;
            }
            if !t.ends_with("];") || t.matches('"').count() % 2 != 0 {
                return Err(format!("bad statement {t:?}"));
            }
            let head = t.split('[').next().unwrap().trim();
            let ident = |s: &str| !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            match head.split_once("->") {
                Some((a, b)) if ident(a.trim()) && ident(b.trim()) => edges += 1,
                None if ident(head) => {}
                _ => return Err(format!("bad statement head {head:?}")),
            }
        }
        if closed {
            Ok(edges)
        } else {
            Err("missing closing brace".into())
        }
    }

    #[test]
    fn dot_has_one_statement_per_edge() {
        let g = IsogenyGraph::for_prime(23).unwrap();
        assert_eq!(check_dot(&g.to_dot()), Ok(9));
        let g = IsogenyGraph::for_prime(47).unwrap();
        assert_eq!(check_dot(&g.to_dot()), Ok(15));
        assert!(check_dot("digraph x {\n  a -> ;\n}").is_err());
    }

    #[test]
    fn json_round_trips() {
        for p in [23u64, 41, 61] {
            let g = IsogenyGraph::for_prime(p).unwrap();
            let text = g.to_json().unwrap();
            let back = GraphExport::from_json(&text).unwrap();
            assert_eq!(back, g.to_export().unwrap());
            let mut edges: Vec<(String, String, String)> =
                back.edges.iter().map(|e| (e.from_j.clone(), e.to_j.clone(), e.kernel_x.clone())).collect();
            let mut expected: Vec<(String, String, String)> = g
                .edges()
                .iter()
                .map(|e| (g.node(e.from).j.to_string(), g.node(e.to).j.to_string(), e.kernel_x.to_string()))
                .collect();
            edges.sort();
            expected.sort();
            assert_eq!(edges, expected);
            assert_eq!(back.metadata.node_count, g.node_count());
        }
    }

    #[test]
    fn exports_are_deterministic() {
        let a = IsogenyGraph::for_prime(101).unwrap();
        let b = IsogenyGraph::for_prime(101).unwrap();
        assert_eq!(a.to_dot(), b.to_dot());
        assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
    }
}
