//! `cgl analyze`: exact stationary analysis of a single prime.

use std::path::Path;

use num_bigint::BigInt;
use serde::Serialize;

use cgl_core::cgl::Convention;
use cgl_core::markov::analytics::{closed_form_collision, ideal_collision, ideal_deviation, to_scientific};
use cgl_core::markov::empirical::{empirical_distribution, EmpiricalReport};
use cgl_core::markov::{power_iteration, theoretical_node_distribution};
use cgl_core::{ExactAnalysis, IsogenyGraph};

use crate::{context, emit, to_json, Failure, Outcome};

#[derive(Serialize)]
pub struct GraphSummary {
    pub nodes: usize,
    pub edges: usize,
    pub strongly_connected: bool,
    pub has_j0: bool,
    pub has_j1728: bool,
}

#[derive(Serialize)]
pub struct PairMass {
    pub current: String,
    pub previous: String,
    pub probability: String,
}

#[derive(Serialize)]
pub struct NodeMass {
    pub j: String,
    pub stationary: String,
    pub theoretical: String,
}

#[derive(Serialize)]
pub struct Collision {
    pub stationary: String,
    pub closed_form: String,
    pub uniform: String,
}

#[derive(Serialize)]
pub struct Deviation {
    pub exact: String,
    pub decimal: String,
}

#[derive(Serialize)]
pub struct PowerCheck {
    pub steps: usize,
    pub l1_distance: f64,
    pub converged: bool,
}

#[derive(Serialize)]
pub struct AnalysisReport {
    pub convention: Convention,
    pub prime: u64,
    pub modulus: String,
    pub residue_mod_12: u64,
    pub graph: GraphSummary,
    pub matrix_dimension: usize,
    pub stationary_pairs: Vec<PairMass>,
    pub node_marginals: Vec<NodeMass>,
    pub marginals_match_theory: bool,
    pub power_iteration: PowerCheck,
    pub collision: Collision,
    pub deviation: Deviation,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub empirical: Option<EmpiricalReport>,
}

pub fn report(graph: &IsogenyGraph, empirical: Option<(usize, usize, u64)>) -> Result<AnalysisReport, Failure> {
    let p = graph.p();
    let exact = ExactAnalysis::run(graph)?;
    let stationary_pairs = exact
        .stationary
        .iter()
        .map(|((cur, prev), m)| PairMass { current: cur.to_string(), previous: prev.to_string(), probability: m.to_string() })
        .collect();
    let node_marginals = exact
        .marginals
        .iter()
        .map(|(j, m)| NodeMass {
            j: j.to_string(),
            stationary: m.to_string(),
            theoretical: exact.theoretical.get(j).map_or_else(|| "0".to_string(), ToString::to_string),
        })
        .collect();

    let float = exact.matrix.convert::<f64>();
    let run = power_iteration(&float, &exact.stationary.to_f64(), &1e-12, 10_000);
    let pb = BigInt::from(p);
    let deviation = ideal_deviation(&pb);
    let theory_f64 = theoretical_node_distribution::<f64>(graph)?;
    let empirical = match empirical {
        Some((samples, bits, seed)) => Some(empirical_distribution(graph, &theory_f64, samples, bits, seed)?),
        None => None,
    };
    Ok(AnalysisReport {
        convention: Convention::default(),
        prime: p,
        modulus: graph.ctx().modulus_string(),
        residue_mod_12: p % 12,
        graph: GraphSummary {
            nodes: graph.node_count(),
            edges: graph.edges().len(),
            strongly_connected: graph.is_strongly_connected(),
            has_j0: graph.j0_index().is_some(),
            has_j1728: graph.j1728_index().is_some(),
        },
        matrix_dimension: exact.matrix.dim(),
        stationary_pairs,
        node_marginals,
        marginals_match_theory: exact.marginals == exact.theoretical,
        power_iteration: PowerCheck { steps: run.steps, l1_distance: run.distance, converged: run.converged },
        collision: Collision {
            stationary: exact.marginals.collision_probability().to_string(),
            closed_form: closed_form_collision(&pb).to_string(),
            uniform: ideal_collision(&pb).to_string(),
        },
        deviation: Deviation { exact: deviation.to_string(), decimal: to_scientific(&deviation, 6) },
        empirical,
    })
}

fn render_human(r: &AnalysisReport) -> String {
    let mut s = format!(
        "p = {} (p mod 12 = {}), GF(p^2) = GF(p)[z]/({}), {}\n",
        r.prime, r.residue_mod_12, r.modulus, r.convention.name
    );
    s += &format!(
        "graph: {} nodes, {} edges, strongly connected: {}\n",
        r.graph.nodes, r.graph.edges, r.graph.strongly_connected
    );
    s += &format!("pair chain: {} states\n", r.matrix_dimension);
    s += "node marginals (stationary / closed form):\n";
    for n in &r.node_marginals {
        s += &format!("  j = {:<12} {:>12} {:>12}\n", n.j, n.stationary, n.theoretical);
    }
    s += &format!("marginals match closed form: {}\n", r.marginals_match_theory);
    s += &format!(
        "power iteration: {} steps, L1 {:.3e}, converged: {}\n",
        r.power_iteration.steps, r.power_iteration.l1_distance, r.power_iteration.converged
    );
    s += &format!(
        "collision: {} (closed form {}, uniform {})\n",
        r.collision.stationary, r.collision.closed_form, r.collision.uniform
    );
    s += &format!("deviation from uniform: {} = {}\n", r.deviation.exact, r.deviation.decimal);
    if let Some(e) = &r.empirical {
        s += &format!(
            "empirical: {} samples of {} bits, seed {}: L1 {:.5}, chi-square {:.3} on {} df, p-value {:.4}\n",
            e.samples, e.bit_length, e.seed, e.l1_distance, e.chi_square, e.degrees_of_freedom, e.p_value
        );
    }
    s
}

pub fn run(prime: u64, empirical: Option<usize>, bits: usize, seed: u64, human: bool, out: Option<&Path>) -> Outcome {
    let ctx = context(prime)?;
    if empirical == Some(0) {
        return Err(Failure::Usage("--empirical needs at least one sample".into()));
    }
    let graph = IsogenyGraph::build(&ctx)?;
    let r = report(&graph, empirical.map(|n| (n, bits, seed)))?;
    let text = if human { render_human(&r) } else { to_json(&r) };
    emit(&text, out)?;
    if r.marginals_match_theory {
        Ok(())
    } else {
        Err(Failure::Verification(format!("stationary marginals differ from the closed form at p = {prime}")))
    }
}
