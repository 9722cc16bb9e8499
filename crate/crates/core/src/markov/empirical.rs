//! Monte Carlo estimate of the hash output distribution.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use super::NodeDistribution;
use crate::cgl::hash_bits;
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::graph::IsogenyGraph;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalReport {
    pub samples: usize,
    pub bit_length: usize,
    pub seed: u64,
    /// Hits per node, in discovery order.
    pub counts: Vec<u64>,
    pub frequencies: Vec<f64>,
    /// L1 distance between the frequencies and the reference distribution.
    pub l1_distance: f64,
    /// Pearson statistic over nodes with positive expected count.
    pub chi_square: f64,
    pub degrees_of_freedom: usize,
    pub p_value: f64,
}

/// `samples` uniform `bit_length`-bit inputs from a seeded ChaCha8 stream.
pub fn random_inputs(samples: usize, bit_length: usize, seed: u64) -> Vec<Vec<bool>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).map(|_| (0..bit_length).map(|_| rng.gen::<bool>()).collect()).collect()
}

/// Hash every input and tally outputs per node of `graph`.
pub fn tally(graph: &IsogenyGraph, inputs: &[Vec<bool>]) -> Result<Vec<u64>> {
    let outputs: Vec<FieldElement> =
        inputs.par_iter().map(|bits| hash_bits(graph.ctx(), bits.iter().copied())).collect::<Result<_>>()?;
    let mut counts = vec![0u64; graph.node_count()];
    for j in outputs {
        let i = graph
            .index_of(&j)
            .ok_or_else(|| Error::GraphIntegrity(format!("hash output {j} is not a node")))?;
        counts[i] += 1;
    }
    Ok(counts)
}

/// Sample the hash and compare against `reference` (usually the closed-form
/// limit distribution).
pub fn empirical_distribution(
    graph: &IsogenyGraph,
    reference: &NodeDistribution<f64>,
    samples: usize,
    bit_length: usize,
    seed: u64,
) -> Result<EmpiricalReport> {
    if samples == 0 {
        return Err(Error::Malformed("at least one sample is required".into()));
    }
    let counts = tally(graph, &random_inputs(samples, bit_length, seed))?;
    let n = samples as f64;
    let frequencies: Vec<f64> = counts.iter().map(|&c| c as f64 / n).collect();
    let expected: Vec<f64> =
        graph.nodes().map(|node| reference.get(&node.j).copied().unwrap_or(0.0)).collect();
    let l1_distance = frequencies.iter().zip(&expected).map(|(f, e)| (f - e).abs()).sum();

    let mut chi_square = 0.0;
    let mut cells = 0usize;
    for (&c, &e) in counts.iter().zip(&expected) {
        if e > 0.0 {
            let want = e * n;
            chi_square += (c as f64 - want).powi(2) / want;
            cells += 1;
        }
    }
    let degrees_of_freedom = cells.saturating_sub(1);
    let p_value = if degrees_of_freedom == 0 {
        1.0
    } else {
        let dist = ChiSquared::new(degrees_of_freedom as f64).expect("positive degrees of freedom");
        1.0 - dist.cdf(chi_square)
    };
    Ok(EmpiricalReport { samples, bit_length, seed, counts, frequencies, l1_distance, chi_square, degrees_of_freedom, p_value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::markov::theoretical_node_distribution;

    #[test]
    fn inputs_are_reproducible() {
        assert_eq!(random_inputs(4, 16, 9), random_inputs(4, 16, 9));
        assert_ne!(random_inputs(4, 16, 9), random_inputs(4, 16, 10));
    }

    #[test]
    fn zero_length_inputs_hit_the_start() {
        let g = IsogenyGraph::for_prime(47).unwrap();
        let theory = theoretical_node_distribution::<f64>(&g).unwrap();
        let r = empirical_distribution(&g, &theory, 50, 0, 1).unwrap();
        assert_eq!(r.counts[0], 50);
        assert_eq!(r.counts.iter().sum::<u64>(), 50);
    }

    #[test]
    fn short_run_near_limit() {
        let g = IsogenyGraph::for_prime(23).unwrap();
        let theory = theoretical_node_distribution::<f64>(&g).unwrap();
        let r = empirical_distribution(&g, &theory, 4000, 64, 7).unwrap();
        assert!(r.l1_distance < 0.08, "{r:?}");
        assert_eq!(r.degrees_of_freedom, 2);
    }
}
