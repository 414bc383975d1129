use rand::seq::SliceRandom;
use rand::Rng;

use super::{invalid, GenError};
use crate::graph::{Graph, NodeId};
use crate::rng::main_stream;

/// A configuration-model graph and the bookkeeping of its stub matching.
#[derive(Debug, Clone)]
pub struct ConfigurationGraph {
    pub graph: Graph,
    /// Sampled degree of every node after the parity fix.
    pub degrees: Vec<usize>,
    /// Total number of stubs (always even).
    pub stubs: usize,
    pub self_loops_discarded: usize,
    /// Matched pairs that repeated an earlier pair.
    pub multi_edges_discarded: usize,
    /// Nodes whose sampled degree exceeded `n - 1` and was capped.
    pub capped_degrees: usize,
}

/// Draws `D` with `P(D >= d) = d^{1 - tau}` for `d >= 1`.
fn power_law_degree<R: Rng>(rng: &mut R, tau: f64) -> f64 {
    let u = 1.0 - rng.random::<f64>();
    u.powf(-1.0 / (tau - 1.0)).floor()
}

/// Configuration model on i.i.d. power-law degrees with exponent `tau`.
///
/// If the degree sum is odd one uniformly chosen node gets an extra stub.
/// Stubs are matched by a uniform shuffle; self-loops are dropped and
/// parallel edges collapsed.
pub fn gen_configuration(n: usize, tau: f64, seed: u64) -> Result<ConfigurationGraph, GenError> {
    if n < 2 {
        return Err(invalid("n must be at least 2"));
    }
    if !(tau > 2.0) {
        return Err(invalid(format!("power-law exponent must exceed 2, got {tau}")));
    }
    let mut rng = main_stream(seed);
    let cap = (n - 1) as f64;
    let mut capped_degrees = 0;
    let mut degrees: Vec<usize> = (0..n)
        .map(|_| {
            let d = power_law_degree(&mut rng, tau);
            if d > cap {
                capped_degrees += 1;
                n - 1
            } else {
                d as usize
            }
        })
        .collect();
    if degrees.iter().sum::<usize>() % 2 == 1 {
        let u = rng.random_range(0..n);
        degrees[u] += 1;
    }

    let mut stubs: Vec<NodeId> = degrees.iter().enumerate().flat_map(|(u, &d)| std::iter::repeat_n(u, d)).collect();
    stubs.shuffle(&mut rng);

    let mut self_loops_discarded = 0;
    let mut pairs = Vec::with_capacity(stubs.len() / 2);
    for pair in stubs.chunks_exact(2) {
        let (u, v) = (pair[0], pair[1]);
        if u == v {
            self_loops_discarded += 1;
        } else {
            pairs.push((u.min(v), u.max(v)));
        }
    }
    let proposed = pairs.len();
    let graph = Graph::build(n, false, pairs, false)?;
    Ok(ConfigurationGraph {
        multi_edges_discarded: proposed - graph.num_edges(),
        stubs: stubs.len(),
        graph,
        degrees,
        self_loops_discarded,
        capped_degrees,
    })
}
