use rand::Rng;

use super::{invalid, GenError};
use crate::graph::{Graph, NodeId};
use crate::rng::main_stream;

/// A Watts-Strogatz graph with its per-edge rewiring record.
#[derive(Debug, Clone)]
pub struct WattsStrogatzGraph {
    pub graph: Graph,
    /// `(fixed node, other endpoint)` for every edge; entry `i * m + (k - 1)`
    /// is the edge that started as `(i, i + k mod n)`.
    pub fixed_edges: Vec<(NodeId, NodeId)>,
    /// Whether the corresponding entry of `fixed_edges` was rewired.
    pub rewired: Vec<bool>,
}

impl WattsStrogatzGraph {
    pub fn rewired_count(&self) -> usize {
        self.rewired.iter().filter(|&&r| r).count()
    }
}

/// Ring lattice on `n` nodes with `m` neighbors per side, then every
/// rightward edge `(i, j)` is independently rewired with probability
/// `p_rewire` to `(i, k)`, `k` uniform among nodes that create neither a
/// self-loop nor a multi-edge. Nodes are processed in order `0..n`, offsets
/// in order `1..=m`; `k` is resampled until valid.
pub fn gen_watts_strogatz(n: usize, m: usize, p_rewire: f64, seed: u64) -> Result<WattsStrogatzGraph, GenError> {
    if n < 2 || m < 1 || 2 * m >= n {
        return Err(invalid(format!("Watts-Strogatz needs 1 <= m < n/2, got m={m}, n={n}")));
    }
    if !(0.0..=1.0).contains(&p_rewire) {
        return Err(invalid(format!("rewiring probability must be in [0,1], got {p_rewire}")));
    }

    let mut adj: Vec<Vec<NodeId>> = (0..n)
        .map(|i| (1..=m).flat_map(|k| [(i + k) % n, (i + n - k) % n]).collect())
        .collect();
    let mut fixed_edges = Vec::with_capacity(n * m);
    let mut rewired = Vec::with_capacity(n * m);
    let mut rng = main_stream(seed);

    for i in 0..n {
        for k in 1..=m {
            let j = (i + k) % n;
            let flip = rng.random::<f64>() < p_rewire;
            // Valid targets exclude i and its current neighbors (j included).
            if !flip || adj[i].len() + 1 >= n {
                fixed_edges.push((i, j));
                rewired.push(false);
                continue;
            }
            let target = loop {
                let t = rng.random_range(0..n);
                if t != i && !adj[i].contains(&t) {
                    break t;
                }
            };
            remove(&mut adj[i], j);
            remove(&mut adj[j], i);
            adj[i].push(target);
            adj[target].push(i);
            fixed_edges.push((i, target));
            rewired.push(true);
        }
    }

    let graph = Graph::build(n, false, fixed_edges.iter().copied(), false)?;
    Ok(WattsStrogatzGraph { graph, fixed_edges, rewired })
}

fn remove(list: &mut Vec<NodeId>, x: NodeId) {
    let pos = list.iter().position(|&y| y == x).expect("edge present before rewiring");
    list.swap_remove(pos);
}
