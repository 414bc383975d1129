//! Deterministic reference graphs and the random regular graph used as a
//! test fixture.

use rand::seq::SliceRandom;

use super::{invalid, GenError};
use crate::graph::{Graph, NodeId};
use crate::rng::main_stream;

fn undirected(n: usize, edges: impl IntoIterator<Item = (NodeId, NodeId)>) -> Graph {
    Graph::build(n, false, edges, false).expect("reference graph edges are valid")
}

pub fn path_graph(n: usize) -> Graph {
    undirected(n, (1..n).map(|i| (i - 1, i)))
}

pub fn cycle_graph(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least 3 nodes");
    undirected(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete_graph(n: usize) -> Graph {
    undirected(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// Star with center `0` and leaves `1..n`.
pub fn star_graph(n: usize) -> Graph {
    undirected(n, (1..n).map(|v| (0, v)))
}

/// `count` disjoint copies of `K_size`; copy `c` holds nodes
/// `c*size..(c+1)*size`.
pub fn disjoint_cliques(count: usize, size: usize) -> Graph {
    undirected(
        count * size,
        (0..count).flat_map(|c| {
            let base = c * size;
            (0..size).flat_map(move |i| (i + 1..size).map(move |j| (base + i, base + j)))
        }),
    )
}

/// Each node joined to the `m` nearest nodes on either side of a ring.
pub fn ring_lattice(n: usize, m: usize) -> Graph {
    assert!(2 * m < n, "ring lattice needs m < n/2");
    undirected(n, (0..n).flat_map(|i| (1..=m).map(move |k| (i, (i + k) % n))))
}

const REGULAR_ATTEMPTS: usize = 1000;

/// Uniform simple `d`-regular graph by repeated stub pairing, rejecting
/// pairings with self-loops or parallel edges.
pub fn gen_random_regular(n: usize, d: usize, seed: u64) -> Result<Graph, GenError> {
    if d >= n || (n * d) % 2 == 1 {
        return Err(invalid(format!("no simple {d}-regular graph on {n} nodes")));
    }
    let mut rng = main_stream(seed);
    let mut stubs: Vec<NodeId> = (0..n).flat_map(|u| std::iter::repeat_n(u, d)).collect();
    'attempt: for _ in 0..REGULAR_ATTEMPTS {
        stubs.shuffle(&mut rng);
        let mut edges = Vec::with_capacity(n * d / 2);
        for pair in stubs.chunks_exact(2) {
            if pair[0] == pair[1] {
                continue 'attempt;
            }
            edges.push((pair[0].min(pair[1]), pair[0].max(pair[1])));
        }
        let g = undirected(n, edges);
        if g.num_edges() == n * d / 2 {
            return Ok(g);
        }
    }
    Err(GenError::TooManyAttempts(REGULAR_ATTEMPTS))
}
