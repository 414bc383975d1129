//! Immutable compressed adjacency graphs and the traversal kernels built on
//! them.
//!
//! A [`Graph`] is frozen at construction: neighbor lists are sorted and
//! duplicate-free, stored in CSR form. Every measurement in the crate reads
//! the graph through shared references, so concurrent traversals need no
//! synchronization.

mod ball;
mod bfs;
mod components;
mod degree;

pub use ball::{ball_profile, BallProfile};
pub use bfs::{bfs_distances, Direction, DistanceArray, PairSearch, UNREACHABLE};
pub use components::{largest_component, ComponentInfo};
pub use degree::{degree_histogram, DegreeHistogram};

use thiserror::Error;

/// Node identifier; nodes of a graph with `n` nodes are exactly `0..n`.
pub type NodeId = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    OutOfRange { u: NodeId, v: NodeId, n: usize },
    #[error("self-loop at node {0} but self-loops are not allowed")]
    SelfLoop(NodeId),
}

/// Compressed sparse row adjacency, one row per node.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Csr {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
}

impl Csr {
    /// Builds rows from `(row, col)` pairs, sorting and deduplicating each row.
    fn from_pairs(n: usize, pairs: &[(NodeId, NodeId)]) -> Self {
        let mut counts = vec![0usize; n + 1];
        for &(u, _) in pairs {
            counts[u + 1] += 1;
        }
        for i in 0..n {
            counts[i + 1] += counts[i];
        }
        let mut fill = counts.clone();
        let mut raw = vec![0; pairs.len()];
        for &(u, v) in pairs {
            raw[fill[u]] = v;
            fill[u] += 1;
        }

        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::with_capacity(raw.len());
        offsets.push(0);
        for u in 0..n {
            let row = &mut raw[counts[u]..counts[u + 1]];
            row.sort_unstable();
            let mut last = None;
            for &v in row.iter() {
                if last != Some(v) {
                    targets.push(v);
                    last = Some(v);
                }
            }
            offsets.push(targets.len());
        }
        targets.shrink_to_fit();
        Csr { offsets, targets }
    }

    #[inline]
    fn row(&self, u: NodeId) -> &[NodeId] {
        &self.targets[self.offsets[u]..self.offsets[u + 1]]
    }
}

/// An immutable, optionally directed, unweighted graph.
///
/// For undirected graphs `out_neighbors` and `in_neighbors` coincide. A
/// self-loop contributes one entry to its node's adjacency list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    directed: bool,
    allow_self_loops: bool,
    out: Csr,
    incoming: Option<Csr>,
}

impl Graph {
    /// Builds a graph from an edge sequence. Duplicate edges are collapsed.
    ///
    /// For undirected graphs `(u, v)` and `(v, u)` denote the same edge.
    pub fn build<I>(n: usize, directed: bool, edges: I, allow_self_loops: bool) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut pairs = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::OutOfRange { u, v, n });
            }
            if u == v && !allow_self_loops {
                return Err(GraphError::SelfLoop(u));
            }
            pairs.push((u, v));
            if !directed && u != v {
                pairs.push((v, u));
            }
        }
        let out = Csr::from_pairs(n, &pairs);
        let incoming = if directed {
            let reversed: Vec<_> = pairs.iter().map(|&(u, v)| (v, u)).collect();
            Some(Csr::from_pairs(n, &reversed))
        } else {
            None
        };
        Ok(Graph { n, directed, allow_self_loops, out, incoming })
    }

    pub fn num_nodes(&self) -> usize {
        self.n
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn allows_self_loops(&self) -> bool {
        self.allow_self_loops
    }

    /// Number of edges (undirected) or arcs (directed) after collapsing.
    pub fn num_edges(&self) -> usize {
        if self.directed {
            self.out.targets.len()
        } else {
            let loops = (0..self.n).filter(|&u| self.out.row(u).binary_search(&u).is_ok()).count();
            (self.out.targets.len() - loops) / 2 + loops
        }
    }

    /// Sorted out-neighbors of `u` (all neighbors when undirected).
    #[inline]
    pub fn out_neighbors(&self, u: NodeId) -> &[NodeId] {
        self.out.row(u)
    }

    /// Sorted in-neighbors of `u` (all neighbors when undirected).
    #[inline]
    pub fn in_neighbors(&self, u: NodeId) -> &[NodeId] {
        match &self.incoming {
            Some(csr) => csr.row(u),
            None => self.out.row(u),
        }
    }

    /// Neighbors in the requested traversal direction.
    #[inline]
    pub fn neighbors(&self, u: NodeId, direction: Direction) -> &[NodeId] {
        match direction {
            Direction::Forward => self.out_neighbors(u),
            Direction::Reverse => self.in_neighbors(u),
        }
    }

    pub fn out_degree(&self, u: NodeId) -> usize {
        self.out.row(u).len()
    }

    pub fn in_degree(&self, u: NodeId) -> usize {
        self.in_neighbors(u).len()
    }

    /// Out-degree plus in-degree for directed graphs, plain degree otherwise.
    pub fn total_degree(&self, u: NodeId) -> usize {
        if self.directed {
            self.out_degree(u) + self.in_degree(u)
        } else {
            self.out_degree(u)
        }
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|u| self.out_degree(u)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.out.row(u).binary_search(&v).is_ok()
    }

    /// Edges in lexicographic order; `u <= v` for undirected graphs.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        let directed = self.directed;
        (0..self.n).flat_map(move |u| {
            self.out.row(u).iter().copied().filter(move |&v| directed || u <= v).map(move |v| (u, v))
        })
    }
}

/// Convenience wrapper matching the operation name used across the crate.
pub fn build_graph<I>(n: usize, directed: bool, edges: I, allow_self_loops: bool) -> Result<Graph, GraphError>
where
    I: IntoIterator<Item = (NodeId, NodeId)>,
{
    Graph::build(n, directed, edges, allow_self_loops)
}
