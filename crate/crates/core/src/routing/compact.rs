//! Port/header realization of beacon routing on an undirected graph.
//!
//! Every node numbers its incident edges `1..=deg(u)` in increasing order of
//! neighbor id. A non-beacon node stores one port: its BFS-tree edge toward
//! the beacon. The beacon stores, for every other node `v`, the tree
//! predecessor `w` of `v` and `w`'s port for the edge `w–v`.
//!
//! A message from `u` to `v` starts with header `(v, 0)` and follows stored
//! ports to the beacon. The beacon rewrites the header to the list of ports
//! along the tree path to `v` with the phase bit set; every later node pops
//! the first port and forwards on it, delivering once the list is empty.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use super::{bits_for, check_node, RoutingError};
use crate::graph::{bfs_distances, Direction, Graph, NodeId};

#[derive(Debug, Clone)]
pub struct CompactScheme<'g> {
    pub graph: &'g Graph,
    pub beacon: NodeId,
    /// Port toward the beacon; 0 at the beacon itself.
    pub ports: Vec<u32>,
    /// At the beacon: `(predecessor, predecessor's port)` for each node;
    /// `None` for the beacon.
    pub beacon_table: Vec<Option<(NodeId, u32)>>,
    pub dist_to: Vec<u32>,
    pub id_bits: u64,
    pub port_bits: u64,
}

impl CompactScheme<'_> {
    /// 1-based port of the edge `u–w` at `u`.
    pub fn port_of(&self, u: NodeId, w: NodeId) -> Option<u32> {
        port_of(self.graph, u, w)
    }

    /// Neighbor reached from `u` through `port`.
    pub fn follow(&self, u: NodeId, port: u32) -> Option<NodeId> {
        let adj = self.graph.out_neighbors(u);
        (port as usize).checked_sub(1).and_then(|i| adj.get(i).copied())
    }

    /// Ports along the tree path from the beacon to `v`.
    fn port_list(&self, v: NodeId) -> Vec<u32> {
        let mut list = Vec::with_capacity(self.dist_to[v] as usize);
        let mut x = v;
        while let Some((w, p)) = self.beacon_table[x] {
            list.push(p);
            x = w;
        }
        list.reverse();
        list
    }
}

fn port_of(g: &Graph, u: NodeId, w: NodeId) -> Option<u32> {
    g.out_neighbors(u).binary_search(&w).ok().map(|i| i as u32 + 1)
}

/// BFS tree from `beacon` with smallest-id parents.
pub fn compact_scheme_build(g: &Graph, beacon: NodeId) -> Result<CompactScheme<'_>, RoutingError> {
    if g.is_directed() {
        return Err(RoutingError::DirectedInput("compact_scheme_build"));
    }
    let n = g.num_nodes();
    check_node(beacon, n)?;
    let dist = bfs_distances(g, beacon, Direction::Forward);
    if dist.reachable_count() < n {
        let components = crate::graph::largest_component(g).num_components();
        return Err(RoutingError::Disconnected { components });
    }
    let dist_to = dist.dist;
    let mut ports = vec![0; n];
    let mut beacon_table = vec![None; n];
    for v in 0..n {
        if v == beacon {
            continue;
        }
        let parent = g
            .out_neighbors(v)
            .iter()
            .copied()
            .find(|&w| dist_to[w] + 1 == dist_to[v])
            .expect("BFS layer has a parent");
        ports[v] = port_of(g, v, parent).expect("adjacent");
        beacon_table[v] = Some((parent, port_of(g, parent, v).expect("adjacent")));
    }
    Ok(CompactScheme {
        graph: g,
        beacon,
        ports,
        beacon_table,
        dist_to,
        id_bits: bits_for(n),
        port_bits: bits_for(g.max_degree()),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Header {
    /// Phase 0: destination id.
    Dest { v: NodeId },
    /// Phase 1: ports still to be taken.
    Ports { remaining: Vec<u32> },
}

impl Header {
    pub fn phase(&self) -> u8 {
        match self {
            Header::Dest { .. } => 0,
            Header::Ports { .. } => 1,
        }
    }

    /// `D:<v>:0` or `P:<remaining>:1`.
    pub fn summary(&self) -> String {
        match self {
            Header::Dest { v } => format!("D:{v}:0"),
            Header::Ports { remaining } => format!("P:{}:1", remaining.len()),
        }
    }
}

/// One node's handling of a message. `header` is the header as received;
/// `out_port` 0 means the message was delivered here.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub node: NodeId,
    pub in_port: u32,
    pub header: Header,
    pub out_port: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceResult {
    pub steps: Vec<TraceStep>,
    pub delivered: bool,
    pub hops: usize,
}

impl TraceResult {
    /// Number of phase changes along the trace.
    pub fn phase_flips(&self) -> usize {
        self.steps.windows(2).filter(|w| w[0].header.phase() != w[1].header.phase()).count()
    }
}

impl fmt::Display for TraceResult {
    /// `node in_port header out_port`, one step per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for s in &self.steps {
            writeln!(out, "{} {} {} {}", s.node, s.in_port, s.header.summary(), s.out_port)?;
        }
        f.write_str(&out)
    }
}

/// Runs the two-phase protocol hop by hop. `u == v` is delivered with zero
/// hops; every other message visits the beacon. Only the local routing state of
/// the current node is consulted at each step. A trace that does not finish
/// within `2n + 2` steps is returned undelivered.
pub fn compact_route_sim(s: &CompactScheme<'_>, u: NodeId, v: NodeId) -> Result<TraceResult, RoutingError> {
    let n = s.graph.num_nodes();
    check_node(u, n)?;
    check_node(v, n)?;
    let mut steps = Vec::new();
    let (mut node, mut in_port, mut header) = (u, 0, Header::Dest { v });
    for _ in 0..2 * n + 2 {
        let (out_port, next_header) = match &header {
            // Phase-0 messages pass through `v` without stopping; only a
            // message addressed to its own source is delivered at once.
            Header::Dest { v } if node == *v && steps.is_empty() => (0, None),
            Header::Dest { v } if node == s.beacon => {
                let mut list = s.port_list(*v);
                if list.is_empty() {
                    (0, None)
                } else {
                    let p = list.remove(0);
                    (p, Some(Header::Ports { remaining: list }))
                }
            }
            Header::Dest { .. } => (s.ports[node], Some(header.clone())),
            Header::Ports { remaining } => match remaining.split_first() {
                None => (0, None),
                Some((&p, rest)) => (p, Some(Header::Ports { remaining: rest.to_vec() })),
            },
        };
        steps.push(TraceStep { node, in_port, header: header.clone(), out_port });
        let Some(next_header) = next_header else {
            let hops = steps.len() - 1;
            return Ok(TraceResult { delivered: node == v, steps, hops });
        };
        let Some(next) = s.follow(node, out_port) else { break };
        in_port = port_of(s.graph, next, node).unwrap_or(0);
        node = next;
        header = next_header;
    }
    let hops = steps.len().saturating_sub(1);
    Ok(TraceResult { steps, delivered: false, hops })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MemoryReport {
    pub n: usize,
    pub beacon: NodeId,
    /// `⌈log₂ n⌉`.
    pub id_bits: u64,
    /// `⌈log₂ Δ⌉`; a port `p` is stored as `p - 1`.
    pub port_bits: u64,
    /// Routing-table bits at each node; the beacon's entry is its full table.
    pub per_node_bits: Vec<u64>,
    pub beacon_bits: u64,
    pub max_non_beacon_bits: u64,
    pub total_bits: u64,
    /// `total_bits / (n log₂ n)`.
    pub implied_constant: f64,
}

/// Exact bit counts of the stored tables under fixed-width encodings.
pub fn memory_account(s: &CompactScheme<'_>) -> MemoryReport {
    let n = s.graph.num_nodes();
    let entry = s.id_bits + s.port_bits;
    let beacon_bits = (n as u64 - 1) * entry;
    let per_node_bits: Vec<u64> = (0..n).map(|u| if u == s.beacon { beacon_bits } else { s.port_bits }).collect();
    let total_bits = per_node_bits.iter().sum();
    let max_non_beacon_bits = if n > 1 { s.port_bits } else { 0 };
    let scale = n as f64 * (n as f64).log2();
    MemoryReport {
        n,
        beacon: s.beacon,
        id_bits: s.id_bits,
        port_bits: s.port_bits,
        per_node_bits,
        beacon_bits,
        max_non_beacon_bits,
        total_bits,
        implied_constant: if scale > 0.0 { total_bits as f64 / scale } else { 0.0 },
    }
}

#[cfg(test)]
/// Hop count the protocol must produce for a connected pair.
pub(crate) fn expected_hops(s: &CompactScheme<'_>, u: NodeId, v: NodeId) -> usize {
    if u == v || s.dist_to[u] == crate::graph::UNREACHABLE {
        0
    } else {
        (s.dist_to[u] + s.dist_to[v]) as usize
    }
}
