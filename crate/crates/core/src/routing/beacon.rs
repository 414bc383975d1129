use serde::{Deserialize, Serialize};

use super::{check_node, RoutingError};
use crate::graph::{bfs_distances, Direction, Graph, NodeId, UNREACHABLE};

/// Shortest-path trees into and out of one beacon.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BeaconTables {
    pub beacon: NodeId,
    /// Next hop from `u` toward the beacon; `None` at the beacon and at
    /// nodes that cannot reach it.
    pub to_beacon: Vec<Option<NodeId>>,
    /// Predecessor of `u` on the beacon's out-tree.
    pub from_beacon: Vec<Option<NodeId>>,
    /// `d(u, beacon)`.
    pub dist_to: Vec<u32>,
    /// `d(beacon, u)`.
    pub dist_from: Vec<u32>,
}

/// Smallest `w` among `candidates` one step closer in `dist`.
fn parent(candidates: &[NodeId], dist: &[u32], du: u32) -> Option<NodeId> {
    if du == 0 || du == UNREACHABLE {
        return None;
    }
    candidates.iter().copied().find(|&w| dist[w] == du - 1)
}

/// One reverse BFS (distances to the beacon) and one forward BFS
/// (distances from it). Ties between parents go to the smallest id.
pub fn build_beacon_tables(g: &Graph, beacon: NodeId) -> Result<BeaconTables, RoutingError> {
    check_node(beacon, g.num_nodes())?;
    let dist_to = bfs_distances(g, beacon, Direction::Reverse).dist;
    let dist_from = bfs_distances(g, beacon, Direction::Forward).dist;
    let n = g.num_nodes();
    let to_beacon = (0..n).map(|u| parent(g.out_neighbors(u), &dist_to, dist_to[u])).collect();
    let from_beacon = (0..n).map(|u| parent(g.in_neighbors(u), &dist_from, dist_from[u])).collect();
    Ok(BeaconTables { beacon, to_beacon, from_beacon, dist_to, dist_from })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoutedPath {
    pub nodes: Vec<NodeId>,
    pub length: usize,
    pub via_beacon: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RouteOptions {
    /// Splice out the detour when the two legs share a node. Off by default:
    /// the plain concatenation is what the stretch analysis is about.
    pub shortcut: bool,
}

/// The route `a → beacon → b` obtained by concatenating the two tree paths.
pub fn beacon_route(t: &BeaconTables, a: NodeId, b: NodeId) -> Result<RoutedPath, RoutingError> {
    beacon_route_with(t, a, b, RouteOptions::default())
}

pub fn beacon_route_with(t: &BeaconTables, a: NodeId, b: NodeId, opts: RouteOptions) -> Result<RoutedPath, RoutingError> {
    let n = t.dist_to.len();
    check_node(a, n)?;
    check_node(b, n)?;
    if a == b {
        return Ok(RoutedPath { nodes: vec![a], length: 0, via_beacon: false });
    }
    if t.dist_to[a] == UNREACHABLE || t.dist_from[b] == UNREACHABLE {
        return Err(RoutingError::Unroutable { a, b });
    }
    let mut nodes = Vec::with_capacity((t.dist_to[a] + t.dist_from[b]) as usize + 1);
    let mut x = a;
    nodes.push(x);
    while let Some(next) = t.to_beacon[x] {
        nodes.push(next);
        x = next;
    }
    let mut tail = Vec::with_capacity(t.dist_from[b] as usize);
    let mut y = b;
    while let Some(prev) = t.from_beacon[y] {
        tail.push(y);
        y = prev;
    }
    nodes.extend(tail.into_iter().rev());

    if opts.shortcut {
        // Drop the loop between the first repeated node and its last visit.
        let mut last = std::collections::HashMap::new();
        for (i, &v) in nodes.iter().enumerate() {
            last.insert(v, i);
        }
        let mut spliced = Vec::with_capacity(nodes.len());
        let mut i = 0;
        while i < nodes.len() {
            let v = nodes[i];
            spliced.push(v);
            i = last[&v] + 1;
        }
        if spliced.len() < nodes.len() {
            let length = spliced.len() - 1;
            return Ok(RoutedPath { nodes: spliced, length, via_beacon: false });
        }
    }
    let length = nodes.len() - 1;
    Ok(RoutedPath { nodes, length, via_beacon: true })
}
