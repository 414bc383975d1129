use serde::{Deserialize, Serialize};

use super::{Graph, NodeId};

/// Marks nodes with no path from the source. Never a valid hop count.
pub const UNREACHABLE: u32 = u32::MAX;

/// Traversal direction. `Reverse` follows arcs backwards; on undirected
/// graphs the two directions are identical.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Reverse,
}

/// Hop distances from one source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceArray {
    pub source: NodeId,
    pub direction: Direction,
    pub dist: Vec<u32>,
}

impl DistanceArray {
    /// `None` when `v` is unreachable.
    pub fn get(&self, v: NodeId) -> Option<u32> {
        match self.dist[v] {
            UNREACHABLE => None,
            d => Some(d),
        }
    }

    /// Largest finite distance.
    pub fn eccentricity(&self) -> u32 {
        self.dist.iter().copied().filter(|&d| d != UNREACHABLE).max().unwrap_or(0)
    }

    pub fn reachable_count(&self) -> usize {
        self.dist.iter().filter(|&&d| d != UNREACHABLE).count()
    }
}

/// Breadth-first search from `source`.
///
/// Panics if `source` is not a node of `g`.
pub fn bfs_distances(g: &Graph, source: NodeId, direction: Direction) -> DistanceArray {
    let dist = bfs_limited(g, source, direction, None);
    DistanceArray { source, direction, dist }
}

/// BFS that stops expanding after depth `limit`; nodes beyond stay
/// `UNREACHABLE`.
pub(crate) fn bfs_limited(g: &Graph, source: NodeId, direction: Direction, limit: Option<u32>) -> Vec<u32> {
    assert!(source < g.num_nodes(), "source {source} out of range");
    let mut dist = vec![UNREACHABLE; g.num_nodes()];
    let mut queue = Vec::with_capacity(g.num_nodes());
    dist[source] = 0;
    queue.push(source);
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        let du = dist[u];
        if limit.is_some_and(|l| du >= l) {
            continue;
        }
        for &v in g.neighbors(u, direction) {
            if dist[v] == UNREACHABLE {
                dist[v] = du + 1;
                queue.push(v);
            }
        }
    }
    dist
}

/// Reusable scratch space for exact point-to-point hop distances.
///
/// Runs a bidirectional BFS that always expands the smaller frontier by one
/// full level. Marks are epoch-stamped so consecutive queries never clear
/// the per-node arrays.
#[derive(Debug, Clone)]
pub struct PairSearch {
    fwd_dist: Vec<u32>,
    bwd_dist: Vec<u32>,
    fwd_mark: Vec<u32>,
    bwd_mark: Vec<u32>,
    epoch: u32,
    fwd_frontier: Vec<NodeId>,
    bwd_frontier: Vec<NodeId>,
    next: Vec<NodeId>,
}

impl PairSearch {
    pub fn new(n: usize) -> Self {
        PairSearch {
            fwd_dist: vec![0; n],
            bwd_dist: vec![0; n],
            fwd_mark: vec![0; n],
            bwd_mark: vec![0; n],
            epoch: 0,
            fwd_frontier: Vec::new(),
            bwd_frontier: Vec::new(),
            next: Vec::new(),
        }
    }

    fn bump_epoch(&mut self) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.fwd_mark.iter_mut().for_each(|m| *m = 0);
            self.bwd_mark.iter_mut().for_each(|m| *m = 0);
            self.epoch = 1;
        }
    }

    /// Exact d(s, t) following arcs forward, or `None` if `t` is unreachable.
    pub fn distance(&mut self, g: &Graph, s: NodeId, t: NodeId) -> Option<u32> {
        if s == t {
            return Some(0);
        }
        self.bump_epoch();
        let epoch = self.epoch;
        self.fwd_mark[s] = epoch;
        self.fwd_dist[s] = 0;
        self.bwd_mark[t] = epoch;
        self.bwd_dist[t] = 0;
        self.fwd_frontier.clear();
        self.fwd_frontier.push(s);
        self.bwd_frontier.clear();
        self.bwd_frontier.push(t);
        let (mut fwd_depth, mut bwd_depth) = (0u32, 0u32);

        loop {
            if self.fwd_frontier.is_empty() || self.bwd_frontier.is_empty() {
                return None;
            }
            let forward = self.fwd_frontier.len() <= self.bwd_frontier.len();
            let mut best = UNREACHABLE;
            self.next.clear();
            if forward {
                for &u in &self.fwd_frontier {
                    for &v in g.out_neighbors(u) {
                        if self.fwd_mark[v] != epoch {
                            self.fwd_mark[v] = epoch;
                            self.fwd_dist[v] = fwd_depth + 1;
                            self.next.push(v);
                            if self.bwd_mark[v] == epoch {
                                best = best.min(fwd_depth + 1 + self.bwd_dist[v]);
                            }
                        }
                    }
                }
                fwd_depth += 1;
                std::mem::swap(&mut self.fwd_frontier, &mut self.next);
            } else {
                for &u in &self.bwd_frontier {
                    for &v in g.in_neighbors(u) {
                        if self.bwd_mark[v] != epoch {
                            self.bwd_mark[v] = epoch;
                            self.bwd_dist[v] = bwd_depth + 1;
                            self.next.push(v);
                            if self.fwd_mark[v] == epoch {
                                best = best.min(bwd_depth + 1 + self.fwd_dist[v]);
                            }
                        }
                    }
                }
                bwd_depth += 1;
                std::mem::swap(&mut self.bwd_frontier, &mut self.next);
            }
            if best != UNREACHABLE {
                return Some(best);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use proptest::prelude::*;

    fn path(n: usize) -> Graph {
        build_graph(n, false, (0..n - 1).map(|i| (i, i + 1)), false).unwrap()
    }

    /// Floyd-Warshall over hop counts; `UNREACHABLE` as infinity.
    fn floyd_warshall(g: &Graph) -> Vec<Vec<u32>> {
        let n = g.num_nodes();
        let mut d = vec![vec![UNREACHABLE; n]; n];
        for u in 0..n {
            d[u][u] = 0;
            for &v in g.out_neighbors(u) {
                if u != v {
                    d[u][v] = 1;
                }
            }
        }
        for k in 0..n {
            for i in 0..n {
                if d[i][k] == UNREACHABLE {
                    continue;
                }
                for j in 0..n {
                    if d[k][j] != UNREACHABLE && d[i][k] + d[k][j] < d[i][j] {
                        d[i][j] = d[i][k] + d[k][j];
                    }
                }
            }
        }
        d
    }

    #[test]
    fn path_distances() {
        let g = path(10);
        let d = bfs_distances(&g, 0, Direction::Forward);
        for k in 0..10 {
            assert_eq!(d.get(k), Some(k as u32));
        }
        assert_eq!(d.eccentricity(), 9);
    }

    #[test]
    fn directionality() {
        let g = build_graph(2, true, [(0, 1)], false).unwrap();
        let d = bfs_distances(&g, 1, Direction::Forward);
        assert_eq!(d.get(0), None);
        let r = bfs_distances(&g, 1, Direction::Reverse);
        assert_eq!(r.get(0), Some(1));
    }

    #[test]
    fn limited_bfs_stops() {
        let g = path(10);
        let d = bfs_limited(&g, 0, Direction::Forward, Some(3));
        assert_eq!(d[3], 3);
        assert_eq!(d[4], UNREACHABLE);
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (2..max_n, any::<bool>()).prop_flat_map(|(n, directed)| {
            proptest::collection::vec((0..n, 0..n), 0..(3 * n)).prop_map(move |edges| {
                let edges = edges.into_iter().filter(|(u, v)| u != v);
                build_graph(n, directed, edges, false).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn bfs_matches_floyd_warshall(g in arb_graph(64)) {
            let fw = floyd_warshall(&g);
            for s in 0..g.num_nodes() {
                let d = bfs_distances(&g, s, Direction::Forward);
                prop_assert_eq!(&d.dist, &fw[s]);
                let r = bfs_distances(&g, s, Direction::Reverse);
                for v in 0..g.num_nodes() {
                    prop_assert_eq!(r.dist[v], fw[v][s]);
                }
            }
        }

        #[test]
        fn pair_search_matches_floyd_warshall(g in arb_graph(40)) {
            let fw = floyd_warshall(&g);
            let mut search = PairSearch::new(g.num_nodes());
            for s in 0..g.num_nodes() {
                for t in 0..g.num_nodes() {
                    let expect = match fw[s][t] { UNREACHABLE => None, d => Some(d) };
                    prop_assert_eq!(search.distance(&g, s, t), expect);
                }
            }
        }

        #[test]
        fn undirected_distance_is_a_metric(g in arb_graph(30)) {
            prop_assume!(!g.is_directed());
            let n = g.num_nodes();
            let d: Vec<_> = (0..n).map(|s| bfs_distances(&g, s, Direction::Forward)).collect();
            for a in 0..n {
                for b in 0..n {
                    prop_assert_eq!(d[a].dist[b], d[b].dist[a]);
                    for c in 0..n {
                        if let (Some(ab), Some(bc)) = (d[a].get(b), d[b].get(c)) {
                            prop_assert!(d[a].dist[c] <= ab + bc);
                        }
                    }
                }
            }
        }
    }
}
