use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::MetricsError;
use crate::graph::{bfs_distances, largest_component, Direction, Graph, NodeId, PairSearch, UNREACHABLE};
use crate::rng::main_stream;

/// Which nodes pair endpoints are drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    #[default]
    All,
    /// Both endpoints in the largest (weakly) connected component.
    Giant,
}

/// Counts of sampled pairwise hop distances.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceHistogram {
    pub counts: BTreeMap<u32, u64>,
    pub sampled_pairs: u64,
    pub unreachable: u64,
    pub scope: Scope,
}

impl DistanceHistogram {
    pub fn from_counts(counts: BTreeMap<u32, u64>, unreachable: u64, scope: Scope) -> Self {
        let sampled_pairs = counts.values().sum::<u64>() + unreachable;
        DistanceHistogram { counts, sampled_pairs, unreachable, scope }
    }

    pub fn finite_pairs(&self) -> u64 {
        self.sampled_pairs - self.unreachable
    }

    /// `(distance, fraction of finite pairs)` in increasing distance order.
    pub fn fractions(&self) -> Vec<(u32, f64)> {
        let total = self.finite_pairs() as f64;
        self.counts.iter().map(|(&d, &c)| (d, c as f64 / total)).collect()
    }

    pub fn unreachable_fraction(&self) -> f64 {
        if self.sampled_pairs == 0 {
            0.0
        } else {
            self.unreachable as f64 / self.sampled_pairs as f64
        }
    }

    fn record(&mut self, d: u32) {
        self.sampled_pairs += 1;
        if d == UNREACHABLE {
            self.unreachable += 1;
        } else {
            *self.counts.entry(d).or_insert(0) += 1;
        }
    }
}

/// Sources with at least this many sampled targets get one full BFS;
/// others are answered by bidirectional point-to-point search.
const FULL_BFS_TARGETS: usize = 16;

/// Draws `num_pairs` ordered pairs `(u, v)`, `u != v`, uniformly with
/// replacement from the scope, and records `d(u, v)` following arcs forward.
pub fn sample_pair_distances(
    g: &Graph,
    num_pairs: usize,
    seed: u64,
    scope: Scope,
) -> Result<DistanceHistogram, MetricsError> {
    if num_pairs == 0 {
        return Err(MetricsError::InvalidParameter("num_pairs must be at least 1".into()));
    }
    let pool: Vec<NodeId> = match scope {
        Scope::All => (0..g.num_nodes()).collect(),
        Scope::Giant => largest_component(g).largest_members(),
    };
    if pool.len() < 2 {
        return Err(MetricsError::InvalidParameter(format!("need two distinct nodes in scope, have {}", pool.len())));
    }

    let mut rng = main_stream(seed);
    let k = pool.len();
    let mut pairs: Vec<(NodeId, NodeId)> = (0..num_pairs)
        .map(|_| {
            let i = rng.random_range(0..k);
            let mut j = rng.random_range(0..k - 1);
            if j >= i {
                j += 1;
            }
            (pool[i], pool[j])
        })
        .collect();
    pairs.sort_unstable();

    let groups: Vec<&[(NodeId, NodeId)]> = pairs.chunk_by(|a, b| a.0 == b.0).collect();
    let n = g.num_nodes();
    let distances: Vec<u32> = groups
        .par_iter()
        .with_min_len(64)
        .map_init(
            || PairSearch::new(n),
            |search, group| {
                let s = group[0].0;
                if group.len() >= FULL_BFS_TARGETS {
                    let d = bfs_distances(g, s, Direction::Forward);
                    group.iter().map(|&(_, t)| d.dist[t]).collect::<Vec<_>>()
                } else {
                    group.iter().map(|&(_, t)| search.distance(g, s, t).unwrap_or(UNREACHABLE)).collect()
                }
            },
        )
        .flatten()
        .collect();

    let mut h = DistanceHistogram::from_counts(BTreeMap::new(), 0, scope);
    for d in distances {
        h.record(d);
    }
    Ok(h)
}

/// Every pair exactly once: unordered pairs when undirected, ordered pairs
/// `u != v` when directed.
pub fn exhaustive_pair_distances(g: &Graph) -> DistanceHistogram {
    let n = g.num_nodes();
    let per_source: Vec<Vec<u32>> = (0..n)
        .into_par_iter()
        .map(|u| {
            let d = bfs_distances(g, u, Direction::Forward);
            let start = if g.is_directed() { 0 } else { u + 1 };
            (start..n).filter(|&v| v != u).map(|v| d.dist[v]).collect()
        })
        .collect();
    let mut h = DistanceHistogram::from_counts(BTreeMap::new(), 0, Scope::All);
    for d in per_source.into_iter().flatten() {
        h.record(d);
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete_graph, disjoint_cliques, gen_erdos_renyi, path_graph};

    #[test]
    fn complete_graph_distances_are_one() {
        let h = sample_pair_distances(&complete_graph(50), 2000, 1, Scope::All).unwrap();
        assert_eq!(h.counts, BTreeMap::from([(1, 2000)]));
        assert_eq!(h.unreachable, 0);
    }

    #[test]
    fn path_exhaustive_histogram() {
        let h = exhaustive_pair_distances(&path_graph(10));
        let expect: BTreeMap<u32, u64> = (1..=9).map(|d| (d, 10 - d as u64)).collect();
        assert_eq!(h.counts, expect);
        assert_eq!(h.sampled_pairs, 45);
    }

    #[test]
    fn sampled_distances_match_bfs() {
        let g = gen_erdos_renyi(400, 3.0, 2).unwrap();
        let h = sample_pair_distances(&g, 5000, 9, Scope::All).unwrap();
        assert_eq!(h.counts.values().sum::<u64>() + h.unreachable, 5000);
        assert!(h.counts.keys().all(|&d| d >= 1));
        // Replaying the same draws sequentially with full BFS gives the same histogram.
        let mut rng = main_stream(9);
        let mut replay = DistanceHistogram::from_counts(BTreeMap::new(), 0, Scope::All);
        for _ in 0..5000 {
            let u = rng.random_range(0..400);
            let mut v = rng.random_range(0..399);
            if v >= u {
                v += 1;
            }
            replay.record(bfs_distances(&g, u, Direction::Forward).dist[v]);
        }
        assert_eq!(h, replay);
    }

    #[test]
    fn giant_scope_never_unreachable_when_undirected() {
        // Two components of sizes 30 and 10.
        let mut edges: Vec<(usize, usize)> = (1..30).map(|i| (i - 1, i)).collect();
        edges.extend((31..40).map(|i| (i - 1, i)));
        let g = Graph::build(40, false, edges, false).unwrap();
        let all = sample_pair_distances(&g, 3000, 4, Scope::All).unwrap();
        assert!(all.unreachable > 0);
        let giant = sample_pair_distances(&g, 3000, 4, Scope::Giant).unwrap();
        assert_eq!(giant.unreachable, 0);
        assert_eq!(giant.scope, Scope::Giant);
    }

    #[test]
    fn cliques_split_half_unreachable() {
        let h = sample_pair_distances(&disjoint_cliques(2, 100), 20_000, 3, Scope::All).unwrap();
        let frac = h.unreachable_fraction();
        assert!((frac - 100.0 / 199.0).abs() < 0.02, "{frac}");
    }

    #[test]
    fn independent_of_thread_count() {
        let g = gen_erdos_renyi(3000, 4.0, 5).unwrap();
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| sample_pair_distances(&g, 20_000, 12, Scope::All).unwrap())
        };
        assert_eq!(run(1), run(4));
    }

    #[test]
    fn rejects_degenerate_input() {
        assert!(sample_pair_distances(&path_graph(5), 0, 1, Scope::All).is_err());
        assert!(sample_pair_distances(&path_graph(1), 10, 1, Scope::All).is_err());
    }
}
