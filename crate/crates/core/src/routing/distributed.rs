//! Synchronous distance-vector construction of beacon tables.
//!
//! Every round each node sends its current vector of (distance to each
//! beacon) to all neighbors, then keeps, per beacon, the best of its own
//! entry and `1 + neighbor entry`. All reads in a round see the previous
//! round's state, so the outcome does not depend on evaluation order.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{bits_for, check_node, RoutingError};
use crate::graph::{bfs_distances, Direction, Graph, NodeId, UNREACHABLE};
use crate::rng::main_stream;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BeaconChoice {
    /// Each node independently becomes a beacon with this probability.
    Probability(f64),
    Explicit(Vec<NodeId>),
}

impl BeaconChoice {
    /// `ln(n) / n`.
    pub fn log_over_n(n: usize) -> Self {
        BeaconChoice::Probability((n as f64).ln() / n as f64)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributedReport {
    pub beacons: Vec<NodeId>,
    pub converged: bool,
    /// Last round in which any entry changed (0 if none ever did).
    pub rounds_to_fixpoint: usize,
    /// Rounds simulated, including the quiet round that detects the fixpoint.
    pub rounds_executed: usize,
    /// One value vector per edge direction per round: `2|E|`.
    pub messages_per_round: u64,
    pub total_messages: u64,
    /// Bits of one value vector (`beacons · ⌈log₂(n+1)⌉`).
    pub bits_per_message: u64,
    /// Extra bits per message to disseminate beacon ids alongside distances.
    pub beacon_id_bits_per_message: u64,
    /// Fixpoint distances equal BFS distances for every beacon.
    pub agrees_with_bfs: bool,
    /// Next hops point to a neighbor one step closer, for every entry.
    pub next_hops_valid: bool,
    /// Largest finite distance from any beacon.
    pub max_beacon_eccentricity: u32,
}

pub fn distributed_beacon_sim(
    g: &Graph,
    choice: &BeaconChoice,
    max_rounds: usize,
    seed: u64,
) -> Result<DistributedReport, RoutingError> {
    if g.is_directed() {
        return Err(RoutingError::DirectedInput("distributed_beacon_sim"));
    }
    if max_rounds == 0 {
        return Err(RoutingError::InvalidParameter("max_rounds must be at least 1".into()));
    }
    let n = g.num_nodes();
    let beacons: Vec<NodeId> = match choice {
        BeaconChoice::Probability(p) => {
            if !(0.0..=1.0).contains(p) {
                return Err(RoutingError::InvalidParameter(format!("beacon probability must be in [0,1], got {p}")));
            }
            let mut rng = main_stream(seed);
            (0..n).filter(|_| rng.random::<f64>() < *p).collect()
        }
        BeaconChoice::Explicit(list) => {
            let mut list = list.clone();
            list.sort_unstable();
            list.dedup();
            for &b in &list {
                check_node(b, n)?;
            }
            list
        }
    };
    let k = beacons.len();

    // Row-major n × k tables.
    let mut dist = vec![UNREACHABLE; n * k];
    let mut hop = vec![usize::MAX; n * k];
    for (j, &b) in beacons.iter().enumerate() {
        dist[b * k + j] = 0;
        hop[b * k + j] = b;
    }

    let mut rounds_to_fixpoint = 0;
    let mut rounds_executed = 0;
    let mut converged = k == 0;
    while !converged && rounds_executed < max_rounds {
        rounds_executed += 1;
        let prev = &dist;
        let updates: Vec<(Vec<u32>, Vec<usize>, bool)> = (0..n)
            .into_par_iter()
            .with_min_len(256)
            .map(|u| {
                let mut d = prev[u * k..(u + 1) * k].to_vec();
                let mut h = hop[u * k..(u + 1) * k].to_vec();
                let mut changed = false;
                // Neighbors in increasing id order, strict improvement only:
                // ties keep the smallest id.
                for &w in g.out_neighbors(u) {
                    for j in 0..k {
                        let via = prev[w * k + j];
                        if via != UNREACHABLE && via + 1 < d[j] {
                            d[j] = via + 1;
                            h[j] = w;
                            changed = true;
                        }
                    }
                }
                (d, h, changed)
            })
            .collect();
        let mut any = false;
        for (u, (d, h, changed)) in updates.into_iter().enumerate() {
            if changed {
                dist[u * k..(u + 1) * k].copy_from_slice(&d);
                hop[u * k..(u + 1) * k].copy_from_slice(&h);
                any = true;
            }
        }
        if any {
            rounds_to_fixpoint = rounds_executed;
        } else {
            converged = true;
        }
    }

    let mut agrees_with_bfs = true;
    let mut next_hops_valid = true;
    let mut max_beacon_eccentricity = 0;
    for (j, &b) in beacons.iter().enumerate() {
        let oracle = bfs_distances(g, b, Direction::Forward);
        max_beacon_eccentricity = max_beacon_eccentricity.max(oracle.eccentricity());
        for u in 0..n {
            let d = dist[u * k + j];
            agrees_with_bfs &= d == oracle.dist[u];
            if d != UNREACHABLE && d > 0 {
                let h = hop[u * k + j];
                next_hops_valid &= g.has_edge(u, h) && dist[h * k + j] == d - 1;
            }
        }
    }

    let messages_per_round = 2 * g.num_edges() as u64;
    Ok(DistributedReport {
        beacons,
        converged,
        rounds_to_fixpoint,
        rounds_executed,
        messages_per_round,
        total_messages: messages_per_round * rounds_executed as u64,
        bits_per_message: k as u64 * bits_for(n + 1),
        beacon_id_bits_per_message: k as u64 * bits_for(n),
        agrees_with_bfs,
        next_hops_valid,
        max_beacon_eccentricity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_erdos_renyi, path_graph};

    #[test]
    fn path_converges_in_eccentricity_rounds() {
        let r = distributed_beacon_sim(&path_graph(10), &BeaconChoice::Explicit(vec![0]), 100, 0).unwrap();
        assert!(r.converged);
        assert_eq!(r.rounds_to_fixpoint, 9);
        assert_eq!(r.rounds_executed, 10);
        assert_eq!(r.messages_per_round, 18);
        assert!(r.agrees_with_bfs && r.next_hops_valid);
    }

    #[test]
    fn every_node_a_beacon() {
        let g = gen_erdos_renyi(150, 4.0, 8).unwrap();
        let all: Vec<NodeId> = (0..150).collect();
        let r = distributed_beacon_sim(&g, &BeaconChoice::Explicit(all), 1000, 0).unwrap();
        assert!(r.converged && r.agrees_with_bfs && r.next_hops_valid);
        assert_eq!(r.rounds_to_fixpoint as u32, r.max_beacon_eccentricity);
    }

    #[test]
    fn random_beacons_at_log_rate() {
        let n = 10_000;
        let g = gen_erdos_renyi(n, 10.0, 4).unwrap();
        let r = distributed_beacon_sim(&g, &BeaconChoice::log_over_n(n), 1000, 77).unwrap();
        let k = r.beacons.len() as f64;
        // Binomial(n, ln n / n): mean 9.2, sd about 3.
        assert!((k - (n as f64).ln()).abs() < 4.0 * 3.04, "{k} beacons");
        assert!(r.converged && r.agrees_with_bfs);
        assert!(r.rounds_to_fixpoint as u32 <= r.max_beacon_eccentricity);
    }

    #[test]
    fn reports_non_convergence() {
        let r = distributed_beacon_sim(&path_graph(10), &BeaconChoice::Explicit(vec![0]), 4, 0).unwrap();
        assert!(!r.converged);
        assert!(!r.agrees_with_bfs);
        assert_eq!(r.rounds_executed, 4);
    }

    #[test]
    fn rejects_bad_input() {
        let d = Graph::build(2, true, [(0, 1)], false).unwrap();
        assert!(distributed_beacon_sim(&d, &BeaconChoice::Explicit(vec![0]), 5, 0).is_err());
        assert!(distributed_beacon_sim(&path_graph(3), &BeaconChoice::Explicit(vec![3]), 5, 0).is_err());
        assert!(distributed_beacon_sim(&path_graph(3), &BeaconChoice::Probability(1.5), 5, 0).is_err());
    }
}
