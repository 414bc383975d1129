use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{beacon_route, BeaconTables, RoutingError};
use crate::graph::{Graph, NodeId, PairSearch};
use crate::rng::distinct_pairs;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StretchSample {
    pub a: NodeId,
    pub b: NodeId,
    pub exact: u32,
    /// `None` when the beacon cannot serve the pair.
    pub routed: Option<u32>,
    pub stretch: Option<f64>,
}

/// Nearest-rank quantiles of the stretch over routed pairs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quantiles {
    pub min: f64,
    pub p10: f64,
    pub p50: f64,
    pub p90: f64,
    pub p99: f64,
    pub max: f64,
    pub mean: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdFraction {
    pub threshold: f64,
    /// Share of pairs with finite exact distance whose stretch is at most
    /// the threshold; unroutable pairs count against it.
    pub fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StretchReport {
    pub beacon: NodeId,
    pub sampled_pairs: usize,
    /// Pairs with no path at all; excluded from every statistic.
    pub unreachable_pairs: usize,
    /// Pairs with a path that the beacon cannot serve: a leg is missing in a
    /// directed graph, or the pair lies outside the beacon's component.
    pub unroutable_pairs: usize,
    pub quantiles: Option<Quantiles>,
    pub fraction_below: Vec<ThresholdFraction>,
    pub samples: Vec<StretchSample>,
}

fn nearest_rank(sorted: &[f64], q: f64) -> f64 {
    let k = ((q * sorted.len() as f64).ceil() as usize).clamp(1, sorted.len());
    sorted[k - 1]
}

/// Samples `num_pairs` ordered pairs `a != b` uniformly and compares the
/// beacon route with the exact distance.
pub fn stretch_report(
    g: &Graph,
    t: &BeaconTables,
    num_pairs: usize,
    seed: u64,
    thresholds: &[f64],
) -> Result<StretchReport, RoutingError> {
    let n = g.num_nodes();
    if num_pairs == 0 || n < 2 {
        return Err(RoutingError::InvalidParameter("need at least one pair of distinct nodes".into()));
    }
    let pairs = distinct_pairs(n, num_pairs, seed);

    let samples: Vec<Option<StretchSample>> = pairs
        .par_iter()
        .with_min_len(64)
        .map_init(
            || PairSearch::new(n),
            |search, &(a, b)| {
                let exact = search.distance(g, a, b)?;
                let routed = beacon_route(t, a, b).ok().map(|r| r.length as u32);
                Some(StretchSample { a, b, exact, routed, stretch: routed.map(|r| r as f64 / exact as f64) })
            },
        )
        .collect();

    let unreachable_pairs = samples.iter().filter(|s| s.is_none()).count();
    let samples: Vec<StretchSample> = samples.into_iter().flatten().collect();
    let unroutable_pairs = samples.iter().filter(|s| s.routed.is_none()).count();
    let mut stretches: Vec<f64> = samples.iter().filter_map(|s| s.stretch).collect();
    stretches.sort_by(f64::total_cmp);

    let quantiles = (!stretches.is_empty()).then(|| Quantiles {
        min: stretches[0],
        p10: nearest_rank(&stretches, 0.1),
        p50: nearest_rank(&stretches, 0.5),
        p90: nearest_rank(&stretches, 0.9),
        p99: nearest_rank(&stretches, 0.99),
        max: *stretches.last().unwrap(),
        mean: stretches.iter().sum::<f64>() / stretches.len() as f64,
    });
    let finite = samples.len().max(1) as f64;
    let fraction_below = thresholds
        .iter()
        .map(|&threshold| ThresholdFraction {
            threshold,
            fraction: stretches.iter().filter(|&&s| s <= threshold).count() as f64 / finite,
        })
        .collect();
    Ok(StretchReport {
        beacon: t.beacon,
        sampled_pairs: num_pairs,
        unreachable_pairs,
        unroutable_pairs,
        quantiles,
        fraction_below,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete_graph, gen_erdos_renyi};
    use crate::graph::{bfs_distances, Direction, UNREACHABLE};
    use crate::routing::build_beacon_tables;
    use proptest::prelude::*;

    #[test]
    fn complete_graph_stretch_is_two_off_beacon() {
        let g = complete_graph(100);
        let t = build_beacon_tables(&g, 7).unwrap();
        let r = stretch_report(&g, &t, 5000, 1, &[1.0, 2.0]).unwrap();
        for s in &r.samples {
            let expect = if s.a == 7 || s.b == 7 { 1.0 } else { 2.0 };
            assert_eq!(s.stretch, Some(expect));
        }
        assert_eq!(r.quantiles.unwrap().p50, 2.0);
        assert_eq!(r.fraction_below[1].fraction, 1.0);
        assert!(r.fraction_below[0].fraction < 0.05);
    }

    #[test]
    fn excludes_unreachable_pairs() {
        let g = Graph::build(6, false, [(0, 1), (1, 2), (3, 4), (4, 5)], false).unwrap();
        let t = build_beacon_tables(&g, 1).unwrap();
        let r = stretch_report(&g, &t, 1000, 2, &[1.0]).unwrap();
        assert!(r.unreachable_pairs > 0);
        assert_eq!(r.unreachable_pairs + r.samples.len(), 1000);
        assert!(r.samples.iter().all(|s| s.a / 3 == s.b / 3));
        // Pairs inside {3,4,5} have a path but never meet the beacon.
        let far = r.samples.iter().filter(|s| s.a >= 3).count();
        assert!(far > 0);
        assert_eq!(r.unroutable_pairs, far);
        let served = (r.samples.len() - far) as f64 / r.samples.len() as f64;
        assert!(r.fraction_below[0].fraction <= served + 1e-12);
    }

    #[test]
    fn deterministic_across_threads() {
        let g = gen_erdos_renyi(2000, 5.0, 1).unwrap();
        let t = build_beacon_tables(&g, 0).unwrap();
        let run = |k| {
            rayon::ThreadPoolBuilder::new().num_threads(k).build().unwrap().install(|| stretch_report(&g, &t, 3000, 5, &[2.0]).unwrap())
        };
        assert_eq!(run(1), run(3));
    }

    proptest! {
        #[test]
        fn stretch_at_least_one_and_exact_through_beacon(n in 3usize..60, seed in any::<u64>(), beacon in any::<usize>()) {
            let g = gen_erdos_renyi(n, 3.0f64.min((n - 1) as f64), seed).unwrap();
            let beacon = beacon % n;
            let t = build_beacon_tables(&g, beacon).unwrap();
            let apsp: Vec<Vec<u32>> = (0..n).map(|u| bfs_distances(&g, u, Direction::Forward).dist).collect();
            let r = stretch_report(&g, &t, 400, seed, &[]).unwrap();
            for s in &r.samples {
                prop_assert_eq!(s.exact, apsp[s.a][s.b]);
                let Some(st) = s.stretch else {
                    prop_assert_eq!(apsp[s.a][beacon], UNREACHABLE);
                    continue;
                };
                prop_assert!(st >= 1.0);
                if apsp[s.a][beacon] + apsp[beacon][s.b] == apsp[s.a][s.b] {
                    prop_assert_eq!(st, 1.0);
                }
            }
        }
    }
}
