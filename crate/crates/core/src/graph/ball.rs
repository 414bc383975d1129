use serde::{Deserialize, Serialize};

use super::bfs::{bfs_limited, Direction, UNREACHABLE};
use super::{Graph, NodeId};

/// Growth of the ball `B_u(r)` around one center.
///
/// `sizes[r] = |B_u(r)|` and `boundary_edges[r]` counts edges with exactly
/// one endpoint in `B_u(r)`. On directed graphs balls follow out-arcs and
/// the boundary counts arcs leaving the ball.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallProfile {
    pub center: NodeId,
    pub sizes: Vec<usize>,
    pub boundary_edges: Vec<usize>,
}

impl BallProfile {
    /// Largest radius covered by the profile.
    pub fn max_radius(&self) -> usize {
        self.sizes.len() - 1
    }

    pub fn final_size(&self) -> usize {
        *self.sizes.last().expect("profile is never empty")
    }
}

/// Ball sizes and boundary counts for `r = 0..=R`, where `R` is the
/// eccentricity of `u` or `r_max`, whichever is smaller.
pub fn ball_profile(g: &Graph, u: NodeId, r_max: Option<usize>) -> BallProfile {
    let limit = r_max.map(|r| r.min(u32::MAX as usize - 1) as u32);
    let dist = bfs_limited(g, u, Direction::Forward, limit);
    let radius = dist.iter().copied().filter(|&d| d != UNREACHABLE).max().unwrap_or(0) as usize;

    let mut sizes = vec![0usize; radius + 1];
    for &d in &dist {
        if d != UNREACHABLE {
            sizes[d as usize] += 1;
        }
    }
    for r in 1..=radius {
        sizes[r] += sizes[r - 1];
    }

    // An arc x->y with d(x) < d(y) crosses the boundary for r in [d(x), d(y)).
    // Each undirected edge shows up once in this orientation.
    let mut delta = vec![0i64; radius + 2];
    for x in 0..g.num_nodes() {
        let dx = dist[x];
        if dx == UNREACHABLE {
            continue;
        }
        for &y in g.out_neighbors(x) {
            let dy = dist[y];
            if dy > dx {
                delta[dx as usize] += 1;
                let end = if dy == UNREACHABLE { radius + 1 } else { (dy as usize).min(radius + 1) };
                delta[end] -= 1;
            }
        }
    }
    let mut boundary_edges = Vec::with_capacity(radius + 1);
    let mut running = 0i64;
    for r in 0..=radius {
        running += delta[r];
        boundary_edges.push(running as usize);
    }
    BallProfile { center: u, sizes, boundary_edges }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{bfs_distances, build_graph};
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn cycle(n: usize) -> Graph {
        build_graph(n, false, (0..n).map(|i| (i, (i + 1) % n)), false).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        build_graph(n, false, edges, false).unwrap()
    }

    #[test]
    fn cycle_geometry() {
        let g = cycle(100);
        let p = ball_profile(&g, 17, None);
        assert_eq!(p.max_radius(), 50);
        for r in 0..=50 {
            assert_eq!(p.sizes[r], (2 * r + 1).min(100));
            let expect = if p.sizes[r] < 100 { 2 } else { 0 };
            assert_eq!(p.boundary_edges[r], expect, "r={r}");
        }
    }

    #[test]
    fn complete_graph_saturates_in_one_hop() {
        let p = ball_profile(&complete(10), 0, None);
        assert_eq!(p.sizes, vec![1, 10]);
        assert_eq!(p.boundary_edges, vec![9, 0]);
    }

    #[test]
    fn truncation() {
        let p = ball_profile(&cycle(100), 0, Some(5));
        assert_eq!(p.sizes.len(), 6);
        assert_eq!(p.sizes[5], 11);
        assert_eq!(p.boundary_edges[5], 2);
    }

    #[test]
    fn isolated_center() {
        let g = build_graph(3, false, [(1, 2)], false).unwrap();
        let p = ball_profile(&g, 0, None);
        assert_eq!(p.sizes, vec![1]);
        assert_eq!(p.boundary_edges, vec![0]);
    }

    #[test]
    fn directed_ball_counts_leaving_arcs() {
        // 0 -> 1 -> 2, plus 2 -> 0 and an arc into the ball from 3.
        let g = build_graph(4, true, [(0, 1), (1, 2), (2, 0), (3, 0)], false).unwrap();
        let p = ball_profile(&g, 0, None);
        assert_eq!(p.sizes, vec![1, 2, 3]);
        assert_eq!(p.boundary_edges, vec![1, 1, 0]);
    }

    /// Explicit ball sets by repeated neighborhood expansion.
    fn brute_force(g: &Graph, u: NodeId) -> (Vec<usize>, Vec<usize>) {
        let mut ball: HashSet<NodeId> = HashSet::from([u]);
        let (mut sizes, mut cuts) = (Vec::new(), Vec::new());
        loop {
            sizes.push(ball.len());
            let cut = g.edges().filter(|&(a, b)| ball.contains(&a) != ball.contains(&b)).count();
            cuts.push(cut);
            let grown: HashSet<NodeId> =
                ball.iter().flat_map(|&x| g.out_neighbors(x).iter().copied()).chain(ball.iter().copied()).collect();
            if grown.len() == ball.len() {
                return (sizes, cuts);
            }
            ball = grown;
        }
    }

    fn random_regular_3(n: usize, seed: u64) -> Graph {
        crate::generators::gen_random_regular(n, 3, seed).unwrap()
    }

    #[test]
    fn random_cubic_small_balls_expand() {
        let g = random_regular_3(1000, 11);
        for u in [0, 250, 999] {
            let p = ball_profile(&g, u, None);
            let (sizes, cuts) = brute_force(&g, u);
            assert_eq!(p.sizes, sizes);
            assert_eq!(p.boundary_edges, cuts);
            for r in 0..4 {
                assert!(p.boundary_edges[r] >= p.sizes[r], "r={r}: {:?}", p);
            }
        }
    }

    proptest! {
        #[test]
        fn matches_brute_force_and_bfs(
            n in 2usize..40,
            edges in proptest::collection::vec((0usize..40, 0usize..40), 0..90),
            center in 0usize..40,
        ) {
            let edges: Vec<_> = edges.into_iter().filter(|(a, b)| a < &n && b < &n && a != b).collect();
            let g = build_graph(n, false, edges, false).unwrap();
            let u = center % n;
            let p = ball_profile(&g, u, None);
            let (sizes, cuts) = brute_force(&g, u);
            prop_assert_eq!(&p.sizes, &sizes);
            prop_assert_eq!(&p.boundary_edges, &cuts);

            let d = bfs_distances(&g, u, Direction::Forward);
            for r in 0..p.sizes.len() {
                let within = d.dist.iter().filter(|&&x| x != UNREACHABLE && x as usize <= r).count();
                prop_assert_eq!(p.sizes[r], within);
                if r + 1 < p.sizes.len() {
                    prop_assert!(p.sizes[r + 1] - p.sizes[r] <= p.boundary_edges[r]);
                }
                prop_assert_eq!(p.boundary_edges[r] == 0, p.sizes[r] == d.reachable_count());
            }
            prop_assert_eq!(p.sizes[0], 1);
            prop_assert!(p.sizes.windows(2).all(|w| w[0] <= w[1]));
        }
    }
}
