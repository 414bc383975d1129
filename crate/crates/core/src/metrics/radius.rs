use serde::{Deserialize, Serialize};

use super::{at_least, MetricsError};
use crate::graph::{Graph, NodeId};

/// The least radius whose ball around `u` holds at least `eps·n` nodes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RuValue {
    pub u: NodeId,
    pub eps: f64,
    /// `None` when the whole reachable set is smaller than `eps·n`.
    pub r_u: Option<u32>,
}

/// Forward BFS from `u`, stopped as soon as the ball is large enough.
pub fn r_u(g: &Graph, u: NodeId, eps: f64) -> Result<RuValue, MetricsError> {
    let n = g.num_nodes();
    if u >= n {
        return Err(MetricsError::InvalidParameter(format!("node {u} out of range for n={n}")));
    }
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(MetricsError::InvalidParameter(format!("eps must be in (0, 1], got {eps}")));
    }
    let mut seen = vec![false; n];
    seen[u] = true;
    let mut frontier = vec![u];
    let mut next = Vec::new();
    let mut size = 1;
    let mut r = 0;
    loop {
        if at_least(size, eps, n) {
            return Ok(RuValue { u, eps, r_u: Some(r) });
        }
        if frontier.is_empty() {
            return Ok(RuValue { u, eps, r_u: None });
        }
        next.clear();
        for &x in &frontier {
            for &y in g.out_neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    next.push(y);
                }
            }
        }
        size += next.len();
        std::mem::swap(&mut frontier, &mut next);
        r += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cycle_graph, disjoint_cliques, gen_erdos_renyi};
    use crate::graph::ball_profile;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let c = cycle_graph(100);
        assert_eq!(r_u(&c, 0, 0.01).unwrap().r_u, Some(0));
        assert_eq!(r_u(&c, 7, 0.25).unwrap().r_u, Some(12));
        let t = disjoint_cliques(2, 3);
        assert_eq!(r_u(&t, 0, 0.9).unwrap().r_u, None);
        assert!(r_u(&t, 6, 0.5).is_err());
        assert!(r_u(&t, 0, 0.0).is_err());
    }

    proptest! {
        #[test]
        fn consistent_with_ball_profile(n in 2usize..150, seed in any::<u64>(), u_pick in any::<usize>(), e1 in 0.001f64..1.0, e2 in 0.001f64..1.0) {
            let g = gen_erdos_renyi(n, 1.5f64.min((n - 1) as f64), seed).unwrap();
            let u = u_pick % n;
            let (lo, hi) = if e1 <= e2 { (e1, e2) } else { (e2, e1) };
            let a = r_u(&g, u, lo).unwrap().r_u;
            let b = r_u(&g, u, hi).unwrap().r_u;
            // Monotone in eps, with UNDEFINED above every radius.
            match (a, b) {
                (Some(x), Some(y)) => prop_assert!(x <= y),
                (None, Some(_)) => prop_assert!(false),
                _ => {}
            }
            let p = ball_profile(&g, u, None);
            if let Some(r) = b {
                let r = r as usize;
                prop_assert!(p.sizes[r] as f64 >= hi * n as f64 - 1e-9);
                if r > 0 { prop_assert!((p.sizes[r - 1] as f64) < hi * n as f64 - 1e-9); }
            } else {
                prop_assert!((p.final_size() as f64) < hi * n as f64 - 1e-9);
            }
        }
    }
}
