use serde::{Deserialize, Serialize};

use super::MetricsError;
use crate::graph::Graph;

/// Share of the total degree held by the `⌈μn⌉` highest-degree nodes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UsReport {
    pub mu: f64,
    pub top_nodes: usize,
    pub top_degree_mass: f64,
}

pub fn us_proxy(g: &Graph, mu: f64) -> Result<UsReport, MetricsError> {
    if !(mu > 0.0 && mu <= 1.0) {
        return Err(MetricsError::InvalidParameter(format!("mu must be in (0, 1], got {mu}")));
    }
    let n = g.num_nodes();
    let mut degrees: Vec<usize> = (0..n).map(|u| g.total_degree(u)).collect();
    let total: usize = degrees.iter().sum();
    if total == 0 {
        return Err(MetricsError::InvalidParameter("graph has no edges".into()));
    }
    // Tolerate representation error in mu·n, e.g. 0.1·1000.
    let k = ((mu * n as f64 - 1e-9).ceil() as usize).clamp(1, n);
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    let top: usize = degrees[..k].iter().sum();
    Ok(UsReport { mu, top_nodes: k, top_degree_mass: top as f64 / total as f64 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_barabasi_albert, gen_random_regular, star_graph};
    use proptest::prelude::*;

    #[test]
    fn regular_and_star() {
        let g = gen_random_regular(1000, 4, 1).unwrap();
        let r = us_proxy(&g, 0.1).unwrap();
        assert_eq!(r.top_nodes, 100);
        assert!((r.top_degree_mass - 0.1).abs() < 1e-12);
        let s = us_proxy(&star_graph(50), 1.0 / 50.0).unwrap();
        assert_eq!(s.top_nodes, 1);
        assert_eq!(s.top_degree_mass, 0.5);
    }

    #[test]
    fn preferential_attachment_is_not_top_heavy() {
        let g = gen_barabasi_albert(100_000, 3, 21).unwrap();
        let r = us_proxy(&g, 0.01).unwrap();
        assert!(r.top_degree_mass < 0.25, "{}", r.top_degree_mass);
    }

    proptest! {
        #[test]
        fn monotone_and_full_at_one(seed in any::<u64>(), a in 0.001f64..1.0, b in 0.001f64..1.0) {
            let g = gen_barabasi_albert(300, 2, seed).unwrap();
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let x = us_proxy(&g, lo).unwrap().top_degree_mass;
            let y = us_proxy(&g, hi).unwrap().top_degree_mass;
            prop_assert!(x > 0.0 && x <= y && y <= 1.0);
            prop_assert_eq!(us_proxy(&g, 1.0).unwrap().top_degree_mass, 1.0);
        }
    }
}
