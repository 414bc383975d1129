use rand::Rng;

use super::{invalid, GenError};
use crate::graph::Graph;
use crate::rng::main_stream;

/// `G(n, p)` with `p = mean_degree / (n - 1)`.
///
/// Uses geometric skipping over the pair sequence `(1,0), (2,0), (2,1), ...`
/// so the cost is proportional to the number of edges drawn.
pub fn gen_erdos_renyi(n: usize, mean_degree: f64, seed: u64) -> Result<Graph, GenError> {
    if n < 2 {
        return Err(invalid("n must be at least 2"));
    }
    let p = mean_degree / (n - 1) as f64;
    if !(p > 0.0 && p <= 1.0) {
        return Err(invalid(format!("mean degree must be in (0, n-1], got {mean_degree}")));
    }
    if p >= 1.0 {
        return Ok(super::complete_graph(n));
    }

    let mut rng = main_stream(seed);
    let log_q = (1.0 - p).ln();
    let mut edges = Vec::with_capacity((p * (n * (n - 1) / 2) as f64 * 1.1) as usize + 16);
    let (mut v, mut w): (usize, i64) = (1, -1);
    while v < n {
        let r: f64 = rng.random();
        let skip = ((1.0 - r).ln() / log_q).floor();
        w += 1 + if skip.is_finite() { skip.min(i64::MAX as f64 / 4.0) as i64 } else { i64::MAX / 4 };
        while v < n && w >= v as i64 {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            edges.push((v, w as usize));
        }
    }
    Ok(Graph::build(n, false, edges, false)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_one_is_complete() {
        let g = gen_erdos_renyi(12, 11.0, 3).unwrap();
        assert_eq!(g.num_edges(), 66);
    }

    #[test]
    fn mean_degree_concentrates() {
        let n = 10_000;
        let mut misses = 0;
        for seed in 0..100 {
            let g = gen_erdos_renyi(n, 4.0, seed).unwrap();
            let mean = 2.0 * g.num_edges() as f64 / n as f64;
            if (mean - 4.0).abs() > 0.2 {
                misses += 1;
            }
        }
        assert!(misses <= 1, "{misses} of 100 seeds outside 4 +- 0.2");
    }

    #[test]
    fn pair_inclusion_is_unbiased() {
        // Each of the 10 pairs of K_5 should appear with probability 0.3.
        let trials = 20_000;
        let mut hits = [[0u32; 5]; 5];
        for seed in 0..trials {
            let g = gen_erdos_renyi(5, 1.2, seed).unwrap();
            for (u, v) in g.edges() {
                hits[u][v] += 1;
            }
        }
        for u in 0..5 {
            for v in u + 1..5 {
                let f = hits[u][v] as f64 / trials as f64;
                assert!((f - 0.3).abs() < 0.015, "pair ({u},{v}) frequency {f}");
            }
        }
    }

    #[test]
    fn deterministic() {
        assert_eq!(gen_erdos_renyi(300, 5.0, 1).unwrap(), gen_erdos_renyi(300, 5.0, 1).unwrap());
    }
}
