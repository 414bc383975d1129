use rand::Rng;

use super::{invalid, GenError};
use crate::graph::{Graph, NodeId};
use crate::rng::main_stream;

/// Preferential attachment with `δ = 0`.
///
/// Starts from a clique on `m_attach + 1` nodes. Each later node attaches to
/// `m_attach` distinct existing nodes, each chosen with probability
/// proportional to its current degree; a repeated choice is redrawn.
pub fn gen_barabasi_albert(n: usize, m_attach: usize, seed: u64) -> Result<Graph, GenError> {
    if m_attach < 1 || n <= m_attach {
        return Err(invalid(format!("preferential attachment needs 1 <= m < n, got m={m_attach}, n={n}")));
    }
    let clique = m_attach + 1;
    let mut edges = Vec::with_capacity(clique * m_attach / 2 + (n - clique.min(n)) * m_attach);
    // One entry per edge endpoint, so a uniform entry is a degree-biased node.
    let mut ends: Vec<NodeId> = Vec::with_capacity(2 * edges.capacity());
    for u in 0..clique.min(n) {
        for v in u + 1..clique.min(n) {
            edges.push((u, v));
            ends.extend([u, v]);
        }
    }

    let mut rng = main_stream(seed);
    let mut chosen = Vec::with_capacity(m_attach);
    for u in clique..n {
        chosen.clear();
        while chosen.len() < m_attach {
            let v = ends[rng.random_range(0..ends.len())];
            if !chosen.contains(&v) {
                chosen.push(v);
            }
        }
        for &v in &chosen {
            edges.push((u, v));
            ends.extend([u, v]);
        }
    }
    Ok(Graph::build(n, false, edges, false)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{degree_histogram, largest_component};

    #[test]
    fn m1_grows_a_tree() {
        for seed in 0..5 {
            let g = gen_barabasi_albert(500, 1, seed).unwrap();
            assert_eq!(g.num_edges(), 499);
            assert_eq!(largest_component(&g).largest_size, 500);
        }
    }

    #[test]
    fn edge_count_is_exact() {
        let (n, m) = (1000, 4);
        let g = gen_barabasi_albert(n, m, 3).unwrap();
        assert_eq!(g.num_edges(), m * (m + 1) / 2 + (n - m - 1) * m);
    }

    #[test]
    fn mean_degree_near_two_m() {
        let g = gen_barabasi_albert(100_000, 3, 17).unwrap();
        let mean = degree_histogram(&g).mean_degree();
        assert!((mean - 6.0).abs() < 0.01, "mean degree {mean}");
    }

    /// Least-squares slope of `ln P(D >= d)` against `ln d` over `[lo, hi]`.
    fn ccdf_slope(degrees: &[usize], lo: usize, hi: usize) -> f64 {
        let n = degrees.len() as f64;
        let mut counts = vec![0usize; hi + 2];
        for &d in degrees {
            counts[d.min(hi + 1)] += 1;
        }
        let mut tail = degrees.iter().filter(|&&d| d >= lo).count();
        let mut pts = Vec::new();
        for d in lo..=hi {
            if tail > 0 {
                pts.push(((d as f64).ln(), (tail as f64 / n).ln()));
            }
            tail -= counts[d];
        }
        let k = pts.len() as f64;
        let (mx, my) = (pts.iter().map(|p| p.0).sum::<f64>() / k, pts.iter().map(|p| p.1).sum::<f64>() / k);
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        sxy / sxx
    }

    #[test]
    fn degree_tail_exponent_near_three() {
        let g = gen_barabasi_albert(100_000, 3, 5).unwrap();
        let degrees: Vec<usize> = (0..g.num_nodes()).map(|u| g.total_degree(u)).collect();
        // Density exponent tau = 1 - slope of the complementary CDF.
        let tau = 1.0 - ccdf_slope(&degrees, 6, 100);
        assert!((tau - 3.0).abs() < 0.25, "tail exponent {tau}");
    }
}
