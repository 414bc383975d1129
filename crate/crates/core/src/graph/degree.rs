use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::Graph;

/// Degree → node count. `total` is the plain degree for undirected graphs
/// and out-degree plus in-degree for directed ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeHistogram {
    pub total: BTreeMap<usize, usize>,
    pub out_degree: Option<BTreeMap<usize, usize>>,
    pub in_degree: Option<BTreeMap<usize, usize>>,
}

impl DegreeHistogram {
    pub fn mean_degree(&self) -> f64 {
        let (sum, count) = self.total.iter().fold((0usize, 0usize), |(s, c), (&d, &k)| (s + d * k, c + k));
        if count == 0 {
            0.0
        } else {
            sum as f64 / count as f64
        }
    }

    /// Empirical law `p_n(d)` of the total degree.
    pub fn law(&self) -> BTreeMap<usize, f64> {
        let count: usize = self.total.values().sum();
        self.total.iter().map(|(&d, &k)| (d, k as f64 / count as f64)).collect()
    }
}

fn tally(n: usize, degree: impl Fn(usize) -> usize) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for u in 0..n {
        *h.entry(degree(u)).or_insert(0) += 1;
    }
    h
}

pub fn degree_histogram(g: &Graph) -> DegreeHistogram {
    let n = g.num_nodes();
    if g.is_directed() {
        DegreeHistogram {
            total: tally(n, |u| g.total_degree(u)),
            out_degree: Some(tally(n, |u| g.out_degree(u))),
            in_degree: Some(tally(n, |u| g.in_degree(u))),
        }
    } else {
        DegreeHistogram { total: tally(n, |u| g.out_degree(u)), out_degree: None, in_degree: None }
    }
}
