use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::MetricsError;
use crate::generators::{Model, ModelSpec};
use crate::graph::{degree_histogram, Graph};
use crate::rng::{derive_seed, labels};

/// Closed-form limiting degree laws.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum ReferenceLaw {
    /// `m + Bin(m, 1 - p) + Poisson(m p)`, the Watts-Strogatz limit.
    WattsStrogatz { m: usize, p: f64 },
    Poisson { mean: f64 },
}

/// Poisson pmf on `0..=kmax`, built outward from the mode by ratio
/// recurrences and normalized; the truncated tail is below `1e-15`.
fn poisson_pmf(lambda: f64, kmax: usize) -> Vec<f64> {
    let mut w = vec![0.0; kmax + 1];
    let mode = (lambda.floor() as usize).min(kmax);
    w[mode] = 1.0;
    for k in mode..kmax {
        w[k + 1] = w[k] * lambda / (k + 1) as f64;
    }
    for k in (1..=mode).rev() {
        w[k - 1] = w[k] * k as f64 / lambda;
    }
    let total: f64 = w.iter().sum();
    w.iter().map(|x| x / total).collect()
}

fn binomial_pmf(trials: usize, p: f64) -> Vec<f64> {
    let mut pmf = vec![1.0];
    for _ in 0..trials {
        let mut next = vec![0.0; pmf.len() + 1];
        for (k, &x) in pmf.iter().enumerate() {
            next[k] += x * (1.0 - p);
            next[k + 1] += x * p;
        }
        pmf = next;
    }
    pmf
}

impl ReferenceLaw {
    pub fn mean(&self) -> f64 {
        match *self {
            ReferenceLaw::WattsStrogatz { m, .. } => 2.0 * m as f64,
            ReferenceLaw::Poisson { mean } => mean,
        }
    }

    /// Probability mass function on `0..`, truncated once the remaining
    /// tail is below `1e-15`.
    pub fn pmf(&self) -> Vec<f64> {
        let tail_cut = |lambda: f64| (lambda + 20.0 * lambda.sqrt() + 40.0).ceil() as usize;
        match *self {
            ReferenceLaw::Poisson { mean } => poisson_pmf(mean, tail_cut(mean)),
            ReferenceLaw::WattsStrogatz { m, p } => {
                let pois = poisson_pmf(m as f64 * p, tail_cut(m as f64 * p));
                let bin = binomial_pmf(m, 1.0 - p);
                let mut law = vec![0.0; m + bin.len() + pois.len()];
                for (i, &a) in bin.iter().enumerate() {
                    for (j, &b) in pois.iter().enumerate() {
                        law[m + i + j] += a * b;
                    }
                }
                law
            }
        }
    }
}

/// Total-variation distance between two laws on the non-negative integers.
pub fn total_variation(a: &BTreeMap<usize, f64>, b: &BTreeMap<usize, f64>) -> f64 {
    let mut sum = 0.0;
    for (d, &pa) in a {
        sum += (pa - b.get(d).copied().unwrap_or(0.0)).abs();
    }
    for (d, &pb) in b {
        if !a.contains_key(d) {
            sum += pb;
        }
    }
    (0.5 * sum).min(1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FedPoint {
    pub n: usize,
    pub graph_seed: Option<u64>,
    pub mean_degree: f64,
    /// Empirical law `p_n(d)`.
    pub law: BTreeMap<usize, f64>,
    pub tv_to_reference: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FedReport {
    pub reference: Option<ReferenceLaw>,
    pub sizes: Vec<FedPoint>,
    /// TV distance between consecutive sizes' laws.
    pub tv_distance_successive: Vec<f64>,
    /// `|mean(p_n) - mean(p_next)|` for consecutive sizes.
    pub mean_gap: Vec<f64>,
}

/// The analytic degree law a model converges to, when one is known.
pub fn reference_law(model: &Model) -> Option<ReferenceLaw> {
    match *model {
        Model::WattsStrogatz { m, p_rewire, .. } => Some(ReferenceLaw::WattsStrogatz { m, p: p_rewire }),
        Model::ErdosRenyi { mean_degree, .. } => Some(ReferenceLaw::Poisson { mean: mean_degree }),
        _ => None,
    }
}

/// Compares degree laws of graphs of increasing size. `seeds` records the
/// generator seed of each graph when known.
pub fn fed_from_graphs(graphs: &[Graph], seeds: Option<&[u64]>, reference: Option<ReferenceLaw>) -> FedReport {
    let ref_law: Option<BTreeMap<usize, f64>> =
        reference.map(|r| r.pmf().into_iter().enumerate().filter(|&(_, p)| p > 0.0).collect());
    let sizes: Vec<FedPoint> = graphs
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let hist = degree_histogram(g);
            let law = hist.law();
            FedPoint {
                n: g.num_nodes(),
                graph_seed: seeds.map(|s| s[i]),
                mean_degree: hist.mean_degree(),
                tv_to_reference: ref_law.as_ref().map(|r| total_variation(&law, r)),
                law,
            }
        })
        .collect();
    let tv_distance_successive = sizes.windows(2).map(|w| total_variation(&w[0].law, &w[1].law)).collect();
    let mean_gap = sizes.windows(2).map(|w| (w[0].mean_degree - w[1].mean_degree).abs()).collect();
    FedReport { reference, sizes, tv_distance_successive, mean_gap }
}

/// Generates `family` at each size and compares successive degree laws,
/// and the analytic limit where one exists.
pub fn fed_check(family: &Model, sizes: &[usize], seed: u64) -> Result<FedReport, MetricsError> {
    if sizes.len() < 2 {
        return Err(MetricsError::InvalidParameter("fed_check needs at least two sizes".into()));
    }
    let mut graphs = Vec::with_capacity(sizes.len());
    let mut seeds = Vec::with_capacity(sizes.len());
    for (i, &n) in sizes.iter().enumerate() {
        let graph_seed = derive_seed(derive_seed(seed, labels::SIZE_BASE + i as u64), labels::GRAPH);
        graphs.push(ModelSpec::new(family.with_n(n), graph_seed).generate()?.graph);
        seeds.push(graph_seed);
    }
    Ok(fed_from_graphs(&graphs, Some(&seeds), reference_law(family)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_random_regular;

    #[test]
    fn pmfs_sum_to_one() {
        for law in [
            ReferenceLaw::Poisson { mean: 5.0 },
            ReferenceLaw::Poisson { mean: 300.0 },
            ReferenceLaw::WattsStrogatz { m: 5, p: 0.2 },
            ReferenceLaw::WattsStrogatz { m: 10, p: 1.0 },
        ] {
            let pmf = law.pmf();
            let total: f64 = pmf.iter().sum();
            assert!((total - 1.0).abs() < 1e-12, "{law:?}: {total}");
            let mean: f64 = pmf.iter().enumerate().map(|(k, p)| k as f64 * p).sum();
            assert!((mean - law.mean()).abs() < 1e-9, "{law:?}: {mean}");
        }
    }

    #[test]
    fn ws_law_at_p_zero_is_point_mass() {
        let pmf = ReferenceLaw::WattsStrogatz { m: 3, p: 0.0 }.pmf();
        assert_eq!(pmf[6], 1.0);
    }

    #[test]
    fn regular_family_is_stationary() {
        let graphs: Vec<Graph> = [1000, 2000, 4000].iter().map(|&n| gen_random_regular(n, 3, n as u64).unwrap()).collect();
        let r = fed_from_graphs(&graphs, None, None);
        assert_eq!(r.tv_distance_successive, vec![0.0, 0.0]);
        assert_eq!(r.mean_gap, vec![0.0, 0.0]);
    }

    #[test]
    fn watts_strogatz_matches_analytic_law() {
        let r = fed_check(&Model::WattsStrogatz { n: 0, m: 5, p_rewire: 0.2 }, &[10_000, 20_000], 3).unwrap();
        for p in &r.sizes {
            assert!(p.tv_to_reference.unwrap() < 0.02, "n={} tv={:?}", p.n, p.tv_to_reference);
            assert_eq!(p.mean_degree, 10.0);
        }
    }

    #[test]
    fn erdos_renyi_approaches_poisson() {
        let r = fed_check(&Model::ErdosRenyi { n: 0, mean_degree: 5.0 }, &[10_000, 20_000], 5).unwrap();
        let tv: Vec<f64> = r.sizes.iter().map(|p| p.tv_to_reference.unwrap()).collect();
        assert!(tv[1] < tv[0], "{tv:?}");
    }

    #[test]
    fn tv_bounds() {
        let a = BTreeMap::from([(1, 1.0)]);
        let b = BTreeMap::from([(2, 1.0)]);
        assert_eq!(total_variation(&a, &b), 1.0);
        assert_eq!(total_variation(&a, &a), 0.0);
        assert!(fed_check(&Model::ErdosRenyi { n: 0, mean_degree: 5.0 }, &[100], 1).is_err());
    }
}
