//! Finite-size trend tests for distance concentration.
//!
//! Idemetricity is a limit statement, so no finite experiment can decide
//! it. The scan measures concentration at several sizes and reports
//! whether it behaves the way the definitions require as `n` grows:
//! relative mass around the median should not decay, and for the strong
//! form a fixed-width window should keep (or gain) mass.
//!
//! A drop between consecutive sizes is treated as noise when it is within
//! `noise_z` standard errors of the two binomial estimates; `noise_z = 0`
//! makes the checks strict.

use serde::{Deserialize, Serialize};

use super::{concentration_report, sample_pair_distances, ConcentrationReport, MetricsError, Scope};
use crate::analytics::{companion_matrix, dominant_eigenvalue, predict_ell};
use crate::generators::{Model, ModelSpec};
use crate::graph::{largest_component, Graph};
use crate::rng::{derive_seed, labels};

pub const DEFAULT_EPS: [f64; 3] = [0.05, 0.1, 0.2];
pub const DEFAULT_B: [u32; 3] = [1, 2, 3];

/// `max(10^4, 20·√n)`.
pub fn default_num_pairs(n: usize) -> usize {
    10_000usize.max((20.0 * (n as f64).sqrt()).ceil() as usize)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub sizes: Vec<usize>,
    /// Pairs per size; `None` uses [`default_num_pairs`].
    pub num_pairs: Option<usize>,
    pub seed: u64,
    pub eps_list: Vec<f64>,
    pub b_list: Vec<u32>,
    pub scope: Scope,
    pub noise_z: f64,
}

impl ScanConfig {
    pub fn new(sizes: Vec<usize>, seed: u64) -> Self {
        ScanConfig {
            sizes,
            num_pairs: None,
            seed,
            eps_list: DEFAULT_EPS.to_vec(),
            b_list: DEFAULT_B.to_vec(),
            scope: Scope::All,
            noise_z: 2.0,
        }
    }

    /// `(graph seed, pair seed)` for the `i`-th size.
    pub fn seeds(&self, i: usize) -> (u64, u64) {
        let s = derive_seed(self.seed, labels::SIZE_BASE + i as u64);
        (derive_seed(s, labels::GRAPH), derive_seed(s, labels::PAIRS))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanPoint {
    pub n: usize,
    pub graph_seed: Option<u64>,
    pub pair_seed: u64,
    pub largest_fraction: f64,
    pub report: ConcentrationReport,
    /// Predicted distance scale, when the family has one.
    pub ell_n: Option<f64>,
    pub median_over_ell: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum Verdict {
    NotConsistent,
    IdemetricConsistent,
    SiConsistent,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpsTrend {
    pub eps: f64,
    pub non_decreasing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindowTrend {
    pub b: u32,
    pub non_decreasing: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub family: Option<Model>,
    pub config: ScanConfig,
    pub points: Vec<ScanPoint>,
    pub relative_trend: Vec<EpsTrend>,
    pub window_trend: Vec<WindowTrend>,
    /// Unreachable fraction at the largest size must not exceed the
    /// smallest tested eps.
    pub reachability_ok: bool,
    pub verdict: Verdict,
    /// Smallest `b` whose window mass is non-decreasing, if any.
    pub si_window: Option<u32>,
}

fn tolerant_non_decreasing(points: &[(f64, u64)], z: f64) -> bool {
    points.windows(2).all(|w| {
        let ((a, na), (b, nb)) = (w[0], w[1]);
        let se = (a * (1.0 - a) / na as f64 + b * (1.0 - b) / nb as f64).sqrt();
        b >= a - z * se
    })
}

fn validate(cfg: &ScanConfig) -> Result<(), MetricsError> {
    if cfg.sizes.len() < 3 {
        return Err(MetricsError::InvalidParameter("scan needs at least three sizes".into()));
    }
    if cfg.sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(MetricsError::InvalidParameter("scan sizes must be strictly increasing".into()));
    }
    if cfg.eps_list.is_empty() || cfg.b_list.is_empty() {
        return Err(MetricsError::InvalidParameter("scan needs at least one eps and one b".into()));
    }
    if !(cfg.noise_z >= 0.0) {
        return Err(MetricsError::InvalidParameter("noise_z must be non-negative".into()));
    }
    Ok(())
}

/// Scans an arbitrary graph family. `build(i, n, graph_seed)` returns the
/// graph at the `i`-th size; `alpha` enables the `ℓ_n = log_α n` columns.
pub fn scan_family<F>(cfg: &ScanConfig, alpha: Option<f64>, mut build: F) -> Result<ScanReport, MetricsError>
where
    F: FnMut(usize, usize, u64) -> Result<Graph, MetricsError>,
{
    validate(cfg)?;
    let mut points = Vec::with_capacity(cfg.sizes.len());
    for (i, &n) in cfg.sizes.iter().enumerate() {
        let (graph_seed, pair_seed) = cfg.seeds(i);
        let g = build(i, n, graph_seed)?;
        let pairs = cfg.num_pairs.unwrap_or_else(|| default_num_pairs(n));
        let h = sample_pair_distances(&g, pairs, pair_seed, cfg.scope)?;
        let report = concentration_report(&h, &cfg.eps_list, &cfg.b_list)?;
        let ell_n = alpha.map(|a| predict_ell(n as f64, a));
        points.push(ScanPoint {
            n,
            graph_seed: Some(graph_seed),
            pair_seed,
            largest_fraction: largest_component(&g).largest_fraction,
            median_over_ell: ell_n.map(|l| report.median_distance as f64 / l),
            ell_n,
            report,
        });
    }
    Ok(summarize(cfg, None, points))
}

fn summarize(cfg: &ScanConfig, family: Option<Model>, points: Vec<ScanPoint>) -> ScanReport {
    let series = |f: &dyn Fn(&ConcentrationReport) -> f64| -> Vec<(f64, u64)> {
        points.iter().map(|p| (f(&p.report), p.report.finite_pairs)).collect()
    };
    let relative_trend: Vec<EpsTrend> = cfg
        .eps_list
        .iter()
        .map(|&eps| EpsTrend {
            eps,
            non_decreasing: tolerant_non_decreasing(&series(&|r| r.relative(eps).unwrap()), cfg.noise_z),
        })
        .collect();
    let window_trend: Vec<WindowTrend> = cfg
        .b_list
        .iter()
        .map(|&b| WindowTrend {
            b,
            non_decreasing: tolerant_non_decreasing(&series(&|r| r.window(b).unwrap().mass), cfg.noise_z),
        })
        .collect();
    let min_eps = cfg.eps_list.iter().copied().fold(f64::INFINITY, f64::min);
    let reachability_ok = points.last().is_some_and(|p| p.report.unreachable_fraction() <= min_eps);
    let si_window = window_trend.iter().filter(|w| w.non_decreasing).map(|w| w.b).min();
    let verdict = if !reachability_ok || !relative_trend.iter().all(|t| t.non_decreasing) {
        Verdict::NotConsistent
    } else if si_window.is_some() {
        Verdict::SiConsistent
    } else {
        Verdict::IdemetricConsistent
    };
    ScanReport { family, config: cfg.clone(), points, relative_trend, window_trend, reachability_ok, verdict, si_window }
}

/// Growth rate of the Kleinberg ball for local range `p` and `q` long-range
/// contacts, used for `ℓ_n`.
pub fn kleinberg_alpha(p: usize, q: usize) -> Result<f64, MetricsError> {
    let m = companion_matrix::<f64>(p as u64, q as u64)?;
    Ok(dominant_eigenvalue(&m, 1e-12)?.alpha)
}

/// Scans a model family over `cfg.sizes`. Kleinberg families with `r = 0`
/// also report `median / ℓ_n`.
pub fn idemetric_scan(family: &Model, cfg: &ScanConfig) -> Result<ScanReport, MetricsError> {
    let alpha = match *family {
        Model::Kleinberg { r, p_local, q_long, .. } if r == 0.0 => Some(kleinberg_alpha(p_local, q_long)?),
        _ => None,
    };
    let mut report =
        scan_family(cfg, alpha, |_, n, seed| Ok(ModelSpec::new(family.with_n(n), seed).generate()?.graph))?;
    report.family = Some(family.clone());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{disjoint_cliques, gen_random_regular};

    #[test]
    fn disjoint_cliques_are_not_consistent() {
        let mut cfg = ScanConfig::new(vec![200, 400, 800], 1);
        cfg.num_pairs = Some(4000);
        let r = scan_family(&cfg, None, |_, n, _| Ok(disjoint_cliques(2, n / 2))).unwrap();
        assert!(!r.reachability_ok);
        assert_eq!(r.verdict, Verdict::NotConsistent);
        // Every finite distance is 1, so the masses themselves look perfect.
        assert!(r.points.iter().all(|p| p.report.relative(0.05) == Some(1.0)));
    }

    #[test]
    fn random_regular_is_si_consistent() {
        let mut cfg = ScanConfig::new(vec![2000, 8000, 32000], 4);
        cfg.num_pairs = Some(10_000);
        let r = scan_family(&cfg, None, |_, n, seed| Ok(gen_random_regular(n, 4, seed)?)).unwrap();
        assert_eq!(r.verdict, Verdict::SiConsistent, "{:#?}", r.window_trend);
    }

    #[test]
    fn path_family_is_not_consistent() {
        // Distances spread over 1..n, so a fixed window loses mass; relative
        // mass stays flat which the tolerant rule accepts, but the strong
        // form must fail.
        let mut cfg = ScanConfig::new(vec![100, 400, 1600], 2);
        cfg.num_pairs = Some(10_000);
        let r = scan_family(&cfg, None, |_, n, _| Ok(crate::generators::path_graph(n))).unwrap();
        assert_ne!(r.verdict, Verdict::SiConsistent);
        assert!(r.window_trend.iter().all(|w| !w.non_decreasing));
    }

    #[test]
    fn rejects_bad_configs() {
        let build = |_: usize, n: usize, _: u64| Ok(crate::generators::path_graph(n));
        assert!(scan_family(&ScanConfig::new(vec![10, 20], 0), None, build).is_err());
        assert!(scan_family(&ScanConfig::new(vec![10, 30, 20], 0), None, build).is_err());
    }

    #[test]
    fn strict_trend_rule() {
        assert!(tolerant_non_decreasing(&[(0.5, 100), (0.5, 100), (0.6, 100)], 0.0));
        assert!(!tolerant_non_decreasing(&[(0.5, 100), (0.49, 100)], 0.0));
        assert!(tolerant_non_decreasing(&[(0.5, 100), (0.49, 100)], 2.0));
        assert!(!tolerant_non_decreasing(&[(0.9, 100_000), (0.8, 100_000)], 2.0));
    }
}
