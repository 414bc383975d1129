use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{at_least, at_most, MetricsError};
use crate::graph::{ball_profile, BallProfile, Graph, NodeId};
use crate::rng::main_stream;

/// Verdict of the weak ball-expander clauses at one center.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CenterVerdict {
    pub center: NodeId,
    /// Clause (i): some ball reaches `eps·n` nodes.
    pub has_big_ball: bool,
    /// Smallest `e(B, complement) / |B|` over balls with
    /// `eps·n <= |B| <= (1 - eps)·n`; `None` when no ball is in that window.
    pub min_ratio: Option<f64>,
    /// Clauses (i) and (ii) both hold at the threshold.
    pub passes: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PumpReport {
    pub eps: f64,
    pub alpha_threshold: f64,
    pub sampled_centers: usize,
    /// Minimum expansion ratio over all sampled centers and window radii.
    pub ratio_floor: Option<f64>,
    pub fail_no_big_ball: usize,
    pub pass_fraction: f64,
}

/// Evaluates both clauses for the ball profile of one center.
pub fn evaluate_center(profile: &BallProfile, n: usize, eps: f64, alpha_threshold: f64) -> CenterVerdict {
    let has_big_ball = at_least(profile.final_size(), eps, n);
    let mut min_ratio: Option<f64> = None;
    for (&size, &boundary) in profile.sizes.iter().zip(&profile.boundary_edges) {
        if at_least(size, eps, n) && at_most(size, 1.0 - eps, n) {
            let ratio = boundary as f64 / size as f64;
            min_ratio = Some(min_ratio.map_or(ratio, |m| m.min(ratio)));
        }
    }
    let passes = has_big_ball && min_ratio.is_none_or(|r| r >= alpha_threshold);
    CenterVerdict { center: profile.center, has_big_ball, min_ratio, passes }
}

/// Samples `num_centers` centers uniformly with replacement and evaluates
/// the clauses at each.
pub fn pump_check(
    g: &Graph,
    eps: f64,
    num_centers: usize,
    alpha_threshold: f64,
    seed: u64,
) -> Result<PumpReport, MetricsError> {
    if g.is_directed() {
        return Err(MetricsError::DirectedInput("pump_check"));
    }
    if !(eps > 0.0 && eps < 0.5) {
        return Err(MetricsError::InvalidParameter(format!("eps must be in (0, 1/2), got {eps}")));
    }
    if num_centers == 0 || g.num_nodes() == 0 {
        return Err(MetricsError::InvalidParameter("need at least one center".into()));
    }
    let n = g.num_nodes();
    let mut rng = main_stream(seed);
    let centers: Vec<NodeId> = (0..num_centers).map(|_| rng.random_range(0..n)).collect();
    let verdicts: Vec<CenterVerdict> = centers
        .par_iter()
        .map(|&u| evaluate_center(&ball_profile(g, u, None), n, eps, alpha_threshold))
        .collect();

    let ratio_floor = verdicts.iter().filter_map(|v| v.min_ratio).reduce(f64::min);
    let fail_no_big_ball = verdicts.iter().filter(|v| !v.has_big_ball).count();
    let passing = verdicts.iter().filter(|v| v.passes).count();
    Ok(PumpReport {
        eps,
        alpha_threshold,
        sampled_centers: num_centers,
        ratio_floor,
        fail_no_big_ball,
        pass_fraction: passing as f64 / num_centers as f64,
    })
}
