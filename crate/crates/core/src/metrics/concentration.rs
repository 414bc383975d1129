use serde::{Deserialize, Serialize};

use super::{DistanceHistogram, MetricsError};

/// Mass of the histogram within relative width `eps` of its median.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RelativeMass {
    pub eps: f64,
    pub mass: f64,
}

/// Largest mass in a window `[c - b, c + b]` and the smallest maximizing `c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindowMass {
    pub b: u32,
    pub mass: f64,
    pub center: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationReport {
    pub median_distance: u32,
    pub sampled_pairs: u64,
    pub finite_pairs: u64,
    pub unreachable: u64,
    pub relative_mass: Vec<RelativeMass>,
    pub window_mass: Vec<WindowMass>,
}

impl ConcentrationReport {
    pub fn relative(&self, eps: f64) -> Option<f64> {
        self.relative_mass.iter().find(|r| r.eps == eps).map(|r| r.mass)
    }

    pub fn window(&self, b: u32) -> Option<WindowMass> {
        self.window_mass.iter().find(|w| w.b == b).copied()
    }

    pub fn unreachable_fraction(&self) -> f64 {
        self.unreachable as f64 / self.sampled_pairs as f64
    }
}

fn finite_total(h: &DistanceHistogram) -> Result<u64, MetricsError> {
    match h.finite_pairs() {
        0 => Err(MetricsError::NoFiniteDistances),
        t => Ok(t),
    }
}

/// Lower median of the finite distances.
pub fn median_distance(h: &DistanceHistogram) -> Result<u32, MetricsError> {
    let total = finite_total(h)?;
    let mut cum = 0;
    for (&d, &c) in &h.counts {
        cum += c;
        if 2 * cum >= total {
            return Ok(d);
        }
    }
    unreachable!("cumulative count reaches the total")
}

/// Fraction of finite distances in `[(1 - eps) m, (1 + eps) m]`, `m` the median.
pub fn relative_mass(h: &DistanceHistogram, eps: f64) -> Result<f64, MetricsError> {
    let total = finite_total(h)?;
    let m = median_distance(h)? as f64;
    // Absorb rounding in (1 ± eps)·m so integer endpoints are included.
    let slack = 1e-12 * m.max(1.0);
    let (lo, hi) = ((1.0 - eps) * m - slack, (1.0 + eps) * m + slack);
    let inside: u64 = h.counts.iter().filter(|(&d, _)| (d as f64) >= lo && (d as f64) <= hi).map(|(_, &c)| c).sum();
    Ok(inside as f64 / total as f64)
}

/// Best window of half-width `b`; centers range over the finite support.
pub fn window_mass(h: &DistanceHistogram, b: u32) -> Result<WindowMass, MetricsError> {
    let total = finite_total(h)?;
    let lo = *h.counts.keys().next().expect("finite support");
    let hi = *h.counts.keys().next_back().expect("finite support");
    let mut best = (0u64, lo);
    for c in lo..=hi {
        let inside: u64 = h.counts.range(c.saturating_sub(b)..=c.saturating_add(b)).map(|(_, &k)| k).sum();
        if inside > best.0 {
            best = (inside, c);
        }
    }
    Ok(WindowMass { b, mass: best.0 as f64 / total as f64, center: best.1 })
}

pub fn concentration_report(
    h: &DistanceHistogram,
    eps_list: &[f64],
    b_list: &[u32],
) -> Result<ConcentrationReport, MetricsError> {
    if let Some(&eps) = eps_list.iter().find(|&&e| !(e >= 0.0 && e.is_finite())) {
        return Err(MetricsError::InvalidParameter(format!("eps must be a finite non-negative number, got {eps}")));
    }
    Ok(ConcentrationReport {
        median_distance: median_distance(h)?,
        sampled_pairs: h.sampled_pairs,
        finite_pairs: h.finite_pairs(),
        unreachable: h.unreachable,
        relative_mass: eps_list.iter().map(|&eps| relative_mass(h, eps).map(|mass| RelativeMass { eps, mass })).collect::<Result<_, _>>()?,
        window_mass: b_list.iter().map(|&b| window_mass(h, b)).collect::<Result<_, _>>()?,
    })
}
