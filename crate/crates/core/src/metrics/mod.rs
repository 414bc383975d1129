//! Estimators for distance concentration and the structural properties
//! that go with it: ball expansion, sparsity of the degree sequence, and
//! convergence of degree laws.

mod concentration;
mod distances;
mod fed;
mod pump;
mod radius;
mod scan;
mod sparsity;

pub use concentration::{
    concentration_report, median_distance, relative_mass, window_mass, ConcentrationReport, RelativeMass, WindowMass,
};
pub use distances::{exhaustive_pair_distances, sample_pair_distances, DistanceHistogram, Scope};
pub use fed::{fed_check, fed_from_graphs, reference_law, total_variation, FedPoint, FedReport, ReferenceLaw};
pub use pump::{evaluate_center, pump_check, CenterVerdict, PumpReport};
pub use radius::{r_u, RuValue};
pub use scan::{
    default_num_pairs, idemetric_scan, kleinberg_alpha, scan_family, EpsTrend, ScanConfig, ScanPoint, ScanReport,
    Verdict, WindowTrend, DEFAULT_B, DEFAULT_EPS,
};
pub use sparsity::{us_proxy, UsReport};

use thiserror::Error;

use crate::analytics::AnalyticsError;
use crate::generators::GenError;

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("histogram has no finite distances")]
    NoFiniteDistances,
    #[error("{0} requires an undirected graph")]
    DirectedInput(&'static str),
    #[error(transparent)]
    Generator(#[from] GenError),
    #[error(transparent)]
    Analytics(#[from] AnalyticsError),
}

/// `size >= frac·n`, tolerant to rounding in `frac·n`.
pub(crate) fn at_least(size: usize, frac: f64, n: usize) -> bool {
    size as f64 >= frac * n as f64 - 1e-9
}

/// `size <= frac·n`, tolerant to rounding in `frac·n`.
pub(crate) fn at_most(size: usize, frac: f64, n: usize) -> bool {
    size as f64 <= frac * n as f64 + 1e-9
}
