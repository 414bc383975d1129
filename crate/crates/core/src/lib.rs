//! Small-world network models and the tools to measure how concentrated
//! their distances are.
//!
//! - [`graph`]: immutable CSR graphs, BFS, components, ball profiles.
//! - [`generators`]: seeded Erdős–Rényi, Watts–Strogatz, Kleinberg,
//!   preferential-attachment and configuration-model graphs.
//! - [`metrics`]: sampled distance histograms, concentration and window
//!   mass, ball-expansion (PUMP), degree-law convergence and sparsity checks.
//! - [`analytics`]: the ball-growth recurrence, its companion matrix and
//!   dominant eigenvalue, and the long-range probability bound.
//! - [`routing`]: beacon routing, its distributed construction, and a
//!   port/header compact scheme with bit-exact memory accounting.
//! - [`io`]: edge lists and CSV histograms.
//!
//! Every randomized operation takes an explicit seed and produces the same
//! output for any rayon thread count.
//!
//! ```
//! use idemetric::generators::{Model, ModelSpec};
//! use idemetric::metrics::{concentration_report, sample_pair_distances, Scope};
//!
//! let g = ModelSpec::new(Model::WattsStrogatz { n: 4096, m: 5, p_rewire: 0.2 }, 7)
//!     .generate()
//!     .unwrap()
//!     .graph;
//! let h = sample_pair_distances(&g, 2000, 1, Scope::All).unwrap();
//! let report = concentration_report(&h, &[0.1], &[2]).unwrap();
//! assert!(report.window(2).unwrap().mass > 0.8);
//! ```

pub mod analytics;
pub mod generators;
pub mod graph;
pub mod io;
pub mod metrics;
pub mod rng;
pub mod routing;

pub use graph::{Graph, NodeId, UNREACHABLE};

use num_bigint::BigInt;
use num_rational::BigRational;

/// The `p = q = 1` ball-growth sequence, exact.
pub type IntegerSeries = analytics::RecurrenceSeries<BigInt>;
/// The general `(p, q)` sequence, exact.
pub type RationalSeries = analytics::RecurrenceSeries<BigRational>;
pub type Companion = analytics::CompanionMatrix<f64>;
pub type Alpha = analytics::AlphaEstimate<f64>;
pub type LongRangeBound = analytics::BoundCheck<f64>;
