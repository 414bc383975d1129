//! Seeded generators for the small-world network models under study.
//!
//! Every generator is a pure function of its parameters and seed. The
//! declarative [`ModelSpec`] is what the CLI and the experiment drivers use;
//! the individual `gen_*` functions expose model-specific metadata.

mod barabasi_albert;
mod classic;
mod configuration;
mod erdos_renyi;
mod kleinberg;
mod watts_strogatz;

pub use barabasi_albert::gen_barabasi_albert;
pub use classic::{
    complete_graph, cycle_graph, disjoint_cliques, gen_random_regular, path_graph, ring_lattice, star_graph,
};
pub use configuration::{gen_configuration, ConfigurationGraph};
pub use erdos_renyi::gen_erdos_renyi;
pub use kleinberg::{
    gen_kleinberg, kleinberg_lattice_distance, kleinberg_local_lattice, DistanceClasses, KleinbergGraph,
    LatticeCoord, Torus,
};
pub use watts_strogatz::{gen_watts_strogatz, WattsStrogatzGraph};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error, PartialEq)]
pub enum GenError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("n = {0} is not a perfect square")]
    NotPerfectSquare(usize),
    #[error("gave up after {0} attempts to draw a simple graph")]
    TooManyAttempts(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub(crate) fn invalid(msg: impl Into<String>) -> GenError {
    GenError::InvalidParameter(msg.into())
}

/// A network model and its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum Model {
    ErdosRenyi { n: usize, mean_degree: f64 },
    WattsStrogatz { n: usize, m: usize, p_rewire: f64 },
    Kleinberg { n: usize, r: f64, p_local: usize, q_long: usize },
    BarabasiAlbert { n: usize, m_attach: usize },
    Configuration { n: usize, tau: f64 },
}

impl Model {
    pub fn n(&self) -> usize {
        match *self {
            Model::ErdosRenyi { n, .. }
            | Model::WattsStrogatz { n, .. }
            | Model::Kleinberg { n, .. }
            | Model::BarabasiAlbert { n, .. }
            | Model::Configuration { n, .. } => n,
        }
    }

    /// Same model and parameters at a different size.
    pub fn with_n(&self, size: usize) -> Model {
        let mut m = self.clone();
        match &mut m {
            Model::ErdosRenyi { n, .. }
            | Model::WattsStrogatz { n, .. }
            | Model::Kleinberg { n, .. }
            | Model::BarabasiAlbert { n, .. }
            | Model::Configuration { n, .. } => *n = size,
        }
        m
    }

    pub fn is_directed(&self) -> bool {
        matches!(self, Model::Kleinberg { .. })
    }

    pub fn validate(&self) -> Result<(), GenError> {
        let n = self.n();
        if n < 2 {
            return Err(invalid(format!("n must be at least 2, got {n}")));
        }
        match *self {
            Model::ErdosRenyi { mean_degree, .. } => {
                if !(mean_degree > 0.0 && mean_degree <= (n - 1) as f64) {
                    return Err(invalid(format!("mean degree must be in (0, n-1], got {mean_degree}")));
                }
            }
            Model::WattsStrogatz { m, p_rewire, .. } => {
                if m < 1 || 2 * m >= n {
                    return Err(invalid(format!("Watts-Strogatz needs 1 <= m < n/2, got m={m}, n={n}")));
                }
                if !(0.0..=1.0).contains(&p_rewire) {
                    return Err(invalid(format!("rewiring probability must be in [0,1], got {p_rewire}")));
                }
            }
            Model::Kleinberg { r, p_local, q_long, .. } => {
                Torus::new(n)?;
                if !(0.0..2.0).contains(&r) {
                    return Err(invalid(format!("Kleinberg exponent must be in [0,2), got {r}")));
                }
                if p_local < 1 || q_long < 1 {
                    return Err(invalid("Kleinberg needs p_local >= 1 and q_long >= 1"));
                }
            }
            Model::BarabasiAlbert { m_attach, .. } => {
                if m_attach < 1 || n <= m_attach {
                    return Err(invalid(format!("preferential attachment needs 1 <= m < n, got m={m_attach}")));
                }
            }
            Model::Configuration { tau, .. } => {
                if !(tau > 2.0) {
                    return Err(invalid(format!("power-law exponent must exceed 2, got {tau}")));
                }
            }
        }
        Ok(())
    }
}

/// A model together with the seed of one generator run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    #[serde(flatten)]
    pub model: Model,
    pub seed: u64,
}

/// Model-specific facts recorded during generation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum GeneratorMeta {
    ErdosRenyi,
    WattsStrogatz { rewired_edges: usize },
    Kleinberg { long_range_trials: usize, distinct_long_range_arcs: usize, self_trials: usize, normalizer: f64 },
    BarabasiAlbert { seed_clique: usize },
    Configuration { stubs: usize, self_loops_discarded: usize, multi_edges_discarded: usize, capped_degrees: usize },
}

#[derive(Debug, Clone)]
pub struct Generated {
    pub graph: Graph,
    pub meta: GeneratorMeta,
}

impl ModelSpec {
    pub fn new(model: Model, seed: u64) -> Self {
        ModelSpec { model, seed }
    }

    pub fn generate(&self) -> Result<Generated, GenError> {
        self.model.validate()?;
        let seed = self.seed;
        Ok(match self.model {
            Model::ErdosRenyi { n, mean_degree } => {
                Generated { graph: gen_erdos_renyi(n, mean_degree, seed)?, meta: GeneratorMeta::ErdosRenyi }
            }
            Model::WattsStrogatz { n, m, p_rewire } => {
                let ws = gen_watts_strogatz(n, m, p_rewire, seed)?;
                let rewired_edges = ws.rewired_count();
                Generated { graph: ws.graph, meta: GeneratorMeta::WattsStrogatz { rewired_edges } }
            }
            Model::Kleinberg { n, r, p_local, q_long } => {
                let kl = gen_kleinberg(n, r, p_local, q_long, seed)?;
                let meta = GeneratorMeta::Kleinberg {
                    long_range_trials: kl.long_range_trials(),
                    distinct_long_range_arcs: kl.distinct_long_range_arcs(),
                    self_trials: kl.self_trials(),
                    normalizer: kl.normalizer,
                };
                Generated { graph: kl.graph, meta }
            }
            Model::BarabasiAlbert { n, m_attach } => Generated {
                graph: gen_barabasi_albert(n, m_attach, seed)?,
                meta: GeneratorMeta::BarabasiAlbert { seed_clique: m_attach + 1 },
            },
            Model::Configuration { n, tau } => {
                let cm = gen_configuration(n, tau, seed)?;
                let meta = GeneratorMeta::Configuration {
                    stubs: cm.stubs,
                    self_loops_discarded: cm.self_loops_discarded,
                    multi_edges_discarded: cm.multi_edges_discarded,
                    capped_degrees: cm.capped_degrees,
                };
                Generated { graph: cm.graph, meta }
            }
        })
    }
}
