use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use idemetric::generators::Model;
use idemetric::metrics::Scope;
use serde::Serialize;

use crate::error::{usage, CliResult};

#[derive(Debug, Parser)]
#[command(name = "idemetric", version, about = "Distance concentration and beacon routing on small-world graphs")]
pub struct Cli {
    /// Worker threads for sampling (results do not depend on this).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Add wall-clock timings to the JSON report. Off by default because
    /// timings make reruns differ.
    #[arg(long, global = true)]
    pub timings: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a graph and write it as an edge list.
    Generate(GenerateArgs),
    /// Sample pair distances; writes a `distance,fraction` CSV.
    Distances(DistancesArgs),
    /// Distance concentration across a range of sizes.
    IdemetricScan(ScanArgs),
    /// Ball-expansion check over random centers.
    PumpCheck(PumpArgs),
    /// Top-degree mass for the uniform-sparsity proxy.
    UsCheck(UsArgs),
    /// Degree-law convergence across sizes.
    FedCheck(FedArgs),
    /// Ball-growth recurrence, growth rate and predicted distance scale.
    Predict(PredictArgs),
    /// Exact check of the long-range contact probability bound.
    VerifyBound(BoundArgs),
    /// Route through one beacon and measure stretch.
    RouteBeacon(BeaconArgs),
    /// Port/header routing with memory accounting.
    RouteCompact(CompactArgs),
    /// Round-based construction of beacon tables.
    RouteDistributed(DistributedArgs),
    /// Read an external edge list and summarize it.
    Ingest(IngestArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    Er,
    Ws,
    Kleinberg,
    Ba,
    Config,
}

/// Model parameters; which ones apply depends on `--model`.
#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    #[arg(long, value_enum)]
    pub model: Option<ModelKind>,
    /// Number of nodes (a perfect square for kleinberg).
    #[arg(long)]
    pub n: Option<usize>,
    /// Mean degree (er).
    #[arg(long)]
    pub mean_degree: Option<f64>,
    /// Neighbors per side (ws) or edges per new node (ba).
    #[arg(long)]
    pub m: Option<usize>,
    /// Rewiring probability (ws) or local range (kleinberg).
    #[arg(long)]
    pub p: Option<f64>,
    /// Long-range contacts per node (kleinberg).
    #[arg(long)]
    pub q: Option<usize>,
    /// Distance exponent (kleinberg).
    #[arg(long)]
    pub r: Option<f64>,
    /// Power-law exponent (config).
    #[arg(long)]
    pub tau: Option<f64>,
}

impl ModelArgs {
    /// The model at size `n`, falling back to `--n`.
    pub fn model_at(&self, n: Option<usize>) -> CliResult<Model> {
        let kind = self.model.ok_or_else(|| usage("--model is required"))?;
        let n = n.or(self.n).ok_or_else(|| usage("--n is required"))?;
        let need_f = |v: Option<f64>, flag: &str| v.ok_or_else(|| usage(format!("--{flag} is required for this model")));
        let need_u = |v: Option<usize>, flag: &str| v.ok_or_else(|| usage(format!("--{flag} is required for this model")));
        Ok(match kind {
            ModelKind::Er => Model::ErdosRenyi { n, mean_degree: need_f(self.mean_degree, "mean-degree")? },
            ModelKind::Ws => Model::WattsStrogatz { n, m: need_u(self.m, "m")?, p_rewire: need_f(self.p, "p")? },
            ModelKind::Kleinberg => {
                let p = self.p.unwrap_or(1.0);
                if p.fract() != 0.0 || p < 1.0 {
                    return Err(usage(format!("kleinberg local range --p must be a positive integer, got {p}")));
                }
                Model::Kleinberg { n, r: need_f(self.r, "r")?, p_local: p as usize, q_long: self.q.unwrap_or(1) }
            }
            ModelKind::Ba => Model::BarabasiAlbert { n, m_attach: need_u(self.m, "m")? },
            ModelKind::Config => Model::Configuration { n, tau: need_f(self.tau, "tau")? },
        })
    }
}

/// Either an edge list or a model to generate.
#[derive(Debug, Clone, Args)]
pub struct GraphArgs {
    /// Edge-list file (`-` for stdin) instead of a generated graph.
    #[arg(long, conflicts_with = "model")]
    pub input: Option<PathBuf>,
    /// Treat the edge list as directed.
    #[arg(long, requires = "input")]
    pub directed: bool,
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct ReportOut {
    /// Where to write the JSON report (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Edge-list destination (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write a JSON report with generator metadata.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScopeArg {
    All,
    Giant,
}

impl From<ScopeArg> for Scope {
    fn from(s: ScopeArg) -> Scope {
        match s {
            ScopeArg::All => Scope::All,
            ScopeArg::Giant => Scope::Giant,
        }
    }
}

#[derive(Debug, Args)]
pub struct DistancesArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Sampled pairs (default: max(10^4, 20·√n)).
    #[arg(long)]
    pub pairs: Option<usize>,
    /// All pairs instead of a sample.
    #[arg(long, conflicts_with = "pairs")]
    pub exhaustive: bool,
    #[arg(long, value_enum, default_value_t = ScopeArg::All)]
    pub scope: ScopeArg,
    #[arg(long, value_delimiter = ',', default_values_t = idemetric::metrics::DEFAULT_EPS)]
    pub eps: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_values_t = idemetric::metrics::DEFAULT_B)]
    pub b: Vec<u32>,
    /// CSV destination (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write a JSON report with the concentration summary.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Strictly increasing sizes; at least three.
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<usize>,
    #[arg(long)]
    pub pairs: Option<usize>,
    #[arg(long, value_enum, default_value_t = ScopeArg::All)]
    pub scope: ScopeArg,
    #[arg(long, value_delimiter = ',', default_values_t = idemetric::metrics::DEFAULT_EPS)]
    pub eps: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_values_t = idemetric::metrics::DEFAULT_B)]
    pub b: Vec<u32>,
    /// Drops smaller than this many standard errors still count as
    /// non-decreasing; 0 is the strict rule.
    #[arg(long, default_value_t = 2.0)]
    pub noise_z: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: ReportOut,
}

#[derive(Debug, Args)]
pub struct PumpArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
    #[arg(long, default_value_t = 200)]
    pub centers: usize,
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    #[command(flatten)]
    pub out: ReportOut,
}

#[derive(Debug, Args)]
pub struct UsArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, value_delimiter = ',', default_values_t = [0.01, 0.05, 0.1])]
    pub mu: Vec<f64>,
    #[command(flatten)]
    pub out: ReportOut,
}

#[derive(Debug, Args)]
pub struct FedArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: ReportOut,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    /// Local range.
    #[arg(long, default_value_t = 1)]
    pub p: u64,
    /// Long-range contacts per node.
    #[arg(long, default_value_t = 1)]
    pub q: u64,
    #[arg(long, default_value_t = 60)]
    pub i_max: usize,
    /// Sizes at which to report ℓ_n = log_α n.
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<usize>,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[command(flatten)]
    pub out: ReportOut,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    /// Perfect square.
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub r: f64,
    #[command(flatten)]
    pub out: ReportOut,
}

#[derive(Debug, Clone, Args)]
pub struct BeaconPick {
    /// Beacon node (default: drawn from the seed).
    #[arg(long)]
    pub beacon: Option<usize>,
}

#[derive(Debug, Args)]
pub struct BeaconArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub beacon: BeaconPick,
    #[arg(long, default_value_t = 10_000)]
    pub pairs: usize,
    #[arg(long, value_delimiter = ',', default_values_t = [2.0, 2.5, 3.0])]
    pub thresholds: Vec<f64>,
    /// Include every sampled pair in the report.
    #[arg(long)]
    pub samples: bool,
    /// Route one pair and report the path.
    #[arg(long, requires = "to")]
    pub from: Option<usize>,
    #[arg(long, requires = "from")]
    pub to: Option<usize>,
    /// Splice out detours when the two legs meet (single route only).
    #[arg(long)]
    pub shortcut: bool,
    #[command(flatten)]
    pub out: ReportOut,
}

#[derive(Debug, Args)]
pub struct CompactArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub beacon: BeaconPick,
    #[arg(long, default_value_t = 1000)]
    pub pairs: usize,
    /// Trace one message.
    #[arg(long, requires = "to")]
    pub from: Option<usize>,
    #[arg(long, requires = "from")]
    pub to: Option<usize>,
    /// Write the trace dump (`node in_port header out_port` per line).
    #[arg(long, requires = "from")]
    pub trace: Option<PathBuf>,
    #[command(flatten)]
    pub out: ReportOut,
}

#[derive(Debug, Args)]
pub struct DistributedArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Per-node beacon probability (default: ln(n)/n).
    #[arg(long, conflicts_with = "beacons")]
    pub beacon_prob: Option<f64>,
    /// Explicit beacon list.
    #[arg(long, value_delimiter = ',')]
    pub beacons: Option<Vec<usize>>,
    /// Round limit (default: n).
    #[arg(long)]
    pub max_rounds: Option<usize>,
    #[command(flatten)]
    pub out: ReportOut,
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    /// Edge-list file (`-` for stdin).
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub directed: bool,
    /// Write the canonical edge list here.
    #[arg(long)]
    pub canonical: Option<PathBuf>,
    #[command(flatten)]
    pub out: ReportOut,
}
