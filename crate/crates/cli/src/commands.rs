use std::fs::File;
use std::io::{self, BufReader, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::Context;
use idemetric::analytics::{companion_matrix, dominant_eigenvalue, predict_ell, recurrence_c_general, verify_longrange_lower_bound};
use idemetric::generators::{GeneratorMeta, Model, ModelSpec};
use idemetric::graph::{degree_histogram, largest_component, Graph, NodeId, UNREACHABLE};
use idemetric::io::{edge_list_string, histogram_csv_string, parse_edge_list};
use idemetric::metrics::{
    concentration_report, default_num_pairs, exhaustive_pair_distances, fed_check, idemetric_scan, pump_check,
    sample_pair_distances, us_proxy, ScanConfig, Scope,
};
use idemetric::rng::{derive_seed, distinct_pairs, labels};
use idemetric::routing::{
    beacon_route_with, build_beacon_tables, compact_route_sim, compact_scheme_build, distributed_beacon_sim,
    memory_account, stretch_report, BeaconChoice, RouteOptions,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::*;
use crate::error::{usage, CliResult};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Serialize)]
struct Envelope<'a, R> {
    schema_version: &'static str,
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    config: Value,
    results: R,
    #[serde(skip_serializing_if = "Option::is_none")]
    timings: Option<Vec<Phase>>,
}

#[derive(Serialize)]
struct Phase {
    phase: &'static str,
    seconds: f64,
}

/// Phase timer; only reported with `--timings`.
pub struct Clock {
    enabled: bool,
    last: Instant,
    phases: Vec<Phase>,
}

impl Clock {
    pub fn new(enabled: bool) -> Self {
        Clock { enabled, last: Instant::now(), phases: Vec::new() }
    }

    fn lap(&mut self, phase: &'static str) {
        let now = Instant::now();
        self.phases.push(Phase { phase, seconds: (now - self.last).as_secs_f64() });
        self.last = now;
    }

    fn take(&mut self) -> Option<Vec<Phase>> {
        self.enabled.then(|| std::mem::take(&mut self.phases))
    }
}

fn envelope<R: Serialize>(command: &str, config: Value, results: R, clock: &mut Clock) -> CliResult<String> {
    let env = Envelope {
        schema_version: SCHEMA_VERSION,
        tool: "idemetric",
        version: env!("CARGO_PKG_VERSION"),
        command,
        config,
        results,
        timings: clock.take(),
    };
    let mut text = serde_json::to_string_pretty(&env)?;
    text.push('\n');
    Ok(text)
}

fn is_stdio(path: &Path) -> bool {
    path.as_os_str() == "-"
}

fn write_output(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) if !is_stdio(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        _ => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn read_graph(path: &PathBuf, directed: bool) -> CliResult<Graph> {
    let g = if is_stdio(path) {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        parse_edge_list(text.as_bytes(), directed)
    } else {
        let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
        parse_edge_list(BufReader::new(file), directed)
    };
    g.with_context(|| format!("reading edge list {}", path.display()))
}

fn generate_model(model: Model, seed: u64) -> CliResult<(Graph, GeneratorMeta, ModelSpec)> {
    let spec = ModelSpec::new(model, derive_seed(seed, labels::GRAPH));
    let generated = spec.generate()?;
    Ok((generated.graph, generated.meta, spec))
}

/// The graph named by `--input` or the model flags, with its config echo.
fn load_graph(args: &GraphArgs) -> CliResult<(Graph, Value)> {
    if let Some(path) = &args.input {
        let g = read_graph(path, args.directed)?;
        return Ok((g, json!({ "input": path.display().to_string(), "directed": args.directed, "seed": args.seed })));
    }
    if args.model.model.is_none() {
        return Err(usage("give either --input or --model"));
    }
    let (g, _, spec) = generate_model(args.model.model_at(None)?, args.seed)?;
    Ok((g, json!({ "graph": spec, "seed": args.seed })))
}

fn with(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

fn pick_beacon(g: &Graph, pick: &BeaconPick, seed: u64) -> CliResult<NodeId> {
    let n = g.num_nodes();
    if n == 0 {
        return Err(usage("graph has no nodes"));
    }
    match pick.beacon {
        Some(b) if b >= n => Err(usage(format!("beacon {b} out of range for n={n}"))),
        Some(b) => Ok(b),
        None => Ok((derive_seed(seed, labels::BEACON) % n as u64) as usize),
    }
}

pub fn run(command: Command, clock: &mut Clock) -> CliResult<()> {
    match command {
        Command::Generate(a) => generate(a, clock),
        Command::Distances(a) => distances(a, clock),
        Command::IdemetricScan(a) => scan(a, clock),
        Command::PumpCheck(a) => pump(a, clock),
        Command::UsCheck(a) => us(a, clock),
        Command::FedCheck(a) => fed(a, clock),
        Command::Predict(a) => predict(a, clock),
        Command::VerifyBound(a) => verify_bound(a, clock),
        Command::RouteBeacon(a) => route_beacon(a, clock),
        Command::RouteCompact(a) => route_compact(a, clock),
        Command::RouteDistributed(a) => route_distributed(a, clock),
        Command::Ingest(a) => ingest(a, clock),
    }
}

#[derive(Serialize)]
struct GraphSummary {
    n: usize,
    edges: usize,
    directed: bool,
    mean_degree: f64,
    max_degree: usize,
    components: usize,
    largest_size: usize,
    largest_fraction: f64,
}

fn summarize(g: &Graph) -> GraphSummary {
    let comps = largest_component(g);
    GraphSummary {
        n: g.num_nodes(),
        edges: g.num_edges(),
        directed: g.is_directed(),
        mean_degree: degree_histogram(g).mean_degree(),
        max_degree: (0..g.num_nodes()).map(|u| g.total_degree(u)).max().unwrap_or(0),
        components: comps.num_components(),
        largest_size: comps.largest_size,
        largest_fraction: comps.largest_fraction,
    }
}

fn generate(a: GenerateArgs, clock: &mut Clock) -> CliResult<()> {
    let (g, meta, spec) = generate_model(a.model.model_at(None)?, a.seed)?;
    clock.lap("generate");
    write_output(a.out.as_deref(), &edge_list_string(&g))?;
    if let Some(report) = &a.report {
        #[derive(Serialize)]
        struct Results {
            graph: GraphSummary,
            meta: GeneratorMeta,
        }
        let text = envelope(
            "generate",
            json!({ "graph": spec, "seed": a.seed }),
            Results { graph: summarize(&g), meta },
            clock,
        )?;
        write_output(Some(report), &text)?;
    }
    Ok(())
}

fn distances(a: DistancesArgs, clock: &mut Clock) -> CliResult<()> {
    let (g, source) = load_graph(&a.graph)?;
    clock.lap("graph");
    let scope: Scope = a.scope.into();
    let pair_seed = derive_seed(a.graph.seed, labels::PAIRS);
    let (h, pairs) = if a.exhaustive {
        if scope == Scope::Giant {
            return Err(usage("--exhaustive covers all pairs; --scope giant applies to sampling only"));
        }
        (exhaustive_pair_distances(&g), None)
    } else {
        let pairs = a.pairs.unwrap_or_else(|| default_num_pairs(g.num_nodes()));
        (sample_pair_distances(&g, pairs, pair_seed, scope)?, Some(pairs))
    };
    clock.lap("distances");
    write_output(a.out.as_deref(), &histogram_csv_string(&h))?;
    if let Some(report) = &a.report {
        let config = with(
            source,
            json!({ "pairs": pairs, "exhaustive": a.exhaustive, "pair_seed": pair_seed, "scope": scope, "eps": a.eps, "b": a.b }),
        );
        let summary = if h.finite_pairs() > 0 { Some(concentration_report(&h, &a.eps, &a.b)?) } else { None };
        let results = json!({ "histogram": h, "fractions": h.fractions(), "concentration": summary });
        write_output(Some(report), &envelope("distances", config, results, clock)?)?;
    }
    Ok(())
}

fn scan(a: ScanArgs, clock: &mut Clock) -> CliResult<()> {
    let family = a.model.model_at(Some(a.sizes.first().copied().unwrap_or(0)))?;
    let cfg = ScanConfig {
        sizes: a.sizes,
        num_pairs: a.pairs,
        seed: a.seed,
        eps_list: a.eps,
        b_list: a.b,
        scope: a.scope.into(),
        noise_z: a.noise_z,
    };
    let report = idemetric_scan(&family, &cfg)?;
    clock.lap("scan");
    let text = envelope("idemetric-scan", json!({ "family": family, "scan": cfg }), report, clock)?;
    write_output(a.out.out.as_deref(), &text)
}

fn pump(a: PumpArgs, clock: &mut Clock) -> CliResult<()> {
    let (g, source) = load_graph(&a.graph)?;
    clock.lap("graph");
    let center_seed = derive_seed(a.graph.seed, labels::CENTERS);
    let report = pump_check(&g, a.eps, a.centers, a.alpha, center_seed)?;
    clock.lap("pump");
    let config = with(source, json!({ "eps": a.eps, "centers": a.centers, "alpha": a.alpha, "center_seed": center_seed }));
    write_output(a.out.out.as_deref(), &envelope("pump-check", config, report, clock)?)
}

fn us(a: UsArgs, clock: &mut Clock) -> CliResult<()> {
    let (g, source) = load_graph(&a.graph)?;
    clock.lap("graph");
    let reports = a.mu.iter().map(|&mu| us_proxy(&g, mu)).collect::<Result<Vec<_>, _>>()?;
    clock.lap("us");
    let results = json!({ "n": g.num_nodes(), "edges": g.num_edges(), "reports": reports });
    write_output(a.out.out.as_deref(), &envelope("us-check", with(source, json!({ "mu": a.mu })), results, clock)?)
}

fn fed(a: FedArgs, clock: &mut Clock) -> CliResult<()> {
    let family = a.model.model_at(Some(a.sizes.first().copied().unwrap_or(0)))?;
    let report = fed_check(&family, &a.sizes, a.seed)?;
    clock.lap("fed");
    let config = json!({ "family": family, "sizes": a.sizes, "seed": a.seed });
    write_output(a.out.out.as_deref(), &envelope("fed-check", config, report, clock)?)
}

fn predict(a: PredictArgs, clock: &mut Clock) -> CliResult<()> {
    let series = recurrence_c_general(a.p, a.q, a.i_max)?;
    let matrix = companion_matrix::<f64>(a.p, a.q)?;
    let alpha = dominant_eigenvalue(&matrix, a.tol)?;
    clock.lap("predict");
    let ell: Vec<Value> = a
        .n
        .iter()
        .map(|&n| {
            if n < 2 {
                Err(usage(format!("ℓ_n needs n >= 2, got {n}")))
            } else {
                Ok(json!({ "n": n, "ell_n": predict_ell(n as f64, alpha.alpha) }))
            }
        })
        .collect::<CliResult<_>>()?;
    let results = json!({
        "values": series.values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "ratios": series.ratios,
        "order4_agrees": series.order4_agrees,
        "companion_first_row": matrix.first_row(),
        "char_poly_coefficients": matrix.char_poly_coefficients(),
        "alpha": alpha,
        "rho": series.rho(alpha.alpha),
        "ell": ell,
    });
    let config = json!({ "p": a.p, "q": a.q, "i_max": a.i_max, "tol": a.tol, "n": a.n });
    write_output(a.out.out.as_deref(), &envelope("predict", config, results, clock)?)
}

fn verify_bound(a: BoundArgs, clock: &mut Clock) -> CliResult<()> {
    let check = verify_longrange_lower_bound::<f64>(a.n, a.r)?;
    clock.lap("bound");
    write_output(a.out.out.as_deref(), &envelope("verify-bound", json!({ "n": a.n, "r": a.r }), check, clock)?)
}

fn finite_max(d: &[u32]) -> Option<u32> {
    d.iter().copied().filter(|&x| x != UNREACHABLE).max()
}

fn route_beacon(a: BeaconArgs, clock: &mut Clock) -> CliResult<()> {
    let (g, source) = load_graph(&a.graph)?;
    clock.lap("graph");
    if g.num_nodes() < 2 {
        return Err(usage("routing needs at least two nodes"));
    }
    let beacon = pick_beacon(&g, &a.beacon, a.graph.seed)?;
    let tables = build_beacon_tables(&g, beacon)?;
    clock.lap("tables");
    let pair_seed = derive_seed(a.graph.seed, labels::PAIRS);
    let mut stretch = stretch_report(&g, &tables, a.pairs, pair_seed, &a.thresholds)?;
    if !a.samples {
        stretch.samples.clear();
    }
    clock.lap("stretch");
    let route = match (a.from, a.to) {
        (Some(from), Some(to)) => Some(beacon_route_with(&tables, from, to, RouteOptions { shortcut: a.shortcut })?),
        _ => None,
    };
    let results = json!({
        "beacon": beacon,
        "tables": {
            "max_dist_to": finite_max(&tables.dist_to),
            "max_dist_from": finite_max(&tables.dist_from),
            "unreachable_to": tables.dist_to.iter().filter(|&&d| d == UNREACHABLE).count(),
            "unreachable_from": tables.dist_from.iter().filter(|&&d| d == UNREACHABLE).count(),
        },
        "stretch": stretch,
        "route": route,
    });
    let config = with(
        source,
        json!({
            "beacon": beacon, "pairs": a.pairs, "pair_seed": pair_seed, "thresholds": a.thresholds,
            "samples": a.samples, "from": a.from, "to": a.to, "shortcut": a.shortcut,
        }),
    );
    write_output(a.out.out.as_deref(), &envelope("route-beacon", config, results, clock)?)
}

fn route_compact(a: CompactArgs, clock: &mut Clock) -> CliResult<()> {
    let (g, source) = load_graph(&a.graph)?;
    clock.lap("graph");
    if g.num_nodes() < 2 {
        return Err(usage("routing needs at least two nodes"));
    }
    let beacon = pick_beacon(&g, &a.beacon, a.graph.seed)?;
    let scheme = compact_scheme_build(&g, beacon)?;
    let memory = memory_account(&scheme);
    clock.lap("scheme");
    let pair_seed = derive_seed(a.graph.seed, labels::PAIRS);
    let (mut delivered, mut mismatches, mut total_hops, mut max_hops) = (0usize, 0usize, 0usize, 0usize);
    for (u, v) in distinct_pairs(g.num_nodes(), a.pairs, pair_seed) {
        let t = compact_route_sim(&scheme, u, v)?;
        delivered += usize::from(t.delivered);
        mismatches += usize::from(t.hops != (scheme.dist_to[u] + scheme.dist_to[v]) as usize);
        total_hops += t.hops;
        max_hops = max_hops.max(t.hops);
    }
    clock.lap("simulate");
    let trace = match (a.from, a.to) {
        (Some(u), Some(v)) => {
            let t = compact_route_sim(&scheme, u, v)?;
            if let Some(path) = &a.trace {
                write_output(Some(path), &t.to_string())?;
            }
            Some(t)
        }
        _ => None,
    };
    let results = json!({
        "beacon": beacon,
        "memory": memory,
        "simulation": {
            "pairs": a.pairs,
            "delivered": delivered,
            "hop_mismatches": mismatches,
            "mean_hops": if a.pairs > 0 { total_hops as f64 / a.pairs as f64 } else { 0.0 },
            "max_hops": max_hops,
        },
        "trace": trace,
    });
    let config = with(
        source,
        json!({ "beacon": beacon, "pairs": a.pairs, "pair_seed": pair_seed, "from": a.from, "to": a.to }),
    );
    write_output(a.out.out.as_deref(), &envelope("route-compact", config, results, clock)?)
}

fn route_distributed(a: DistributedArgs, clock: &mut Clock) -> CliResult<()> {
    let (g, source) = load_graph(&a.graph)?;
    clock.lap("graph");
    let n = g.num_nodes();
    if n < 2 {
        return Err(usage("routing needs at least two nodes"));
    }
    let choice = match (&a.beacons, a.beacon_prob) {
        (Some(list), _) => BeaconChoice::Explicit(list.clone()),
        (None, Some(p)) => BeaconChoice::Probability(p),
        (None, None) => BeaconChoice::log_over_n(n),
    };
    let max_rounds = a.max_rounds.unwrap_or(n);
    let beacon_seed = derive_seed(a.graph.seed, labels::BEACON);
    let report = distributed_beacon_sim(&g, &choice, max_rounds, beacon_seed)?;
    clock.lap("simulate");
    let config = with(source, json!({ "beacons": choice, "max_rounds": max_rounds, "beacon_seed": beacon_seed }));
    write_output(a.out.out.as_deref(), &envelope("route-distributed", config, report, clock)?)
}

fn ingest(a: IngestArgs, clock: &mut Clock) -> CliResult<()> {
    let g = read_graph(&a.input, a.directed)?;
    clock.lap("parse");
    if let Some(path) = &a.canonical {
        write_output(Some(path), &edge_list_string(&g))?;
    }
    let self_loops = (0..g.num_nodes()).filter(|&u| g.has_edge(u, u)).count();
    let results = json!({
        "graph": summarize(&g),
        "self_loops": self_loops,
        "degree_histogram": degree_histogram(&g),
    });
    let config = json!({ "input": a.input.display().to_string(), "directed": a.directed });
    write_output(a.out.out.as_deref(), &envelope("ingest", config, results, clock)?)
}
