//! Kleinberg's directed small-world lattice.
//!
//! Nodes sit on a `√n × √n` torus, numbered row-major. Each node has arcs
//! to every node within lattice distance `p_local` and `q_long` long-range
//! arcs whose targets are drawn with probability proportional to
//! `d_ℓ(u, v)^{-r}`.
//!
//! Long-range targets are sampled through the torus distance classes: the
//! number of offsets at lattice distance `k` is the same for every node, so
//! one table of class counts gives the exact law. A draw picks a class by
//! its aggregate weight, then a uniform offset inside the class.

use rayon::prelude::*;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{invalid, GenError};
use crate::graph::{Graph, NodeId};
use crate::rng::node_stream;

/// 1-based lattice coordinates `(x, y)` in `1..=√n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeCoord {
    pub x: usize,
    pub y: usize,
}

/// Geometry of a `side × side` torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Torus {
    side: usize,
}

impl Torus {
    pub fn new(n: usize) -> Result<Self, GenError> {
        let side = (n as f64).sqrt().round() as usize;
        if n == 0 || side * side != n {
            return Err(GenError::NotPerfectSquare(n));
        }
        Ok(Torus { side })
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn num_nodes(&self) -> usize {
        self.side * self.side
    }

    pub fn coord(&self, u: NodeId) -> LatticeCoord {
        LatticeCoord { x: u % self.side + 1, y: u / self.side + 1 }
    }

    pub fn node(&self, c: LatticeCoord) -> NodeId {
        (c.y - 1) * self.side + (c.x - 1)
    }

    fn axis_gap(&self, a: usize, b: usize) -> usize {
        let d = a.abs_diff(b);
        d.min(self.side - d)
    }

    /// Periodic L1 distance.
    pub fn distance(&self, u: NodeId, v: NodeId) -> usize {
        let s = self.side;
        self.axis_gap(u % s, v % s) + self.axis_gap(u / s, v / s)
    }

    /// Node at offset `(dx, dy)` from `u`, offsets taken modulo the side.
    pub fn offset(&self, u: NodeId, dx: usize, dy: usize) -> NodeId {
        let s = self.side;
        ((u / s + dy) % s) * s + (u % s + dx) % s
    }
}

/// Periodic L1 distance between nodes `u` and `v` of the `n`-node torus.
pub fn kleinberg_lattice_distance(n: usize, u: NodeId, v: NodeId) -> Result<usize, GenError> {
    let torus = Torus::new(n)?;
    if u >= n || v >= n {
        return Err(invalid(format!("nodes ({u}, {v}) out of range for n={n}")));
    }
    Ok(torus.distance(u, v))
}

/// Offset counts per lattice distance, identical for every node.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceClasses {
    torus: Torus,
    /// Number of residues at circular distance `a` along one axis.
    axis: Vec<u64>,
    /// `counts[k]` = number of nodes at lattice distance `k` (`counts[0] = 1`).
    pub counts: Vec<u64>,
}

impl DistanceClasses {
    pub fn new(torus: Torus) -> Self {
        let s = torus.side;
        let half = s / 2;
        let axis: Vec<u64> = (0..=half).map(|a| if a == 0 || 2 * a == s { 1 } else { 2 }).collect();
        let mut counts = vec![0u64; 2 * half + 1];
        for (a, &ca) in axis.iter().enumerate() {
            for (b, &cb) in axis.iter().enumerate() {
                counts[a + b] += ca * cb;
            }
        }
        DistanceClasses { torus, axis, counts }
    }

    pub fn max_distance(&self) -> usize {
        self.counts.len() - 1
    }

    /// `Σ_{v ≠ u} d_ℓ(u, v)^{-r}`.
    pub fn normalizer(&self, r: f64) -> f64 {
        self.counts.iter().enumerate().skip(1).map(|(k, &c)| c as f64 * (k as f64).powf(-r)).sum()
    }

    /// Uniform node among those at lattice distance `k` from `u`, using the
    /// integer `index` in `0..counts[k]`.
    fn pick(&self, u: NodeId, k: usize, mut index: u64) -> NodeId {
        let half = self.axis.len() - 1;
        let s = self.torus.side;
        for a in k.saturating_sub(half)..=k.min(half) {
            let (ca, cb) = (self.axis[a], self.axis[k - a]);
            let w = ca * cb;
            if index < w {
                let (ia, ib) = (index % ca, index / ca);
                let dx = if ia == 0 { a } else { s - a };
                let dy = if ib == 0 { k - a } else { s - (k - a) };
                return self.torus.offset(u, dx % s, dy % s);
            }
            index -= w;
        }
        unreachable!("index outside distance class {k}")
    }
}

/// A Kleinberg graph with its raw long-range trials.
#[derive(Debug, Clone)]
pub struct KleinbergGraph {
    pub graph: Graph,
    pub torus: Torus,
    /// The `q_long` sampled targets of each node, repeats included.
    pub long_range: Vec<Vec<NodeId>>,
    /// `Σ_{v ≠ u} d_ℓ(u, v)^{-r}`, shared by all nodes.
    pub normalizer: f64,
    local_arcs: usize,
}

impl KleinbergGraph {
    pub fn long_range_trials(&self) -> usize {
        self.long_range.iter().map(Vec::len).sum()
    }

    pub fn self_trials(&self) -> usize {
        self.long_range.iter().enumerate().map(|(u, t)| t.iter().filter(|&&v| v == u).count()).sum()
    }

    /// Arcs contributed by long-range trials after collapsing duplicates and
    /// arcs that coincide with local arcs.
    pub fn distinct_long_range_arcs(&self) -> usize {
        self.graph.num_edges() - self.local_arcs
    }
}

fn local_targets(torus: &Torus, u: NodeId, p_local: usize) -> Vec<NodeId> {
    let s = torus.side as i64;
    let p = p_local as i64;
    let mut out = Vec::new();
    for dy in -p..=p {
        let rest = p - dy.abs();
        for dx in -rest..=rest {
            if dx == 0 && dy == 0 {
                continue;
            }
            let v = torus.offset(u, dx.rem_euclid(s) as usize, dy.rem_euclid(s) as usize);
            if v != u {
                out.push(v);
            }
        }
    }
    out
}

/// The local part of the Kleinberg graph: arcs to every node within lattice
/// distance `p_local`, no long-range contacts.
pub fn kleinberg_local_lattice(n: usize, p_local: usize) -> Result<Graph, GenError> {
    let torus = Torus::new(n)?;
    let arcs = (0..n).flat_map(|u| local_targets(&torus, u, p_local).into_iter().map(move |v| (u, v)));
    Ok(Graph::build(n, true, arcs, false)?)
}

pub fn gen_kleinberg(n: usize, r: f64, p_local: usize, q_long: usize, seed: u64) -> Result<KleinbergGraph, GenError> {
    let torus = Torus::new(n)?;
    if !(0.0..2.0).contains(&r) {
        return Err(invalid(format!("Kleinberg exponent must be in [0,2), got {r}")));
    }
    if p_local < 1 || q_long < 1 {
        return Err(invalid("Kleinberg needs p_local >= 1 and q_long >= 1"));
    }

    let classes = DistanceClasses::new(torus);
    // Class 0 (the node itself) carries weight 0^0 = 1 only when r = 0.
    let mut cumulative = Vec::with_capacity(classes.counts.len());
    let mut total = 0.0;
    for (k, &c) in classes.counts.iter().enumerate() {
        let w = match k {
            0 if r == 0.0 => 1.0,
            0 => 0.0,
            _ => c as f64 * (k as f64).powf(-r),
        };
        total += w;
        cumulative.push(total);
    }

    let long_range: Vec<Vec<NodeId>> = (0..n)
        .into_par_iter()
        .map(|u| {
            let mut rng = node_stream(seed, u);
            (0..q_long)
                .map(|_| {
                    let x = rng.random::<f64>() * total;
                    let k = cumulative.partition_point(|&c| c <= x).min(cumulative.len() - 1);
                    let index = rng.random_range(0..classes.counts[k]);
                    classes.pick(u, k, index)
                })
                .collect()
        })
        .collect();

    let mut local_arcs = 0;
    let mut arcs = Vec::with_capacity(n * (2 * p_local * (p_local + 1) + q_long));
    for u in 0..n {
        let local = local_targets(&torus, u, p_local);
        let mut distinct = local.clone();
        distinct.sort_unstable();
        distinct.dedup();
        local_arcs += distinct.len();
        arcs.extend(local.into_iter().map(|v| (u, v)));
        arcs.extend(long_range[u].iter().map(|&v| (u, v)));
    }
    let graph = Graph::build(n, true, arcs, r == 0.0)?;
    Ok(KleinbergGraph { graph, torus, long_range, normalizer: classes.normalizer(r), local_arcs })
}
