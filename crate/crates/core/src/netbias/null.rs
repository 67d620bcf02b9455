//! The five null-model constructions and the small-world rewiring
//! calibration. All generators are deterministic given (graph, seed).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::DirectedGraph;

use crate::error::{Error, Result};

/// Which null construction to generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NullKind {
    /// Every edge replaced by a uniformly random (i, j) pair.
    Random,
    /// Sources shuffled, targets fixed: preserves the in-degree sequence.
    InDegree,
    /// Targets shuffled, sources fixed: preserves the out-degree sequence.
    OutDegree,
    /// |E| double-edge swaps: preserves both degree sequences exactly.
    FullDegree,
    /// Undirected Watts–Strogatz ring with matched mean degree, each edge
    /// rewired with probability beta; projected to two directed edges.
    SmallWorld,
}

impl NullKind {
    pub const ALL: [NullKind; 5] = [
        NullKind::Random,
        NullKind::InDegree,
        NullKind::OutDegree,
        NullKind::FullDegree,
        NullKind::SmallWorld,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            NullKind::Random => "random",
            NullKind::InDegree => "in_degree",
            NullKind::OutDegree => "out_degree",
            NullKind::FullDegree => "full_degree",
            NullKind::SmallWorld => "small_world",
        }
    }
}

impl std::fmt::Display for NullKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for NullKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(NullKind::Random),
            "in_degree" => Ok(NullKind::InDegree),
            "out_degree" => Ok(NullKind::OutDegree),
            "full_degree" => Ok(NullKind::FullDegree),
            "small_world" => Ok(NullKind::SmallWorld),
            other => Err(Error::InvalidInput(format!("unknown null kind {other:?}"))),
        }
    }
}

/// Parameters of one null-model draw.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NullModelSpec {
    pub kind: NullKind,
    pub seed: u64,
    /// Small-world rewiring probability; required for `SmallWorld` unless
    /// `target_clustering` is given.
    #[serde(default)]
    pub beta: Option<f64>,
    /// Calibrate beta so the expected clustering matches this target.
    #[serde(default)]
    pub target_clustering: Option<f64>,
    /// Reject shuffle moves that would create self-loops or duplicate
    /// edges. Default false: the literal shuffle definitions keep them.
    #[serde(default)]
    pub strict: bool,
}

impl NullModelSpec {
    pub fn new(kind: NullKind, seed: u64) -> Self {
        NullModelSpec { kind, seed, beta: None, target_clustering: None, strict: false }
    }
}

/// Generates one null model. Node ids and group labels carry over
/// unchanged in every construction.
pub fn generate_null(graph: &DirectedGraph, spec: &NullModelSpec) -> Result<DirectedGraph> {
    if graph.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    if let Some(beta) = spec.beta {
        if !(0.0..=1.0).contains(&beta) {
            return Err(Error::InvalidInput(format!("beta {beta} not in [0, 1]")));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    match spec.kind {
        NullKind::Random => shuffle_endpoints(graph, spec.strict, &mut rng, Endpoint::Both),
        NullKind::InDegree => shuffle_endpoints(graph, spec.strict, &mut rng, Endpoint::Source),
        NullKind::OutDegree => shuffle_endpoints(graph, spec.strict, &mut rng, Endpoint::Target),
        NullKind::FullDegree => double_edge_swaps(graph, spec.strict, &mut rng),
        NullKind::SmallWorld => {
            let beta = match (spec.beta, spec.target_clustering) {
                (Some(b), _) => b,
                (None, Some(target)) => calibrate_small_world(graph, target)?,
                (None, None) => {
                    return Err(Error::InvalidInput(
                        "small_world needs beta or target_clustering".into(),
                    ))
                }
            };
            watts_strogatz(graph, beta, &mut rng)
        }
    }
}

enum Endpoint {
    Source,
    Target,
    Both,
}

fn shuffle_endpoints(
    graph: &DirectedGraph,
    strict: bool,
    rng: &mut ChaCha8Rng,
    which: Endpoint,
) -> Result<DirectedGraph> {
    let n = graph.n() as u32;
    let mut edges = Vec::with_capacity(graph.edge_count());
    let mut seen: std::collections::HashSet<(u32, u32)> =
        if strict { std::collections::HashSet::with_capacity(graph.edge_count()) } else { Default::default() };
    for &(u, v) in graph.edges() {
        let mut attempts = 0;
        let edge = loop {
            let candidate = match which {
                Endpoint::Source => (rng.gen_range(0..n), v),
                Endpoint::Target => (u, rng.gen_range(0..n)),
                Endpoint::Both => (rng.gen_range(0..n), rng.gen_range(0..n)),
            };
            if !strict || (candidate.0 != candidate.1 && !seen.contains(&candidate)) {
                break candidate;
            }
            attempts += 1;
            if attempts > 10_000 {
                return Err(Error::InvalidInput(
                    "strict shuffle could not place an edge without collisions".into(),
                ));
            }
        };
        if strict {
            seen.insert(edge);
        }
        edges.push(edge);
    }
    DirectedGraph::from_parts(graph.ids().to_vec(), graph.groups().to_vec(), edges, strict)
}

/// |E| double-edge swaps ((u,v),(i,j)) → ((u,j),(i,v)). Every node's in-
/// and out-degree is preserved exactly, swap by swap.
fn double_edge_swaps(
    graph: &DirectedGraph,
    strict: bool,
    rng: &mut ChaCha8Rng,
) -> Result<DirectedGraph> {
    let mut edges: Vec<(u32, u32)> = graph.edges().to_vec();
    let m = edges.len();
    if m < 2 {
        return DirectedGraph::from_parts(
            graph.ids().to_vec(),
            graph.groups().to_vec(),
            edges,
            graph.is_simple(),
        );
    }
    let mut seen: std::collections::HashSet<(u32, u32)> = if strict {
        edges.iter().copied().collect()
    } else {
        Default::default()
    };
    let mut performed = 0usize;
    let mut attempts = 0usize;
    let max_attempts = 200 * m;
    while performed < m && attempts < max_attempts {
        attempts += 1;
        let a = rng.gen_range(0..m);
        let mut b = rng.gen_range(0..m);
        while b == a {
            b = rng.gen_range(0..m);
        }
        let (u, v) = edges[a];
        let (i, j) = edges[b];
        let (e1, e2) = ((u, j), (i, v));
        if strict {
            let self_loop = e1.0 == e1.1 || e2.0 == e2.1;
            let dup = seen.contains(&e1) || seen.contains(&e2) || e1 == e2;
            if self_loop || dup {
                continue;
            }
            seen.remove(&(u, v));
            seen.remove(&(i, j));
            seen.insert(e1);
            seen.insert(e2);
        }
        edges[a] = e1;
        edges[b] = e2;
        performed += 1;
    }
    DirectedGraph::from_parts(graph.ids().to_vec(), graph.groups().to_vec(), edges, strict)
}

/// Even ring degree matched to the graph's mean out-degree (ties round up,
/// floor 2).
pub fn ring_degree(graph: &DirectedGraph) -> usize {
    let k = 2.0 * (graph.mean_out_degree() / 2.0).round();
    (k as usize).max(2)
}

/// Clustering coefficient of the beta = 0 ring lattice with even degree k:
/// C(0) = 3(k−2) / (4(k−1)).
pub fn lattice_clustering(k: usize) -> f64 {
    assert!(k >= 2 && k % 2 == 0, "ring degree must be even and ≥ 2");
    3.0 * (k as f64 - 2.0) / (4.0 * (k as f64 - 1.0))
}

/// Solves C(0)·(1−β)³ = target for β ∈ [0, 1] with Brent root finding,
/// using the analytic Watts–Strogatz clustering approximation. The ring
/// degree comes from the graph's mean degree via [`ring_degree`].
pub fn calibrate_small_world(graph: &DirectedGraph, target_clustering: f64) -> Result<f64> {
    let k = ring_degree(graph);
    let c0 = lattice_clustering(k);
    if !(target_clustering > 0.0 && target_clustering <= c0) {
        return Err(Error::InvalidInput(format!(
            "target clustering {target_clustering} outside (0, {c0}] for ring degree {k}"
        )));
    }
    let f = |beta: f64| c0 * (1.0 - beta).powi(3) - target_clustering;
    brent_root(f, 0.0, 1.0, 1e-12)
}

/// Brent's method on a bracketing interval [a, b] with f(a)·f(b) ≤ 0.
fn brent_root(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> Result<f64> {
    let mut fa = f(a);
    let mut fb = f(b);
    if fa * fb > 0.0 {
        return Err(Error::InvalidInput("brent: root not bracketed".into()));
    }
    if fa.abs() < fb.abs() {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut fa, &mut fb);
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..200 {
        if fb == 0.0 {
            return Ok(b);
        }
        if fa.abs() < fb.abs() {
            std::mem::swap(&mut a, &mut b);
            std::mem::swap(&mut fa, &mut fb);
            c = a;
            fc = fa;
        }
        let m = 0.5 * (c - b);
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        if m.abs() <= tol1 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // Inverse quadratic interpolation / secant step.
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                (2.0 * m * s, 1.0 - s)
            } else {
                let q0 = fa / fc;
                let r = fb / fc;
                (
                    s * (2.0 * m * q0 * (q0 - r) - (b - a) * (r - 1.0)),
                    (q0 - 1.0) * (r - 1.0) * (s - 1.0),
                )
            };
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            if 2.0 * p < (3.0 * m * q - (tol1 * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1 * m.signum() };
        fb = f(b);
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    Ok(b)
}

/// Undirected Watts–Strogatz ring over the same node set, projected to a
/// directed graph with one edge per direction. Rewiring avoids self-loops
/// and duplicate neighbors (an edge stays in place when no target is free).
fn watts_strogatz(
    graph: &DirectedGraph,
    beta: f64,
    rng: &mut ChaCha8Rng,
) -> Result<DirectedGraph> {
    let n = graph.n();
    let k = ring_degree(graph);
    if n <= k {
        return Err(Error::InvalidInput(format!(
            "small_world needs more nodes ({n}) than ring degree ({k})"
        )));
    }
    let mut neighbors: Vec<std::collections::BTreeSet<u32>> = vec![Default::default(); n];
    let add = |nb: &mut Vec<std::collections::BTreeSet<u32>>, u: usize, v: usize| {
        nb[u].insert(v as u32);
        nb[v].insert(u as u32);
    };
    for u in 0..n {
        for j in 1..=(k / 2) {
            add(&mut neighbors, u, (u + j) % n);
        }
    }
    for j in 1..=(k / 2) {
        for u in 0..n {
            if rng.gen::<f64>() >= beta {
                continue;
            }
            let v = ((u + j) % n) as u32;
            // Pick a replacement target that keeps the graph simple.
            let mut w = rng.gen_range(0..n as u32);
            let mut tries = 0;
            while w as usize == u || neighbors[u].contains(&w) {
                w = rng.gen_range(0..n as u32);
                tries += 1;
                if tries > 10 * n {
                    break;
                }
            }
            if w as usize == u || neighbors[u].contains(&w) {
                continue; // node saturated, keep the ring edge
            }
            neighbors[u].remove(&v);
            neighbors[v as usize].remove(&(u as u32));
            neighbors[u].insert(w);
            neighbors[w as usize].insert(u as u32);
        }
    }
    let mut edges = Vec::with_capacity(n * k);
    for (u, nb) in neighbors.iter().enumerate() {
        for &v in nb {
            edges.push((u as u32, v));
        }
    }
    DirectedGraph::from_parts(graph.ids().to_vec(), graph.groups().to_vec(), edges, true)
}
