//! Link-network bias: graph construction, degree-preserving null models,
//! PageRank centrality, edge-mix tests, self-focus ratio, and top-r
//! representation curves.

mod centrality;
pub mod io;
mod null;
pub mod synth;

pub use centrality::{
    compare_models, log_r_grid, pagerank, self_focus_ratio, top_r_curve, CentralityResult,
    ModelComparison, PageRankParams, SelfFocus, Tendency, TopRCurve,
};
pub use null::{
    calibrate_small_world, generate_null, lattice_clustering, ring_degree, NullKind, NullModelSpec,
};

use serde::Serialize;

use crate::corpus::{Corpus, Group};
use crate::error::{Error, Result};
use crate::stats::{self, TestResult};
use crate::CountMode;

/// A compact directed graph over group-labeled documents.
///
/// The observed graph (from [`build_graph`]) is simple: no self-loops, no
/// duplicate edges, every node has total degree ≥ 1. Null models generated
/// by the literal shuffle definitions may contain self-loops and duplicate
/// edges; [`DirectedGraph::is_simple`] flags which contract holds.
#[derive(Debug, Clone)]
pub struct DirectedGraph {
    ids: Vec<String>,
    groups: Vec<Group>,
    edges: Vec<(u32, u32)>,
    simple: bool,
}

impl DirectedGraph {
    /// Assembles a graph from parts, validating shapes: ids and groups must
    /// match in length, groups must be M or W, edge endpoints in range.
    pub fn from_parts(
        ids: Vec<String>,
        groups: Vec<Group>,
        edges: Vec<(u32, u32)>,
        simple: bool,
    ) -> Result<Self> {
        if ids.len() != groups.len() {
            return Err(Error::InvalidInput(format!(
                "{} ids vs {} groups",
                ids.len(),
                groups.len()
            )));
        }
        if groups.iter().any(|g| !g.is_known()) {
            return Err(Error::InvalidInput("graph nodes must be group-labeled M or W".into()));
        }
        let n = ids.len() as u32;
        if edges.iter().any(|&(u, v)| u >= n || v >= n) {
            return Err(Error::InvalidInput("edge endpoint out of range".into()));
        }
        Ok(DirectedGraph { ids, groups, edges, simple })
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn groups(&self) -> &[Group] {
        &self.groups
    }

    pub fn is_simple(&self) -> bool {
        self.simple
    }

    /// (group-M nodes, group-W nodes).
    pub fn group_counts(&self) -> (usize, usize) {
        let m = self.groups.iter().filter(|g| **g == Group::M).count();
        (m, self.n() - m)
    }

    pub fn out_degrees(&self) -> Vec<u32> {
        let mut deg = vec![0u32; self.n()];
        for &(u, _) in &self.edges {
            deg[u as usize] += 1;
        }
        deg
    }

    pub fn in_degrees(&self) -> Vec<u32> {
        let mut deg = vec![0u32; self.n()];
        for &(_, v) in &self.edges {
            deg[v as usize] += 1;
        }
        deg
    }

    pub fn mean_out_degree(&self) -> f64 {
        self.edge_count() as f64 / self.n() as f64
    }

    /// Undirected projection adjacency: directions ignored, duplicate edges
    /// merged, self-loops dropped. Neighbor lists are sorted.
    pub fn undirected_adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.n()];
        for &(u, v) in &self.edges {
            if u != v {
                adj[u as usize].push(v);
                adj[v as usize].push(u);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }
}

/// Construction counts emitted by [`build_graph`].
#[derive(Debug, Clone, Serialize)]
pub struct GraphReport {
    pub n: usize,
    pub edges: usize,
    pub n_m: usize,
    pub n_w: usize,
    pub singletons_removed: usize,
    /// Links skipped because the target is dangling or not group-labeled.
    pub links_skipped: usize,
}

/// Builds the directed link graph over the corpus's group-labeled documents:
/// resolvable links become edges (already deduplicated and self-loop-free
/// after corpus normalization), then total-degree-0 nodes are removed.
pub fn build_graph(corpus: &Corpus) -> Result<(DirectedGraph, GraphReport)> {
    let mut node_of: std::collections::HashMap<&str, u32> = Default::default();
    let mut ids = Vec::new();
    let mut groups = Vec::new();
    for doc in corpus.documents() {
        if doc.group.is_known() {
            node_of.insert(doc.id.as_str(), ids.len() as u32);
            ids.push(doc.id.clone());
            groups.push(doc.group);
        }
    }
    let mut edges = Vec::new();
    let mut links_skipped = 0usize;
    for doc in corpus.documents() {
        let Some(&u) = node_of.get(doc.id.as_str()) else { continue };
        for target in &doc.links {
            match node_of.get(target.as_str()) {
                Some(&v) => edges.push((u, v)),
                None => links_skipped += 1,
            }
        }
    }

    // Drop total-degree-0 nodes and reindex.
    let mut degree = vec![0u32; ids.len()];
    for &(u, v) in &edges {
        degree[u as usize] += 1;
        degree[v as usize] += 1;
    }
    let mut remap = vec![u32::MAX; ids.len()];
    let mut kept_ids = Vec::new();
    let mut kept_groups = Vec::new();
    for i in 0..ids.len() {
        if degree[i] > 0 {
            remap[i] = kept_ids.len() as u32;
            kept_ids.push(std::mem::take(&mut ids[i]));
            kept_groups.push(groups[i]);
        }
    }
    let singletons_removed = groups.len() - kept_ids.len();
    if kept_ids.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let edges: Vec<(u32, u32)> =
        edges.into_iter().map(|(u, v)| (remap[u as usize], remap[v as usize])).collect();

    let graph = DirectedGraph::from_parts(kept_ids, kept_groups, edges, true)?;
    let (n_m, n_w) = graph.group_counts();
    let report = GraphReport {
        n: graph.n(),
        edges: graph.edge_count(),
        n_m,
        n_w,
        singletons_removed,
        links_skipped,
    };
    Ok((graph, report))
}

/// Average local clustering coefficient of the undirected projection.
/// Nodes with fewer than two neighbors contribute 0.
pub fn clustering_coefficient(graph: &DirectedGraph) -> Result<f64> {
    if graph.n() < 3 {
        return Err(Error::InvalidInput(format!(
            "clustering coefficient needs n ≥ 3 (have {})",
            graph.n()
        )));
    }
    let adj = graph.undirected_adjacency();
    let mut total = 0.0;
    for v in 0..graph.n() {
        let neighbors = &adj[v];
        let d = neighbors.len();
        if d < 2 {
            continue;
        }
        // Each edge between two neighbors is seen from both endpoints.
        let mut links = 0usize;
        for &u in neighbors {
            links += sorted_intersection_count(neighbors, &adj[u as usize]);
        }
        let links = links / 2;
        total += links as f64 / (d * (d - 1) / 2) as f64;
    }
    Ok(total / graph.n() as f64)
}

fn sorted_intersection_count(a: &[u32], b: &[u32]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Out-edge split of one source group by target group.
#[derive(Debug, Clone, Serialize)]
pub struct EdgeMixRow {
    pub source_group: Group,
    pub edges: usize,
    /// Percent of the group's out-edges landing on M / W targets; `None`
    /// when the group has no out-edges.
    pub pct_to_m: Option<f64>,
    pub pct_to_w: Option<f64>,
    /// Goodness-of-fit of the split against the node-share expectation.
    pub test: Option<TestResult>,
}

/// For each source group, the split of its out-edges by target group and a
/// chi-square goodness-of-fit against the (p_M, p_W) node shares.
pub fn edge_mix(graph: &DirectedGraph, mode: CountMode) -> Result<Vec<EdgeMixRow>> {
    let (n_m, n_w) = graph.group_counts();
    if n_m == 0 || n_w == 0 {
        return Err(Error::InvalidInput("edge_mix needs both groups present".into()));
    }
    let shares = [n_m as f64 / graph.n() as f64, n_w as f64 / graph.n() as f64];
    let mut counts = [[0usize; 2]; 2]; // [source][target], 0 = M
    for &(u, v) in graph.edges() {
        let s = usize::from(graph.groups()[u as usize] == Group::W);
        let t = usize::from(graph.groups()[v as usize] == Group::W);
        counts[s][t] += 1;
    }
    let mut rows = Vec::with_capacity(2);
    for (s, group) in [(0usize, Group::M), (1, Group::W)] {
        let total = counts[s][0] + counts[s][1];
        if total == 0 {
            rows.push(EdgeMixRow {
                source_group: group,
                edges: 0,
                pct_to_m: None,
                pct_to_w: None,
                test: None,
            });
            continue;
        }
        let pct_m = 100.0 * counts[s][0] as f64 / total as f64;
        let pct_w = 100.0 * counts[s][1] as f64 / total as f64;
        let observed = match mode {
            CountMode::Raw => [counts[s][0] as f64, counts[s][1] as f64],
            CountMode::PercentAsCounts => [pct_m, pct_w],
        };
        rows.push(EdgeMixRow {
            source_group: group,
            edges: total,
            pct_to_m: Some(pct_m),
            pct_to_w: Some(pct_w),
            test: Some(stats::chi_square_gof(&observed, &shares)?),
        });
    }
    Ok(rows)
}
