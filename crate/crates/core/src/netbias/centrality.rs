//! PageRank power iteration and the centrality-bias measures built on it.

use serde::Serialize;

use super::DirectedGraph;
use crate::corpus::Group;
use crate::error::{Error, Result};
use crate::stats;

/// Power-iteration parameters.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PageRankParams {
    pub damping: f64,
    /// L1 residual below which iteration stops.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for PageRankParams {
    fn default() -> Self {
        PageRankParams { damping: 0.85, tol: 1e-10, max_iter: 200 }
    }
}

/// Converged PageRank vector.
#[derive(Debug, Clone, Serialize)]
pub struct CentralityResult {
    pub pagerank: Vec<f64>,
    pub damping: f64,
    pub iterations: usize,
    pub residual: f64,
}

/// Power iteration with uniform teleportation; dangling-node mass is
/// redistributed uniformly. Parallel edges contribute multiply, as the
/// shuffle null models require.
pub fn pagerank(graph: &DirectedGraph, params: &PageRankParams) -> Result<CentralityResult> {
    if !(params.damping > 0.0 && params.damping < 1.0) {
        return Err(Error::InvalidInput(format!("damping {} not in (0, 1)", params.damping)));
    }
    if params.tol <= 0.0 {
        return Err(Error::InvalidInput("tol must be positive".into()));
    }
    let n = graph.n();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let d = params.damping;
    let out_deg = graph.out_degrees();
    let inv_out: Vec<f64> =
        out_deg.iter().map(|&k| if k > 0 { 1.0 / k as f64 } else { 0.0 }).collect();
    let mut rank = vec![1.0 / n as f64; n];
    let mut next = vec![0.0; n];
    let mut residual = f64::INFINITY;

    for iteration in 1..=params.max_iter {
        let dangling: f64 = rank
            .iter()
            .zip(&out_deg)
            .filter(|(_, &k)| k == 0)
            .map(|(r, _)| *r)
            .sum();
        let base = (1.0 - d) / n as f64 + d * dangling / n as f64;
        next.iter_mut().for_each(|x| *x = base);
        for &(u, v) in graph.edges() {
            next[v as usize] += d * rank[u as usize] * inv_out[u as usize];
        }
        residual = rank.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut rank, &mut next);
        if residual < params.tol {
            return Ok(CentralityResult {
                pagerank: rank,
                damping: d,
                iterations: iteration,
                residual,
            });
        }
    }
    Err(Error::NonConvergence { iterations: params.max_iter, residual })
}

/// Group centrality-mass ratio.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SelfFocus {
    /// Σ PageRank over M nodes ÷ Σ PageRank over W nodes; infinite when the
    /// W mass is zero.
    pub sfr: f64,
    /// Node-share baseline n_M / n_W an unbiased graph concentrates around.
    pub baseline: f64,
}

pub fn self_focus_ratio(graph: &DirectedGraph, centrality: &CentralityResult) -> Result<SelfFocus> {
    if centrality.pagerank.len() != graph.n() {
        return Err(Error::InvalidInput(format!(
            "centrality has {} entries for a graph of {} nodes",
            centrality.pagerank.len(),
            graph.n()
        )));
    }
    let mut mass = [0.0f64; 2];
    for (value, group) in centrality.pagerank.iter().zip(graph.groups()) {
        mass[usize::from(*group == Group::W)] += value;
    }
    let (n_m, n_w) = graph.group_counts();
    let sfr = if mass[1] > 0.0 { mass[0] / mass[1] } else { f64::INFINITY };
    let baseline = if n_w > 0 { n_m as f64 / n_w as f64 } else { f64::INFINITY };
    Ok(SelfFocus { sfr, baseline })
}

/// The fraction of W nodes among the top-r nodes by PageRank, per requested
/// r. Ties in PageRank break by ascending node index (insertion order), so
/// rankings are deterministic.
pub fn top_r_curve(
    graph: &DirectedGraph,
    centrality: &CentralityResult,
    r_values: &[usize],
) -> Result<Vec<(usize, f64)>> {
    let n = graph.n();
    if centrality.pagerank.len() != n {
        return Err(Error::InvalidInput("centrality does not match graph".into()));
    }
    if let Some(&bad) = r_values.iter().find(|&&r| r < 1 || r > n) {
        return Err(Error::InvalidInput(format!("r = {bad} outside [1, {n}]")));
    }
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_by(|&a, &b| {
        centrality.pagerank[b as usize]
            .partial_cmp(&centrality.pagerank[a as usize])
            .unwrap()
            .then_with(|| a.cmp(&b))
    });
    let mut cumulative_w = vec![0usize; n + 1];
    for (pos, &node) in order.iter().enumerate() {
        cumulative_w[pos + 1] =
            cumulative_w[pos] + usize::from(graph.groups()[node as usize] == Group::W);
    }
    Ok(r_values.iter().map(|&r| (r, cumulative_w[r] as f64 / r as f64)).collect())
}

/// A named top-r curve, the unit [`compare_models`] works on.
#[derive(Debug, Clone, Serialize)]
pub struct TopRCurve {
    pub model: String,
    pub points: Vec<(usize, f64)>,
}

impl TopRCurve {
    pub fn new(model: impl Into<String>, points: Vec<(usize, f64)>) -> Self {
        TopRCurve { model: model.into(), points }
    }

    fn grid(&self) -> Vec<usize> {
        self.points.iter().map(|&(r, _)| r).collect()
    }

    fn fractions(&self) -> Vec<f64> {
        self.points.iter().map(|&(_, f)| f).collect()
    }
}

/// Where the observed curve sits relative to a null curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Tendency {
    ObservedLower,
    ObservedHigher,
    Indistinct,
}

/// One observed-vs-null comparison.
#[derive(Debug, Clone, Serialize)]
pub struct ModelComparison {
    pub model: String,
    pub u: f64,
    pub z: f64,
    pub p_raw: f64,
    /// Holm-Šidák adjusted across all comparisons of the call.
    pub p_adjusted: f64,
    pub tendency: Tendency,
}

/// Mann-Whitney U between the observed fraction series and each null's
/// series over an identical r grid, Holm-Šidák corrected across the nulls.
pub fn compare_models(
    observed: &TopRCurve,
    nulls: &[TopRCurve],
) -> Result<Vec<ModelComparison>> {
    if nulls.is_empty() {
        return Err(Error::InvalidInput("compare_models needs at least one null curve".into()));
    }
    let grid = observed.grid();
    if grid.is_empty() {
        return Err(Error::InvalidInput("compare_models needs a nonempty grid".into()));
    }
    for null in nulls {
        if null.grid() != grid {
            return Err(Error::MismatchedGrids);
        }
    }
    let observed_fractions = observed.fractions();
    let mut rows = Vec::with_capacity(nulls.len());
    for null in nulls {
        let mw = stats::mann_whitney(&observed_fractions, &null.fractions())?;
        let tendency = if mw.z > 0.0 {
            Tendency::ObservedHigher
        } else if mw.z < 0.0 {
            Tendency::ObservedLower
        } else {
            Tendency::Indistinct
        };
        rows.push(ModelComparison {
            model: null.model.clone(),
            u: mw.u1,
            z: mw.z,
            p_raw: mw.p_value,
            p_adjusted: f64::NAN,
            tendency,
        });
    }
    let adjusted = stats::holm_sidak(&rows.iter().map(|r| r.p_raw).collect::<Vec<_>>());
    for (row, adj) in rows.iter_mut().zip(adjusted) {
        row.p_adjusted = adj;
    }
    Ok(rows)
}

/// Log-spaced r grid from 10 to n (both included when n ≥ 10), about
/// `points_per_decade` values per decade.
pub fn log_r_grid(n: usize, points_per_decade: usize) -> Vec<usize> {
    if n < 10 {
        return vec![n.max(1)];
    }
    let per_decade = points_per_decade.max(1) as f64;
    let mut grid = Vec::new();
    let mut exponent = 1.0;
    let top = (n as f64).log10();
    while exponent < top {
        let r = 10f64.powf(exponent).round() as usize;
        grid.push(r.min(n));
        exponent += 1.0 / per_decade;
    }
    grid.push(n);
    grid.sort_unstable();
    grid.dedup();
    grid
}
