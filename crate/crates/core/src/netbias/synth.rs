//! Synthetic graph generators for baselines and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::DirectedGraph;
use crate::corpus::Group;

fn labels(n: usize, w_share: f64, rng: &mut ChaCha8Rng) -> Vec<Group> {
    let n_w = (w_share * n as f64).round() as usize;
    let mut groups = vec![Group::M; n];
    // Random W positions via partial Fisher-Yates over node indices.
    let mut indices: Vec<usize> = (0..n).collect();
    for i in 0..n_w.min(n) {
        let j = rng.gen_range(i..n);
        indices.swap(i, j);
        groups[indices[i]] = Group::W;
    }
    groups
}

fn ids(n: usize) -> Vec<String> {
    let width = (n.max(2) as f64).log10().ceil() as usize + 1;
    (0..n).map(|i| format!("n{i:0width$}")).collect()
}

/// A simple uniform random directed graph with `m` edges and a `w_share`
/// fraction of W labels assigned at random. Deterministic in `seed`.
pub fn random_directed(n: usize, m: usize, w_share: f64, seed: u64) -> DirectedGraph {
    assert!(n >= 2, "need at least two nodes");
    assert!(m <= n * (n - 1) / 2, "too many edges for a simple graph");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let groups = labels(n, w_share, &mut rng);
    let mut seen = std::collections::HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let u = rng.gen_range(0..n as u32);
        let v = rng.gen_range(0..n as u32);
        if u != v && seen.insert((u, v)) {
            edges.push((u, v));
        }
    }
    DirectedGraph::from_parts(ids(n), groups, edges, true).expect("generator invariants")
}

/// A random directed graph where edges out of M nodes prefer M targets with
/// the given weight (weight 2 oversamples M→M edges 2× in odds relative to
/// the node shares). Edges out of W nodes pick targets uniformly.
pub fn planted_bias(
    n: usize,
    m: usize,
    w_share: f64,
    mm_weight: f64,
    seed: u64,
) -> DirectedGraph {
    assert!(n >= 2 && mm_weight >= 1.0);
    assert!(m <= n * (n - 1) / 2, "too many edges for a simple graph");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let groups = labels(n, w_share, &mut rng);
    let mut seen = std::collections::HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let u = rng.gen_range(0..n as u32);
        let v = loop {
            let candidate = rng.gen_range(0..n as u32);
            if groups[u as usize] == Group::W {
                break candidate;
            }
            // Rejection sampling: M targets weight mm_weight, W targets 1.
            let weight =
                if groups[candidate as usize] == Group::M { mm_weight } else { 1.0 };
            if rng.gen::<f64>() < weight / mm_weight {
                break candidate;
            }
        };
        if u != v && seen.insert((u, v)) {
            edges.push((u, v));
        }
    }
    DirectedGraph::from_parts(ids(n), groups, edges, true).expect("generator invariants")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::CountMode;

    #[test]
    fn random_directed_is_simple_and_deterministic() {
        let a = random_directed(200, 600, 0.155, 5);
        let b = random_directed(200, 600, 0.155, 5);
        assert_eq!(a.edges(), b.edges());
        assert_eq!(a.groups(), b.groups());
        assert_eq!(a.edge_count(), 600);
        let mut seen = std::collections::HashSet::new();
        for &(u, v) in a.edges() {
            assert_ne!(u, v);
            assert!(seen.insert((u, v)));
        }
        let (_, n_w) = a.group_counts();
        assert_eq!(n_w, 31); // round(0.155·200)
    }

    #[test]
    fn planted_bias_oversamples_mm_edges() {
        let g = planted_bias(2000, 12_000, 0.155, 2.0, 8);
        let rows = crate::netbias::edge_mix(&g, CountMode::Raw).unwrap();
        let m_row = rows.iter().find(|r| r.source_group == Group::M).unwrap();
        let (n_m, n_w) = g.group_counts();
        let p_m = n_m as f64 / g.n() as f64;
        // Expected M-target share for M sources: 2p_M / (2p_M + p_W).
        let expected = 2.0 * p_m / (2.0 * p_m + n_w as f64 / g.n() as f64);
        let got = m_row.pct_to_m.unwrap() / 100.0;
        assert!((got - expected).abs() < 0.02, "{got} vs {expected}");
    }
}
