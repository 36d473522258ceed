//! Nagamochi–Ibaraki forest labels.
//!
//! Vertices are scanned in maximum-adjacency order (ties to the lowest
//! index). When `x` is scanned, each edge `e = xy` to an unscanned `y` takes
//! the forest indices `r(y)+1 ..= r(y)+u_e` and `r(y)` grows by `u_e`. The
//! copies with index `i` form forest `F_i`; each `F_i` is a maximal forest of
//! the graph minus `F_1 … F_{i-1}`.

use crate::error::{Error, Result};
use crate::graph::Multigraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiLabels {
    labels: Vec<u64>,
    weights: Vec<u64>,
}

impl NiLabels {
    /// `r_e` per edge, aligned with the source graph's edges. The copies of
    /// `e` occupy forests `r_e − u_e + 1 ..= r_e`.
    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    /// Forest indices held by edge number `i`.
    pub fn forests_of(&self, i: usize) -> std::ops::RangeInclusive<u64> {
        self.labels[i] - self.weights[i] + 1..=self.labels[i]
    }

    pub fn forest_count(&self) -> u64 {
        self.labels.iter().copied().max().unwrap_or(0)
    }

    /// Number of copies of edge `i` in the union of the first `k` forests.
    pub fn copies_in_first(&self, i: usize, k: u64) -> u64 {
        let first = self.labels[i] - self.weights[i];
        k.saturating_sub(first).min(self.weights[i])
    }

    /// The certificate `H_k`: multiplicities restricted to the first `k`
    /// forests, aligned with the graph's edges.
    pub fn certificate(&self, k: u64) -> Vec<u64> {
        (0..self.labels.len())
            .map(|i| self.copies_in_first(i, k))
            .collect()
    }
}

/// Labels with the default weight bound `u_e ≤ n⁶`.
pub fn ni_labels(g: &Multigraph) -> Result<NiLabels> {
    let n = g.vertex_count().max(2) as u64;
    ni_labels_with_bound(g, n.saturating_pow(6))
}

pub fn ni_labels_with_bound(g: &Multigraph, max_weight: u64) -> Result<NiLabels> {
    if let Some(e) = g.edges().iter().find(|e| e.weight > max_weight) {
        return Err(Error::domain(format!(
            "edge {} has weight {} above the NI bound {max_weight}; \
             use conductance-based sampling for heavy weights",
            e.id, e.weight
        )));
    }
    let n = g.vertex_count();
    let adj = g.adjacency();
    let mut r = vec![0u64; n];
    let mut scanned = vec![false; n];
    let mut labels = vec![0u64; g.edge_count()];
    let mut done_edge = vec![false; g.edge_count()];
    for _ in 0..n {
        let mut x = usize::MAX;
        for v in 0..n {
            if !scanned[v] && (x == usize::MAX || r[v] > r[x]) {
                x = v;
            }
        }
        scanned[x] = true;
        for &(y, i) in &adj[x] {
            if scanned[y] || done_edge[i] {
                continue;
            }
            done_edge[i] = true;
            r[y] += g.edges()[i].weight;
            labels[i] = r[y];
        }
    }
    Ok(NiLabels {
        labels,
        weights: g.edges().iter().map(|e| e.weight).collect(),
    })
}
