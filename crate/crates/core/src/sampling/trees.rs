//! Weighted uniform spanning trees (Wilson's algorithm) and sparsification
//! by unions of random trees.

use rand::Rng;

use crate::connectivity::effective_resistances;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Multigraph, Sparsifier};
use crate::rng::{substream, StreamRng};

use super::SamplingConfig;

/// Edge ids of a spanning tree, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpanningTree {
    pub edges: Vec<EdgeId>,
}

/// Precomputed transition tables for repeated tree sampling on one graph.
///
/// A tree is drawn with probability proportional to the product of its
/// edge multiplicities: loop-erased random walks rooted at vertex 0, each
/// step choosing an incident record with probability proportional to its
/// multiplicity.
#[derive(Clone, Debug)]
pub struct TreeSampler {
    /// `(neighbour, edge index)` per vertex
    adj: Vec<Vec<(usize, usize)>>,
    /// running sums of multiplicities along `adj`
    cumulative: Vec<Vec<u64>>,
    ids: Vec<EdgeId>,
}

impl TreeSampler {
    pub fn new(g: &Multigraph) -> Result<Self> {
        g.require_connected("uniform_spanning_tree")?;
        let adj = g.adjacency();
        let cumulative = adj
            .iter()
            .map(|list| {
                list.iter()
                    .scan(0u64, |acc, &(_, i)| {
                        *acc += g.edges()[i].weight;
                        Some(*acc)
                    })
                    .collect()
            })
            .collect();
        Ok(TreeSampler {
            adj,
            cumulative,
            ids: g.edges().iter().map(|e| e.id).collect(),
        })
    }

    fn step(&self, v: usize, rng: &mut StreamRng) -> (usize, usize) {
        let cum = &self.cumulative[v];
        let r = rng.random_range(0..*cum.last().expect("connected graph has no isolated vertex"));
        let slot = cum.partition_point(|&c| c <= r);
        self.adj[v][slot]
    }

    /// Edge indices (into the graph's edge list) of one random tree.
    pub fn sample_indices(&self, rng: &mut StreamRng) -> Vec<usize> {
        let n = self.adj.len();
        let mut in_tree = vec![false; n];
        let mut next: Vec<(usize, usize)> = vec![(usize::MAX, usize::MAX); n];
        in_tree[0] = true;
        let mut tree = Vec::with_capacity(n.saturating_sub(1));
        for start in 1..n {
            let mut u = start;
            while !in_tree[u] {
                next[u] = self.step(u, rng);
                u = next[u].0;
            }
            u = start;
            while !in_tree[u] {
                in_tree[u] = true;
                tree.push(next[u].1);
                u = next[u].0;
            }
        }
        tree
    }

    pub fn sample(&self, rng: &mut StreamRng) -> SpanningTree {
        let mut edges: Vec<EdgeId> = self
            .sample_indices(rng)
            .into_iter()
            .map(|i| self.ids[i])
            .collect();
        edges.sort_unstable();
        SpanningTree { edges }
    }
}

/// One weighted uniform spanning tree of `g`.
pub fn uniform_spanning_tree(g: &Multigraph, rng: &mut StreamRng) -> Result<SpanningTree> {
    Ok(TreeSampler::new(g)?.sample(rng))
}

/// Conductances and a tree sampler for one graph, reusable across runs.
#[derive(Clone, Debug)]
pub struct TreeSparsifier {
    graph: Multigraph,
    conductance: Vec<f64>,
    sampler: TreeSampler,
}

impl TreeSparsifier {
    pub fn new(g: &Multigraph) -> Result<Self> {
        let sampler = TreeSampler::new(g)?;
        let conductance = effective_resistances(g)?
            .into_iter()
            .map(|r| 1.0 / r)
            .collect();
        Ok(TreeSparsifier {
            graph: g.clone(),
            conductance,
            sampler,
        })
    }

    pub fn conductance(&self) -> &[f64] {
        &self.conductance
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    /// How many of `rho` trees contain each edge. Round `i` draws from
    /// substream `(seed, i)`.
    pub fn tree_counts(&self, rho: u64, seed: u64) -> Vec<u64> {
        let mut counts = vec![0u64; self.graph.edge_count()];
        for round in 0..rho {
            let mut rng = substream(seed, round);
            for i in self.sampler.sample_indices(&mut rng) {
                counts[i] += 1;
            }
        }
        counts
    }

    /// Sum of `rho` trees, every tree edge contributing `c_e/ρ`.
    pub fn sparsify(&self, rho: u64, seed: u64) -> Result<Sparsifier> {
        if rho == 0 {
            return Err(Error::domain("rho must be at least 1"));
        }
        let weights: Vec<f64> = self
            .tree_counts(rho, seed)
            .iter()
            .zip(&self.conductance)
            .map(|(&c, &cond)| c as f64 * cond / rho as f64)
            .collect();
        Ok(Sparsifier::from_aligned_weights(&self.graph, &weights))
    }
}

/// Union of `ρ` weighted uniform spanning trees with weights `c_e/ρ` per
/// occurrence. Conductances are computed once up front.
pub fn sparsify_by_trees(g: &Multigraph, cfg: &SamplingConfig) -> Result<Sparsifier> {
    cfg.check(g.vertex_count())?;
    TreeSparsifier::new(g)?.sparsify(cfg.rho(g.vertex_count()), cfg.seed)
}
