//! Sparsification by independent edge sampling, by random spanning trees,
//! and the three-stage chained pipeline.

mod pipeline;
mod trees;

use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

pub use pipeline::{sparsify_pipeline, PipelineOutput, StageReport, PIPELINE_PRECISION};
pub use trees::{
    sparsify_by_trees, uniform_spanning_tree, SpanningTree, TreeSampler, TreeSparsifier,
};

use crate::connectivity::KappaAssignment;
use crate::error::{Error, Result};
use crate::graph::{Multigraph, Sparsifier};
use crate::rng::substream;

/// Default `d` in `ρ = ⌈d · log₂²n / ε²⌉`, calibrated on the small corpus
/// at `ε = 0.4`.
pub const DEFAULT_D: f64 = 1.25;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplingConfig {
    pub epsilon: f64,
    pub d_constant: f64,
    pub rho_override: Option<u64>,
    pub seed: u64,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig {
            epsilon: 0.5,
            d_constant: DEFAULT_D,
            rho_override: None,
            seed: 0,
        }
    }
}

impl SamplingConfig {
    pub fn new(epsilon: f64) -> Self {
        SamplingConfig {
            epsilon,
            ..Default::default()
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_rho(mut self, rho: u64) -> Self {
        self.rho_override = Some(rho);
        self
    }

    pub fn with_d(mut self, d: f64) -> Self {
        self.d_constant = d;
        self
    }

    /// Number of sampling rounds for an `n`-vertex graph.
    pub fn rho(&self, n: usize) -> u64 {
        if let Some(r) = self.rho_override {
            return r.max(1);
        }
        let lg = (n.max(2) as f64).log2();
        ((self.d_constant * lg * lg / (self.epsilon * self.epsilon)).ceil() as u64).max(1)
    }

    /// `ε ∈ (0, 1]` and `ε ≥ 1/n`; smaller ε gives no guarantee beyond the
    /// input graph itself.
    pub fn check(&self, n: usize) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon <= 1.0) {
            return Err(Error::domain(format!(
                "epsilon must lie in (0, 1], got {}",
                self.epsilon
            )));
        }
        if self.epsilon < 1.0 / n as f64 {
            return Err(Error::domain(format!(
                "epsilon {} < 1/n = {}: the cut-preservation guarantee requires epsilon >= 1/n",
                self.epsilon,
                1.0 / n as f64
            )));
        }
        if !(self.d_constant > 0.0) {
            return Err(Error::domain("d must be positive"));
        }
        Ok(())
    }
}

/// Samples every copy of every edge in each of `ρ` rounds with probability
/// `p_e = 1/κ_e` (clamped to 1), giving each sampled copy weight `κ_e/ρ`.
/// The `ρ·u_e` Bernoulli trials of an edge are drawn as one binomial count.
pub fn sparsify(
    g: &Multigraph,
    kappa: &KappaAssignment,
    cfg: &SamplingConfig,
) -> Result<Sparsifier> {
    cfg.check(g.vertex_count())?;
    kappa.check_matches(g)?;
    let rho = cfg.rho(g.vertex_count());
    let mut rng = substream(cfg.seed, 0);
    let mut weights = Vec::with_capacity(g.edge_count());
    for (e, &k) in g.edges().iter().zip(kappa.values()) {
        let k = k.max(1.0);
        let trials = rho
            .checked_mul(e.weight)
            .ok_or_else(|| Error::domain(format!("rho * u_e overflows on edge {}", e.id)))?;
        let count = if k <= 1.0 {
            trials
        } else {
            Binomial::new(trials, 1.0 / k)
                .map_err(|err| Error::internal(format!("binomial: {err}")))?
                .sample(&mut rng)
        };
        weights.push(count as f64 * k / rho as f64);
    }
    Ok(Sparsifier::from_aligned_weights(g, &weights))
}

/// `ρ · Σ_e u_e/κ_e`: expected number of sampled copies, the main term of
/// the size bound.
pub fn expected_size_bound(g: &Multigraph, kappa: &KappaAssignment, cfg: &SamplingConfig) -> f64 {
    let rho = cfg.rho(g.vertex_count()) as f64;
    g.edges()
        .iter()
        .zip(kappa.values())
        .map(|(e, &k)| rho * e.weight as f64 / k)
        .sum::<f64>()
}
