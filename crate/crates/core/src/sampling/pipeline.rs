//! Three chained sampling stages, each run at `ε/4`:
//!
//! 1. `κ` = Nagamochi–Ibaraki labels of the input;
//! 2. `κ` = recursive connectivity estimates of the stage-1 output;
//! 3. `κ` = exact strengths of the stage-2 output (skipped above the
//!    strength oracle's vertex limit).
//!
//! Stage outputs have real weights; before re-estimation they are scaled by
//! `precision` and rounded to integer multiplicities, which perturbs any cut
//! by less than `m / precision` in original units.

use serde::Serialize;

use crate::connectivity::{
    connectivity_estimation, edge_strength_exact, KappaAssignment, KappaSource,
    STRENGTH_ORACLE_LIMIT,
};
use crate::error::{Error, Result};
use crate::graph::{Multigraph, Sparsifier};
use crate::rng::derive_seed;

use super::{expected_size_bound, sparsify, SamplingConfig};

/// Default integer scaling applied between stages.
pub const PIPELINE_PRECISION: f64 = (1u64 << 20) as f64;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StageReport {
    pub stage: usize,
    pub kappa: KappaSource,
    pub epsilon: f64,
    pub rho: u64,
    pub seed: u64,
    pub edge_count: usize,
    pub expected_size_bound: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineOutput {
    pub sparsifier: Sparsifier,
    pub stages: Vec<StageReport>,
    pub warnings: Vec<String>,
}

/// Applies `estimate` to every connected component with at least one edge
/// and assembles one assignment for the whole graph.
fn per_component(
    g: &Multigraph,
    source: KappaSource,
    estimate: impl Fn(&Multigraph) -> Result<Vec<f64>>,
) -> Result<KappaAssignment> {
    let (count, labels) = g.components();
    if count == 1 {
        return KappaAssignment::new(g, source, estimate(g)?);
    }
    let mut values = vec![0.0; g.edge_count()];
    for c in 0..count {
        let verts: Vec<usize> = (0..g.vertex_count()).filter(|&v| labels[v] == c).collect();
        let piece = g.induced_subgraph(&verts);
        if piece.edge_count() == 0 {
            continue;
        }
        for (e, k) in piece.edges().iter().zip(estimate(&piece)?) {
            values[g.edge_index(e.id).expect("piece edges come from g")] = k;
        }
    }
    KappaAssignment::new(g, source, values)
}

pub fn sparsify_pipeline(
    g: &Multigraph,
    cfg: &SamplingConfig,
    precision: f64,
) -> Result<PipelineOutput> {
    let n = g.vertex_count();
    if cfg.epsilon < 4.0 / n as f64 {
        return Err(Error::domain(format!(
            "pipeline requires epsilon >= 4/n = {}",
            4.0 / n as f64
        )));
    }
    if !(precision >= 1.0) {
        return Err(Error::domain("precision factor must be at least 1"));
    }
    let stage_cfg = |stage: u64| SamplingConfig {
        epsilon: cfg.epsilon / 4.0,
        seed: derive_seed(cfg.seed, stage),
        ..*cfg
    };
    let mut stages = Vec::new();
    let mut warnings = Vec::new();
    let mut record = |stage: usize,
                      h: &Multigraph,
                      kappa: &KappaAssignment,
                      c: &SamplingConfig,
                      sp: &Sparsifier| {
        stages.push(StageReport {
            stage,
            kappa: kappa.source(),
            epsilon: c.epsilon,
            rho: c.rho(n),
            seed: c.seed,
            edge_count: sp.edge_count(),
            expected_size_bound: expected_size_bound(h, kappa, c),
        });
    };

    let c1 = stage_cfg(1);
    let kappa1 = KappaAssignment::compute(g, KappaSource::NiLabel)?;
    let s1 = sparsify(g, &kappa1, &c1)?;
    record(1, g, &kappa1, &c1, &s1);

    let c2 = stage_cfg(2);
    let h1 = s1.to_scaled_multigraph(precision)?;
    let kappa2 = per_component(&h1, KappaSource::Connest, |piece| {
        Ok(connectivity_estimation(piece)?.values().to_vec())
    })?;
    let s2 = sparsify(&h1, &kappa2, &c2)?;
    record(2, &h1, &kappa2, &c2, &s2);
    let s2 = s2.scaled(1.0 / precision);

    let out = if n <= STRENGTH_ORACLE_LIMIT {
        let c3 = stage_cfg(3);
        let h2 = s2.to_scaled_multigraph(precision)?;
        let kappa3 = per_component(&h2, KappaSource::ExactStrength, |piece| {
            Ok(edge_strength_exact(piece)?
                .into_iter()
                .map(|k| k as f64)
                .collect())
        })?;
        let s3 = sparsify(&h2, &kappa3, &c3)?;
        record(3, &h2, &kappa3, &c3, &s3);
        s3.scaled(1.0 / precision)
    } else {
        warnings.push(format!(
            "stage 3 skipped: n = {n} exceeds the strength oracle limit {STRENGTH_ORACLE_LIMIT}"
        ));
        s2
    };
    Ok(PipelineOutput {
        sparsifier: out,
        stages,
        warnings,
    })
}
