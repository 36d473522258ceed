//! Monte-Carlo run of tree sparsification on the tree lower-bound family.

use serde::Serialize;

use super::analytic::tree_lb_probability;
use crate::error::{Error, Result};
use crate::generators::{generate, tree_lb_u, tree_lb_v, GraphFamily};
use crate::graph::{Multigraph, Sparsifier};
use crate::rng::derive_seed;
use crate::sampling::TreeSparsifier;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TreeLbReport {
    pub n: usize,
    pub k: u64,
    pub rho: u64,
    pub trials: u64,
    /// Trials in which some position had its heavy edge in none of the trees.
    pub all_light_trials: u64,
    pub empirical_p: f64,
    pub analytic_p: f64,
    /// Binomial standard error at the analytic `p`.
    pub sigma: f64,
    pub within_3sigma: bool,
    /// `(2k+1)/(k+1)`
    pub expected_witness_weight: f64,
    /// `k + 1`
    pub true_cut_weight: f64,
    /// Smallest and largest sparsifier weight of the witness cut over the
    /// all-light trials (NaN if there were none).
    pub witness_weight_min: f64,
    pub witness_weight_max: f64,
    /// Every all-light trial's witness cut had exactly the expected weight.
    pub witness_exact: bool,
    /// Smallest `w(δ(S)) / u(δ(S))` over witness cuts.
    pub worst_ratio: f64,
}

/// Sparsifier weight of the witness cut `{v_1..v_i, u_1..u_{i−1}}` at the
/// first all-light position, or `None` when every position kept its heavy
/// edge.
fn witness(g: &Multigraph, n: usize, sp: &Sparsifier, heavy: &[u64]) -> Option<f64> {
    let i = heavy.iter().position(|&id| sp.weight_of(id) == 0.0)? + 1;
    let mut side = vec![false; g.vertex_count()];
    for j in 1..=i {
        side[tree_lb_v(j)] = true;
    }
    for j in 1..i {
        side[tree_lb_u(n, j)] = true;
    }
    Some(
        sp.edges()
            .iter()
            .filter(|e| side[e.a] != side[e.b])
            .map(|e| e.weight)
            .sum(),
    )
}

/// Builds `tree-lower-bound(n, k)` and samples `trials` independent
/// `ρ`-tree sparsifiers. Trial `t` uses seed `derive_seed(seed, t)`.
pub fn tree_lb_experiment(
    n: usize,
    k: u64,
    rho: u64,
    trials: u64,
    seed: u64,
) -> Result<TreeLbReport> {
    if n > 200 || trials > 1_000_000 || trials == 0 || rho == 0 {
        return Err(Error::domain(
            "tree_lb_experiment needs n <= 200, 1 <= trials <= 10^6 and rho >= 1",
        ));
    }
    let g = generate(&GraphFamily::TreeLowerBound { n, k }, 0)?;
    let heavy: Vec<u64> = (1..=n)
        .map(|i| {
            let (a, b) = (tree_lb_v(i), tree_lb_v(i + 1));
            g.edges()
                .iter()
                .find(|e| (e.a, e.b) == (a, b) || (e.a, e.b) == (b, a))
                .map(|e| e.id)
                .ok_or_else(|| Error::internal("tree-lower-bound graph lacks a heavy edge"))
        })
        .collect::<Result<_>>()?;
    let ts = TreeSparsifier::new(&g)?;
    let run = |t: u64| -> Result<Option<f64>> {
        let sp = ts.sparsify(rho, derive_seed(seed, t))?;
        Ok(witness(&g, n, &sp, &heavy))
    };
    #[cfg(feature = "parallel")]
    let outcomes: Vec<Option<f64>> = {
        use rayon::prelude::*;
        (0..trials)
            .into_par_iter()
            .map(run)
            .collect::<Result<_>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let outcomes: Vec<Option<f64>> = (0..trials).map(run).collect::<Result<_>>()?;

    let kf = k as f64;
    let expected = (2.0 * kf + 1.0) / (kf + 1.0);
    let true_w = kf + 1.0;
    let witnessed: Vec<f64> = outcomes.into_iter().flatten().collect();
    let hits = witnessed.len() as u64;
    let p_hat = hits as f64 / trials as f64;
    let p = tree_lb_probability(n as f64, kf, rho as f64)?;
    let sigma = (p * (1.0 - p) / trials as f64).sqrt();
    let lo = witnessed.iter().copied().fold(f64::NAN, f64::min);
    let hi = witnessed.iter().copied().fold(f64::NAN, f64::max);
    Ok(TreeLbReport {
        n,
        k,
        rho,
        trials,
        all_light_trials: hits,
        empirical_p: p_hat,
        analytic_p: p,
        sigma,
        within_3sigma: (p_hat - p).abs() <= 3.0 * sigma,
        expected_witness_weight: expected,
        true_cut_weight: true_w,
        witness_weight_min: lo,
        witness_weight_max: hi,
        witness_exact: witnessed
            .iter()
            .all(|w| (w - expected).abs() <= 1e-9 * expected),
        worst_ratio: lo / true_w,
    })
}
