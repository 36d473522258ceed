//! Brute-force verification of sparsifiers and of the cut-counting bounds,
//! plus the analytic functions used by the concentration arguments.

mod analytic;
mod classes;
mod enumerate;
mod treelb;

use rand::Rng;
use serde::Serialize;

pub use analytic::{chernoff_bounds, g_fn, g_inv, h_fn, tree_lb_probability, ChernoffBounds};
pub use classes::{
    bad_event_flags, bad_event_flags_with_q, claim_bad_event_bound, concentrate_holds, connectivity_classes,
    count_cut_induced_sets, cut_class_error_decomposition, cut_induced_sets, proof_threshold,
    q_value, BadEventFlags, BlackEdgeSet, ConnectivityClasses, CutInducedSet,
};
pub use enumerate::{enumerate_cuts, enumeration_cap, CutIter, DEFAULT_ENUM_CAP};
pub use treelb::{tree_lb_experiment, TreeLbReport};

pub(crate) use enumerate::{check_enumerable, walk_cuts};

use crate::connectivity::global_min_cut;
use crate::error::{Error, Result};
use crate::graph::{Multigraph, Sparsifier, VertexCut};
use crate::rng::substream;

/// Random subsets inspected by sampled verification.
pub const SAMPLED_SUBSETS: usize = 10_000;

/// Per-class contribution to the error of one cut `C`: `|C ∩ E_i|` and the
/// sampled weight `X_{C ∩ E_i}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassDeviation {
    pub class: u32,
    pub true_weight: f64,
    pub sampled_weight: f64,
    pub deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErrorReport {
    /// `max |u(δ(S)) − w(δ(S))| / u(δ(S))` over the inspected cuts.
    pub max_relative_error: f64,
    /// Members of the maximising `S`.
    pub argmax: Vec<usize>,
    pub argmax_true_weight: f64,
    pub argmax_sampled_weight: f64,
    pub cuts_inspected: u64,
    /// True when only a sampled family of cuts was inspected.
    pub sampled: bool,
    /// Filled by [`cut_class_error_decomposition`].
    pub class_deviations: Vec<ClassDeviation>,
}

impl ErrorReport {
    fn empty(sampled: bool) -> Self {
        ErrorReport {
            max_relative_error: 0.0,
            argmax: Vec::new(),
            argmax_true_weight: 0.0,
            argmax_sampled_weight: 0.0,
            cuts_inspected: 0,
            sampled,
            class_deviations: Vec::new(),
        }
    }

    fn offer(&mut self, side: impl FnOnce() -> Vec<usize>, u: f64, w: f64) {
        self.cuts_inspected += 1;
        let err = if u > 0.0 {
            (u - w).abs() / u
        } else if w.abs() > 1e-12 {
            f64::INFINITY
        } else {
            return;
        };
        if err > self.max_relative_error || self.argmax.is_empty() {
            self.max_relative_error = err;
            self.argmax = side();
            self.argmax_true_weight = u;
            self.argmax_sampled_weight = w;
        }
    }
}

fn check_same_vertices(g: &Multigraph, sp: &Sparsifier) -> Result<()> {
    if g.vertex_count() != sp.vertex_count() {
        return Err(Error::domain(format!(
            "graph has {} vertices but sparsifier has {}",
            g.vertex_count(),
            sp.vertex_count()
        )));
    }
    Ok(())
}

fn mask_members(n: usize, mask: u64) -> Vec<usize> {
    (0..n).filter(|&v| mask >> v & 1 == 1).collect()
}

/// Exact maximum relative cut error when `n` is within the enumeration cap,
/// otherwise the sampled variant.
pub fn max_cut_error(g: &Multigraph, sp: &Sparsifier) -> Result<ErrorReport> {
    check_same_vertices(g, sp)?;
    if g.vertex_count() <= enumeration_cap() {
        max_cut_error_exact(g, sp)
    } else {
        max_cut_error_sampled(g, sp, 0)
    }
}

/// Maximum relative error over all `2^{n−1} − 1` cuts.
pub fn max_cut_error_exact(g: &Multigraph, sp: &Sparsifier) -> Result<ErrorReport> {
    check_same_vertices(g, sp)?;
    let n = g.vertex_count();
    check_enumerable(n)?;
    let mut ends = Vec::with_capacity(g.edge_count() + sp.edge_count());
    let mut weights = Vec::with_capacity(2 * ends.capacity());
    for e in g.edges() {
        ends.push((e.a, e.b));
        weights.extend([e.weight as f64, 0.0]);
    }
    for e in sp.edges() {
        ends.push((e.a, e.b));
        weights.extend([0.0, e.weight]);
    }
    let mut report = ErrorReport::empty(false);
    walk_cuts(n, &ends, 2, &weights, |mask, t| {
        report.offer(|| mask_members(n, mask), t[0], t[1]);
    });
    Ok(report)
}

/// Maximum relative error over every singleton and pair cut, a global
/// minimum cut (for `n ≤ 500`) and [`SAMPLED_SUBSETS`] random subsets drawn
/// from `seed`.
pub fn max_cut_error_sampled(g: &Multigraph, sp: &Sparsifier, seed: u64) -> Result<ErrorReport> {
    check_same_vertices(g, sp)?;
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::domain(
            "a graph with fewer than two vertices has no cuts",
        ));
    }
    let mut report = ErrorReport::empty(true);
    for cut in sampled_cut_family(g, seed)? {
        let side = cut.side();
        let u: f64 = g
            .edges()
            .iter()
            .filter(|e| e.crosses(side))
            .map(|e| e.weight as f64)
            .sum();
        let w: f64 = sp
            .edges()
            .iter()
            .filter(|e| side[e.a] != side[e.b])
            .map(|e| e.weight)
            .sum();
        report.offer(|| cut.members(), u, w);
    }
    Ok(report)
}

/// The cut family inspected by sampled verification, in a fixed order.
pub fn sampled_cut_family(g: &Multigraph, seed: u64) -> Result<Vec<VertexCut>> {
    let n = g.vertex_count();
    let mut cuts = Vec::new();
    for a in 0..n {
        cuts.push(VertexCut::from_members(n, &[a])?);
    }
    for a in 0..n {
        for b in a + 1..n {
            let cut = VertexCut::from_members(n, &[a, b])?;
            if cut.is_proper() {
                cuts.push(cut);
            }
        }
    }
    if n <= 500 {
        let (_, cut) = global_min_cut(g)?;
        if cut.is_proper() {
            cuts.push(cut);
        }
    }
    let fixed = cuts.len();
    let mut rng = substream(seed, 0x5a4d);
    while cuts.len() < fixed + SAMPLED_SUBSETS {
        let side: Vec<bool> = (0..n).map(|_| rng.random_bool(0.5)).collect();
        let cut = VertexCut::from_side(side);
        if cut.is_proper() {
            cuts.push(cut);
        }
    }
    Ok(cuts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{generate, GraphFamily};

    #[test]
    fn identity_has_zero_error() {
        let g = generate(&GraphFamily::Complete { n: 6 }, 0).unwrap();
        let r = max_cut_error(&g, &Sparsifier::from_multigraph(&g)).unwrap();
        assert_eq!(r.max_relative_error, 0.0);
        assert_eq!(r.cuts_inspected, 31);
        assert!(!r.sampled);
    }

    #[test]
    fn uniform_scaling_error_is_epsilon() {
        let g = generate(&GraphFamily::Figure1 { n: 7 }, 0).unwrap();
        let sp = Sparsifier::from_multigraph(&g).scaled(1.3);
        let r = max_cut_error(&g, &sp).unwrap();
        assert!((r.max_relative_error - 0.3).abs() < 1e-12);
    }

    #[test]
    fn mismatched_vertex_counts() {
        let g = generate(&GraphFamily::Path { n: 4 }, 0).unwrap();
        let h = generate(&GraphFamily::Path { n: 5 }, 0).unwrap();
        assert!(max_cut_error(&g, &Sparsifier::from_multigraph(&h)).is_err());
    }

    #[test]
    fn exact_dominates_sampled_on_the_sampled_family() {
        let g = crate::generators::random_connected(10, 0.4, 3, 1).unwrap();
        let sp = crate::sampling::sparsify_by_trees(
            &g,
            &crate::sampling::SamplingConfig::new(0.9).with_rho(2),
        )
        .unwrap();
        let exact = max_cut_error_exact(&g, &sp).unwrap();
        let sampled = max_cut_error_sampled(&g, &sp, 0).unwrap();
        assert!(sampled.sampled);
        assert!(sampled.max_relative_error <= exact.max_relative_error + 1e-12);
        // every cut of a 10-vertex graph is hit by 10^4 random subsets with
        // overwhelming probability
        assert!((sampled.max_relative_error - exact.max_relative_error).abs() < 1e-9);
    }
}
