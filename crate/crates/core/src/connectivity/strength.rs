//! Exact edge strengths by recursive minimum-cut decomposition.
//!
//! Take a connected piece `H` and its minimum cut value `λ`. `H` is itself
//! `λ`-edge-connected, so every edge of `H` has strength at least `λ`, and a
//! vertex set that is more than `λ`-connected cannot straddle a `λ`-cut.
//! Edges crossing the cut therefore have strength exactly
//! `max(λ, floor)` where `floor` is the best value inherited from the
//! enclosing pieces; the two shores are handled recursively.

use crate::error::{Error, Result};
use crate::graph::Multigraph;

use super::mincut::stoer_wagner;

/// Largest vertex count accepted by [`edge_strength_exact`].
pub const STRENGTH_ORACLE_LIMIT: usize = 64;

/// `k'_e` for every edge, aligned with `g.edges()`.
pub fn edge_strength_exact(g: &Multigraph) -> Result<Vec<u64>> {
    if g.vertex_count() > STRENGTH_ORACLE_LIMIT {
        return Err(Error::domain(format!(
            "exact strength is limited to n <= {STRENGTH_ORACLE_LIMIT} (got {})",
            g.vertex_count()
        )));
    }
    let mut strength = vec![0u64; g.edge_count()];
    // (piece with original edge ids, floor)
    let mut stack = vec![(g.clone(), 0u64)];
    while let Some((piece, floor)) = stack.pop() {
        let (count, labels) = piece.components();
        if count > 1 {
            for c in 0..count {
                let verts: Vec<usize> = (0..piece.vertex_count())
                    .filter(|&v| labels[v] == c)
                    .collect();
                if verts.len() > 1 {
                    stack.push((piece.induced_subgraph(&verts), floor));
                }
            }
            continue;
        }
        if piece.vertex_count() < 2 {
            continue;
        }
        let (lambda, side) = stoer_wagner(&piece);
        let level = lambda.max(floor);
        for e in piece.edges().iter().filter(|e| e.crosses(&side)) {
            let i = g.edge_index(e.id).expect("piece edges come from g");
            strength[i] = level;
        }
        for shore in [true, false] {
            let verts: Vec<usize> = (0..piece.vertex_count())
                .filter(|&v| side[v] == shore)
                .collect();
            if verts.len() > 1 {
                stack.push((piece.induced_subgraph(&verts), level));
            }
        }
    }
    Ok(strength)
}
