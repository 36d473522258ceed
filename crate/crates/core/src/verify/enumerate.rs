//! Exhaustive cut enumeration.
//!
//! Vertex `n − 1` is pinned outside `S`, so each of the `2^{n−1} − 1` cuts
//! appears once. The fast path walks the subsets in Gray-code order and
//! updates cut weights incrementally, one flipped vertex per step.

use crate::error::{Error, Result};
use crate::graph::{VertexCut, WeightedGraph};

/// Default limit on `n` for exhaustive enumeration.
pub const DEFAULT_ENUM_CAP: usize = 24;

/// Current enumeration cap: `CUTSPARSE_MAX_ENUM` if set and valid, else
/// [`DEFAULT_ENUM_CAP`]. Never above 63.
pub fn enumeration_cap() -> usize {
    std::env::var("CUTSPARSE_MAX_ENUM")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .unwrap_or(DEFAULT_ENUM_CAP)
        .min(63)
}

pub(crate) fn check_enumerable(n: usize) -> Result<()> {
    let cap = enumeration_cap();
    if n > cap {
        return Err(Error::domain(format!(
            "exhaustive cut enumeration is capped at n <= {cap} (got n = {n}); \
             use sampled verification or raise CUTSPARSE_MAX_ENUM"
        )));
    }
    if n < 2 {
        return Err(Error::domain(
            "a graph with fewer than two vertices has no cuts",
        ));
    }
    Ok(())
}

/// Iterator over `(S, u(δ(S)))` for every cut.
pub struct CutIter {
    n: usize,
    edges: Vec<(usize, usize, f64)>,
    next: u64,
    end: u64,
}

impl Iterator for CutIter {
    type Item = (VertexCut, f64);

    fn next(&mut self) -> Option<Self::Item> {
        if self.next >= self.end {
            return None;
        }
        let mask = self.next;
        self.next += 1;
        let w = self
            .edges
            .iter()
            .filter(|&&(a, b, _)| (mask >> a & 1) != (mask >> b & 1))
            .map(|&(_, _, w)| w)
            .sum();
        Some((VertexCut::from_mask(self.n, mask), w))
    }
}

pub fn enumerate_cuts<G: WeightedGraph + ?Sized>(g: &G) -> Result<CutIter> {
    let n = g.vertex_count();
    check_enumerable(n)?;
    Ok(CutIter {
        n,
        edges: g.weighted_edges(),
        next: 1,
        end: 1u64 << (n - 1),
    })
}

/// Multi-channel Gray-code cut walker. Each edge carries `channels` weights
/// (row-major in `weights`); the callback sees the mask of `S` and the
/// current per-channel cut totals.
pub(crate) fn walk_cuts<F>(
    n: usize,
    endpoints: &[(usize, usize)],
    channels: usize,
    weights: &[f64],
    mut visit: F,
) where
    F: FnMut(u64, &[f64]),
{
    debug_assert_eq!(weights.len(), endpoints.len() * channels);
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, &(a, b)) in endpoints.iter().enumerate() {
        adj[a].push((b, i));
        adj[b].push((a, i));
    }
    let mut mask = 0u64;
    let mut totals = vec![0.0f64; channels];
    let count = 1u64 << (n - 1);
    for step in 1..count {
        let v = step.trailing_zeros() as usize;
        let v_in = mask >> v & 1 == 1;
        for &(u, i) in &adj[v] {
            let u_in = mask >> u & 1 == 1;
            let row = &weights[i * channels..(i + 1) * channels];
            if u_in == v_in {
                totals.iter_mut().zip(row).for_each(|(t, w)| *t += w);
            } else {
                totals.iter_mut().zip(row).for_each(|(t, w)| *t -= w);
            }
        }
        mask ^= 1 << v;
        visit(mask, &totals);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{generate, GraphFamily};

    #[test]
    fn path_cut_weights() {
        let g = generate(&GraphFamily::Path { n: 3 }, 0).unwrap();
        let mut w: Vec<f64> = enumerate_cuts(&g).unwrap().map(|(_, w)| w).collect();
        w.sort_by(f64::total_cmp);
        assert_eq!(w, vec![1.0, 1.0, 2.0]);
    }

    #[test]
    fn complete_four_cut_weights() {
        let g = generate(&GraphFamily::Complete { n: 4 }, 0).unwrap();
        let mut w: Vec<f64> = enumerate_cuts(&g).unwrap().map(|(_, w)| w).collect();
        w.sort_by(f64::total_cmp);
        assert_eq!(w, vec![3.0, 3.0, 3.0, 3.0, 4.0, 4.0, 4.0]);
    }

    #[test]
    fn count_is_half_the_subsets() {
        for n in 2..10 {
            let g = generate(&GraphFamily::Cycle { n: n.max(3) }, 0).unwrap();
            let n = g.vertex_count();
            assert_eq!(
                enumerate_cuts(&g).unwrap().count() as u64,
                (1u64 << (n - 1)) - 1
            );
        }
    }

    #[test]
    fn gray_walk_matches_direct_sums() {
        let g = crate::generators::random_connected(9, 0.4, 5, 2).unwrap();
        let ends: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.a, e.b)).collect();
        let w: Vec<f64> = g.edges().iter().map(|e| e.weight as f64).collect();
        let mut seen = 0;
        walk_cuts(9, &ends, 1, &w, |mask, t| {
            let direct: f64 = g
                .edges()
                .iter()
                .filter(|e| (mask >> e.a & 1) != (mask >> e.b & 1))
                .map(|e| e.weight as f64)
                .sum();
            assert_eq!(direct, t[0]);
            assert_eq!(mask >> 8, 0);
            seen += 1;
        });
        assert_eq!(seen, 255);
    }

    #[test]
    fn cap_is_enforced() {
        let g = generate(&GraphFamily::Path { n: 70 }, 0).unwrap();
        assert!(enumerate_cuts(&g).is_err());
    }
}
