//! Standard graph families and the worked-example constructions.
//!
//! In `Figure1`, `Figure2` and `Figure3` the distinguished edge `st` always
//! joins vertex 0 (`s`) and vertex 1 (`t`) and has id 0.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::rng::substream;
use rand::Rng;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum GraphFamily {
    Path {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    Complete {
        n: usize,
    },
    /// Erdős–Rényi `G(n, p)` with unit weights. May be disconnected.
    RandomGnp {
        n: usize,
        p: f64,
    },
    /// `st` plus `n − 2` internally disjoint 2-paths; `n` vertices in total.
    Figure1 {
        n: usize,
    },
    /// `st` plus an `s`–`t` path of `n − 1` edges of weight `n − 1`.
    Figure2 {
        n: usize,
    },
    /// `st` of weight `k` plus `k` unit 2-paths.
    Figure3 {
        k: usize,
    },
    /// `n` positions: heavy edge `v_i v_{i+1}` of multiplicity `k` and light
    /// path `v_i u_i v_{i+1}`.
    TreeLowerBound {
        n: usize,
        k: u64,
    },
    /// Two cliques of the given size joined by a single bridge.
    Dumbbell {
        clique: usize,
    },
}

impl GraphFamily {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::domain(msg.to_string()));
        match *self {
            GraphFamily::Path { n } if n < 1 => bad("path requires n >= 1"),
            GraphFamily::Cycle { n } if n < 3 => bad("cycle requires n >= 3"),
            GraphFamily::Complete { n } if n < 1 => bad("complete requires n >= 1"),
            GraphFamily::RandomGnp { n, p } if n < 1 || !(0.0..=1.0).contains(&p) => {
                bad("random-gnp requires n >= 1 and 0 <= p <= 1")
            }
            GraphFamily::Figure1 { n } if n < 3 => bad("figure1 requires n >= 3"),
            GraphFamily::Figure2 { n } if n < 3 => bad("figure2 requires n >= 3"),
            GraphFamily::Figure3 { k } if k < 1 => bad("figure3 requires k >= 1"),
            GraphFamily::TreeLowerBound { n, k } if n < 1 || k < 1 => {
                bad("tree-lower-bound requires n >= 1 and k >= 1")
            }
            GraphFamily::Dumbbell { clique } if clique < 2 => {
                bad("dumbbell requires clique size >= 2")
            }
            _ => Ok(()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GraphFamily::Path { .. } => "path",
            GraphFamily::Cycle { .. } => "cycle",
            GraphFamily::Complete { .. } => "complete",
            GraphFamily::RandomGnp { .. } => "random-gnp",
            GraphFamily::Figure1 { .. } => "figure1",
            GraphFamily::Figure2 { .. } => "figure2",
            GraphFamily::Figure3 { .. } => "figure3",
            GraphFamily::TreeLowerBound { .. } => "tree-lower-bound",
            GraphFamily::Dumbbell { .. } => "dumbbell",
        }
    }
}

/// Builds a member of `family`. Only `RandomGnp` consumes `seed`.
pub fn generate(family: &GraphFamily, seed: u64) -> Result<Multigraph> {
    family.validate()?;
    let mut edges: Vec<(usize, usize, u64)> = Vec::new();
    let n = match *family {
        GraphFamily::Path { n } => {
            edges.extend((1..n).map(|i| (i - 1, i, 1)));
            n
        }
        GraphFamily::Cycle { n } => {
            edges.extend((0..n).map(|i| (i, (i + 1) % n, 1)));
            n
        }
        GraphFamily::Complete { n } => {
            for a in 0..n {
                edges.extend((a + 1..n).map(|b| (a, b, 1)));
            }
            n
        }
        GraphFamily::RandomGnp { n, p } => {
            let mut rng = substream(seed, 0);
            for a in 0..n {
                for b in a + 1..n {
                    if rng.random_bool(p) {
                        edges.push((a, b, 1));
                    }
                }
            }
            n
        }
        GraphFamily::Figure1 { n } => {
            edges.push((0, 1, 1));
            for m in 2..n {
                edges.push((0, m, 1));
                edges.push((m, 1, 1));
            }
            n
        }
        GraphFamily::Figure2 { n } => {
            let w = (n - 1) as u64;
            edges.push((0, 1, 1));
            // s = 0, 2, 3, ..., n-1, t = 1
            let mut order = vec![0];
            order.extend(2..n);
            order.push(1);
            edges.extend(order.windows(2).map(|p| (p[0], p[1], w)));
            n
        }
        GraphFamily::Figure3 { k } => {
            edges.push((0, 1, k as u64));
            for m in 2..k + 2 {
                edges.push((0, m, 1));
                edges.push((m, 1, 1));
            }
            k + 2
        }
        GraphFamily::TreeLowerBound { n, k } => {
            // v_1..v_{n+1} are 0..=n, u_i is n + i
            for i in 0..n {
                edges.push((i, i + 1, k));
                edges.push((i, n + 1 + i, 1));
                edges.push((n + 1 + i, i + 1, 1));
            }
            2 * n + 1
        }
        GraphFamily::Dumbbell { clique } => {
            for side in [0, clique] {
                for a in 0..clique {
                    edges.extend((a + 1..clique).map(|b| (side + a, side + b, 1)));
                }
            }
            edges.push((clique - 1, clique, 1));
            2 * clique
        }
    };
    Multigraph::from_weighted_edges(n, edges)
}

/// Vertex `v_i` (1-based position) of a tree-lower-bound graph.
pub fn tree_lb_v(i: usize) -> usize {
    i - 1
}

/// Vertex `u_i` (1-based position) of a tree-lower-bound graph with `n`
/// positions.
pub fn tree_lb_u(n: usize, i: usize) -> usize {
    n + i
}

/// Connected `G(n, p)` variant used by test corpora: a random spanning tree
/// (random attachment) is added first, then every other pair with
/// probability `p`. Weights are uniform in `1..=max_weight`.
pub fn random_connected(n: usize, p: f64, max_weight: u64, seed: u64) -> Result<Multigraph> {
    if n < 1 || max_weight < 1 || !(0.0..=1.0).contains(&p) {
        return Err(Error::domain("random_connected: invalid parameters"));
    }
    let mut rng = substream(seed, 1);
    let mut edges = Vec::new();
    let mut in_tree = vec![vec![false; n]; n];
    for v in 1..n {
        let parent = rng.random_range(0..v);
        in_tree[parent][v] = true;
        edges.push((parent, v, rng.random_range(1..=max_weight)));
    }
    for a in 0..n {
        for b in a + 1..n {
            if !in_tree[a][b] && rng.random_bool(p) {
                edges.push((a, b, rng.random_range(1..=max_weight)));
            }
        }
    }
    Multigraph::from_weighted_edges(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure1_shape() {
        let g = generate(&GraphFamily::Figure1 { n: 6 }, 0).unwrap();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 9);
        assert_eq!(g.total_weight(), 9);
    }

    #[test]
    fn figure2_shape() {
        let g = generate(&GraphFamily::Figure2 { n: 5 }, 0).unwrap();
        assert_eq!(g.edge_count(), 5);
        assert_eq!(g.total_weight(), 17);
        assert_eq!(g.edges()[0].weight, 1);
        assert!(g.edges()[1..].iter().all(|e| e.weight == 4));
    }

    #[test]
    fn smallest_tree_lower_bound() {
        let g = generate(&GraphFamily::TreeLowerBound { n: 1, k: 1 }, 0).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.edges()[0].weight, 1);
    }

    #[test]
    fn invalid_parameters() {
        assert!(generate(&GraphFamily::Figure1 { n: 2 }, 0).is_err());
        assert!(generate(&GraphFamily::TreeLowerBound { n: 0, k: 1 }, 0).is_err());
        assert!(generate(&GraphFamily::RandomGnp { n: 4, p: 1.5 }, 0).is_err());
    }

    #[test]
    fn gnp_is_seed_deterministic() {
        let f = GraphFamily::RandomGnp { n: 12, p: 0.4 };
        assert_eq!(generate(&f, 3).unwrap(), generate(&f, 3).unwrap());
        assert_ne!(generate(&f, 3).unwrap(), generate(&f, 4).unwrap());
    }

    #[test]
    fn dumbbell_has_one_bridge() {
        let g = generate(&GraphFamily::Dumbbell { clique: 4 }, 0).unwrap();
        assert_eq!(g.vertex_count(), 8);
        assert_eq!(g.edge_count(), 13);
        assert!(g.is_connected());
    }

    #[test]
    fn random_connected_is_connected() {
        for seed in 0..20 {
            let g = random_connected(15, 0.1, 3, seed).unwrap();
            assert!(g.is_connected());
            assert!(g.edges().iter().all(|e| (1..=3).contains(&e.weight)));
        }
    }
}
