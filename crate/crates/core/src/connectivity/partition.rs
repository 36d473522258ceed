//! k-partitions by minimum-cut peeling, and the recursive connectivity
//! estimator built on them.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Multigraph};

use super::mincut::stoer_wagner;
use super::{KappaAssignment, KappaSource};

/// Output of [`k_partition`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KPartition {
    /// Edge records in `E'`.
    pub edges: BTreeSet<EdgeId>,
    /// Total multiplicity of `E'`.
    pub weight: u64,
    /// Number of connected components of `g − E'`.
    pub components: usize,
}

impl KPartition {
    /// The size half of the contract: `|E'| ≤ 2k(r − 1)`.
    pub fn size_bound(&self, k: u64) -> u64 {
        2 * k * (self.components as u64 - 1)
    }
}

/// Splits `g` into its connected pieces with at least two vertices.
fn pieces(g: &Multigraph) -> Vec<Multigraph> {
    let (count, labels) = g.components();
    if count == 1 {
        return if g.vertex_count() > 1 {
            vec![g.clone()]
        } else {
            vec![]
        };
    }
    (0..count)
        .filter_map(|c| {
            let verts: Vec<usize> = (0..g.vertex_count()).filter(|&v| labels[v] == c).collect();
            (verts.len() > 1).then(|| g.induced_subgraph(&verts))
        })
        .collect()
}

/// Finds a set `E'` containing every edge with `k_e ≤ k`, of total
/// multiplicity at most `k(r − 1)` where `r` counts the components of
/// `g − E'`.
///
/// Any cut of weight `≤ k` inside a component is removed (a light vertex's
/// star first, otherwise a Stoer–Wagner minimum cut) and both shores are
/// processed again. Each removal adds at most `k` and creates a component;
/// the surviving components are `(k+1)`-edge-connected.
pub fn k_partition(g: &Multigraph, k: u64) -> KPartition {
    let mut removed = BTreeSet::new();
    let mut weight = 0u64;
    let mut stack = pieces(g);
    while let Some(piece) = stack.pop() {
        let deg = piece.weighted_degrees();
        let side: Option<Vec<bool>> = match deg.iter().position(|&d| d <= k) {
            Some(v) => Some((0..piece.vertex_count()).map(|x| x == v).collect()),
            None => {
                let (lambda, side) = stoer_wagner(&piece);
                (lambda <= k).then_some(side)
            }
        };
        let Some(side) = side else { continue };
        for e in piece.edges().iter().filter(|e| e.crosses(&side)) {
            removed.insert(e.id);
            weight += e.weight;
        }
        for shore in [true, false] {
            let verts: Vec<usize> = (0..piece.vertex_count())
                .filter(|&v| side[v] == shore)
                .collect();
            if verts.len() > 1 {
                stack.extend(pieces(&piece.induced_subgraph(&verts)));
            }
        }
    }
    let components = g.without_edges(&removed).components().0;
    KPartition {
        edges: removed,
        weight,
        components,
    }
}

/// Connectivity estimates `κ_e ≤ k_e`: starting from `k = 1`, edges in
/// `Partition(H, 2k)` receive `κ_e = k` and every nontrivial component of
/// `H − E'` recurses with `2k`.
pub fn connectivity_estimation(g: &Multigraph) -> Result<KappaAssignment> {
    g.require_connected("connectivity_estimation")?;
    let total = g.total_weight().max(1);
    let max_depth = 2 * (64 - total.leading_zeros()) as u64 + 2;
    let mut kappa = vec![0.0f64; g.edge_count()];
    let mut stack: Vec<(Multigraph, u64, u64)> = vec![(g.clone(), 1, 0)];
    while let Some((h, k, depth)) = stack.pop() {
        if depth > max_depth {
            return Err(Error::internal(format!(
                "connectivity estimation exceeded recursion depth {max_depth}"
            )));
        }
        let part = k_partition(&h, 2 * k);
        for id in &part.edges {
            let i = g.edge_index(*id).expect("subgraph edge ids come from g");
            kappa[i] = k as f64;
        }
        for piece in pieces(&h.without_edges(&part.edges)) {
            if piece.edge_count() > 0 {
                stack.push((piece, 2 * k, depth + 1));
            }
        }
    }
    if let Some(e) = g.edges().iter().zip(&kappa).find(|(_, &k)| k == 0.0) {
        return Err(Error::internal(format!(
            "edge {} received no estimate",
            e.0.id
        )));
    }
    KappaAssignment::new(g, KappaSource::Connest, kappa)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::edge_connectivities;
    use crate::{generate, GraphFamily};

    fn fam(f: GraphFamily) -> Multigraph {
        generate(&f, 0).unwrap()
    }

    #[test]
    fn path_partition_takes_everything() {
        let p = k_partition(&fam(GraphFamily::Path { n: 5 }), 1);
        assert_eq!(p.edges.len(), 4);
        assert_eq!(p.components, 5);
        assert_eq!(p.size_bound(1), 8);
    }

    #[test]
    fn complete_graph_partition_is_empty() {
        let p = k_partition(&fam(GraphFamily::Complete { n: 4 }), 1);
        assert!(p.edges.is_empty());
        assert_eq!(p.components, 1);
        assert_eq!(p.size_bound(1), 0);
    }

    #[test]
    fn dumbbell_partition_is_the_bridge() {
        let g = fam(GraphFamily::Dumbbell { clique: 4 });
        let p = k_partition(&g, 1);
        let bridge = g.edges().iter().find(|e| e.a == 3 && e.b == 4).unwrap().id;
        assert_eq!(p.edges, BTreeSet::from([bridge]));
        assert_eq!(p.components, 2);
    }

    #[test]
    fn partition_contract_on_random_graphs() {
        for seed in 0..25 {
            let g = crate::generators::random_connected(12, 0.3, 3, seed).unwrap();
            let conn = edge_connectivities(&g).unwrap();
            for k in 1..6 {
                let p = k_partition(&g, k);
                for (e, &ke) in g.edges().iter().zip(&conn) {
                    if ke <= k {
                        assert!(p.edges.contains(&e.id));
                    }
                }
                assert!(p.weight <= p.size_bound(k));
            }
        }
    }

    #[test]
    fn estimation_worked_examples() {
        let p4 = fam(GraphFamily::Path { n: 4 });
        assert!(connectivity_estimation(&p4)
            .unwrap()
            .values()
            .iter()
            .all(|&k| k == 1.0));
        let k4 = fam(GraphFamily::Complete { n: 4 });
        assert!(connectivity_estimation(&k4)
            .unwrap()
            .values()
            .iter()
            .all(|&k| k == 2.0));
    }

    #[test]
    fn estimation_is_a_lower_bound() {
        for seed in 0..25 {
            let g = crate::generators::random_connected(14, 0.4, 5, seed).unwrap();
            let kappa = connectivity_estimation(&g).unwrap();
            let conn = edge_connectivities(&g).unwrap();
            assert!(kappa
                .values()
                .iter()
                .zip(&conn)
                .all(|(&a, &b)| a <= b as f64));
        }
    }
}
