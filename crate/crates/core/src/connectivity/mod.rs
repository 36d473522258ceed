//! Exact connectivity oracles and connectivity estimates.
//!
//! Exact quantities: local edge connectivity `k_e` (max-flow), global minimum
//! cut (Stoer–Wagner), edge strength `k'_e` (min-cut recursion) and
//! effective resistance / conductance (dense Laplacian pseudoinverse).
//! Estimates: Nagamochi–Ibaraki forest labels and the recursive
//! k-partition estimator.

mod flow;
mod mincut;
mod ni;
mod partition;
mod resistance;
mod strength;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

pub use flow::FlowNetwork;
pub use ni::{ni_labels, ni_labels_with_bound, NiLabels};
pub use partition::{connectivity_estimation, k_partition, KPartition};
pub use resistance::{effective_resistances, DENSE_SOLVER_LIMIT};
pub use strength::{edge_strength_exact, STRENGTH_ORACLE_LIMIT};

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeId, Multigraph, VertexCut};
use crate::io::format_real;

/// Where a set of `κ_e` values came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KappaSource {
    ExactConnectivity,
    Conductance,
    ExactStrength,
    NiLabel,
    Connest,
    User,
}

impl KappaSource {
    pub fn name(self) -> &'static str {
        match self {
            KappaSource::ExactConnectivity => "exact-connectivity",
            KappaSource::Conductance => "conductance",
            KappaSource::ExactStrength => "exact-strength",
            KappaSource::NiLabel => "ni-label",
            KappaSource::Connest => "connest",
            KappaSource::User => "user",
        }
    }
}

/// Per-edge sampling parameter `κ_e`, aligned with the edge order of the
/// graph it was computed for.
#[derive(Clone, Debug, PartialEq)]
pub struct KappaAssignment {
    source: KappaSource,
    ids: Vec<EdgeId>,
    values: Vec<f64>,
}

impl KappaAssignment {
    pub fn new(g: &Multigraph, source: KappaSource, values: Vec<f64>) -> Result<Self> {
        if values.len() != g.edge_count() {
            return Err(Error::domain(format!(
                "kappa has {} values for {} edges",
                values.len(),
                g.edge_count()
            )));
        }
        if let Some((e, k)) = g.edges().iter().zip(&values).find(|(_, &k)| !(k > 0.0)) {
            return Err(Error::domain(format!(
                "kappa must be positive, edge {} has {k}",
                e.id
            )));
        }
        Ok(KappaAssignment {
            source,
            ids: g.edges().iter().map(|e| e.id).collect(),
            values,
        })
    }

    /// Computes `κ` from one of the built-in sources. `User` is rejected.
    pub fn compute(g: &Multigraph, source: KappaSource) -> Result<Self> {
        let values: Vec<f64> = match source {
            KappaSource::ExactConnectivity => edge_connectivities(g)?
                .into_iter()
                .map(|k| k as f64)
                .collect(),
            KappaSource::Conductance => effective_resistances(g)?
                .into_iter()
                .map(|r| 1.0 / r)
                .collect(),
            KappaSource::ExactStrength => edge_strength_exact(g)?
                .into_iter()
                .map(|k| k as f64)
                .collect(),
            KappaSource::NiLabel => ni_labels(g)?.labels().iter().map(|&r| r as f64).collect(),
            KappaSource::Connest => return connectivity_estimation(g),
            KappaSource::User => {
                return Err(Error::domain(
                    "user kappa values must be supplied explicitly",
                ))
            }
        };
        KappaAssignment::new(g, source, values)
    }

    pub fn source(&self) -> KappaSource {
        self.source
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn ids(&self) -> &[EdgeId] {
        &self.ids
    }

    pub(crate) fn check_matches(&self, g: &Multigraph) -> Result<()> {
        if self.ids.len() != g.edge_count()
            || self.ids.iter().zip(g.edges()).any(|(&i, e)| i != e.id)
        {
            return Err(Error::domain(
                "kappa assignment belongs to a different graph",
            ));
        }
        Ok(())
    }
}

/// Exact per-edge connectivity quantities. Columns that were not computed
/// are `None`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectivityTable {
    pub edges: Vec<Edge>,
    pub connectivity: Option<Vec<u64>>,
    pub strength: Option<Vec<u64>>,
    pub resistance: Option<Vec<f64>>,
}

impl ConnectivityTable {
    pub fn empty(g: &Multigraph) -> Self {
        ConnectivityTable {
            edges: g.edges().to_vec(),
            connectivity: None,
            strength: None,
            resistance: None,
        }
    }

    /// Computes every column; strength only within the oracle scale.
    pub fn full(g: &Multigraph) -> Result<Self> {
        Ok(ConnectivityTable {
            edges: g.edges().to_vec(),
            connectivity: Some(edge_connectivities(g)?),
            strength: if g.vertex_count() <= STRENGTH_ORACLE_LIMIT {
                Some(edge_strength_exact(g)?)
            } else {
                None
            },
            resistance: Some(effective_resistances(g)?),
        })
    }

    pub fn conductance(&self) -> Option<Vec<f64>> {
        self.resistance
            .as_ref()
            .map(|r| r.iter().map(|x| 1.0 / x).collect())
    }

    /// Tab-free text table, one edge per line:
    /// `edge_id a b u k strength resistance conductance kappa`.
    /// Missing values print as `-`.
    pub fn to_text(&self, kappa: Option<&KappaAssignment>) -> String {
        let dash = || "-".to_string();
        let mut out = String::from("# edge_id a b u k strength resistance conductance kappa\n");
        for (i, e) in self.edges.iter().enumerate() {
            let k = self
                .connectivity
                .as_ref()
                .map_or_else(dash, |v| v[i].to_string());
            let s = self
                .strength
                .as_ref()
                .map_or_else(dash, |v| v[i].to_string());
            let (r, c) = self.resistance.as_ref().map_or_else(
                || (dash(), dash()),
                |v| (format_real(v[i]), format_real(1.0 / v[i])),
            );
            let kap = kappa.map_or_else(dash, |kp| format_real(kp.values()[i]));
            let _ = writeln!(
                out,
                "{} {} {} {} {k} {s} {r} {c} {kap}",
                e.id, e.a, e.b, e.weight
            );
        }
        out
    }
}

/// Exact minimum weight of a cut separating `s` and `t`; 0 if they are
/// disconnected.
pub fn local_edge_connectivity(g: &Multigraph, s: usize, t: usize) -> Result<u64> {
    if s == t {
        return Err(Error::domain(
            "local connectivity needs two distinct vertices",
        ));
    }
    if s >= g.vertex_count() || t >= g.vertex_count() {
        return Err(Error::domain("vertex index out of range"));
    }
    Ok(network(g).max_flow(s, t))
}

/// Minimum `s`–`t` cut value and the source shore.
pub fn min_st_cut(g: &Multigraph, s: usize, t: usize) -> Result<(u64, VertexCut)> {
    let value = local_edge_connectivity(g, s, t)?;
    let mut net = network(g);
    net.max_flow(s, t);
    Ok((value, VertexCut::from_side(net.source_side(s))))
}

fn network(g: &Multigraph) -> FlowNetwork {
    let mut net = FlowNetwork::new(g.vertex_count());
    for e in g.edges() {
        net.add_undirected(e.a, e.b, e.weight);
    }
    net
}

/// `k_e` for every edge, aligned with `g.edges()`.
pub fn edge_connectivities(g: &Multigraph) -> Result<Vec<u64>> {
    g.require_connected("all_edge_connectivities")?;
    let mut pairs: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for e in g.edges() {
        pairs.insert((e.a.min(e.b), e.a.max(e.b)), 0);
    }
    let keys: Vec<(usize, usize)> = pairs.keys().copied().collect();
    let compute = |&(a, b): &(usize, usize)| network(g).max_flow(a, b);
    #[cfg(feature = "parallel")]
    let values: Vec<u64> = {
        use rayon::prelude::*;
        keys.par_iter().map(compute).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let values: Vec<u64> = keys.iter().map(compute).collect();
    for (k, v) in keys.into_iter().zip(values) {
        pairs.insert(k, v);
    }
    Ok(g.edges()
        .iter()
        .map(|e| pairs[&(e.a.min(e.b), e.a.max(e.b))])
        .collect())
}

/// Table with the `k_e` column filled.
pub fn all_edge_connectivities(g: &Multigraph) -> Result<ConnectivityTable> {
    let mut t = ConnectivityTable::empty(g);
    t.connectivity = Some(edge_connectivities(g)?);
    Ok(t)
}

/// Exact global minimum cut. A disconnected graph yields value 0 and a
/// shore that is a union of components.
pub fn global_min_cut(g: &Multigraph) -> Result<(u64, VertexCut)> {
    if g.vertex_count() < 2 {
        return Err(Error::domain(
            "global minimum cut needs at least two vertices",
        ));
    }
    let (value, side) = mincut::stoer_wagner(g);
    Ok((value, VertexCut::from_side(side)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::enumerate_cuts;
    use crate::{generate, GraphFamily};

    fn fam(f: GraphFamily) -> Multigraph {
        generate(&f, 0).unwrap()
    }

    #[test]
    fn worked_local_connectivities() {
        let f1 = fam(GraphFamily::Figure1 { n: 6 });
        assert_eq!(local_edge_connectivity(&f1, 0, 1).unwrap(), 5);
        let p3 = fam(GraphFamily::Path { n: 3 });
        assert_eq!(local_edge_connectivity(&p3, 0, 2).unwrap(), 1);
        assert!(local_edge_connectivity(&p3, 1, 1).is_err());
        let split = Multigraph::from_weighted_edges(4, [(0, 1, 1), (2, 3, 1)]).unwrap();
        assert_eq!(local_edge_connectivity(&split, 0, 3).unwrap(), 0);
    }

    #[test]
    fn local_connectivity_matches_cut_enumeration() {
        let g = fam(GraphFamily::RandomGnp { n: 8, p: 0.5 });
        for (s, t) in [(0, 7), (2, 5), (1, 3)] {
            let brute = enumerate_cuts(&g)
                .unwrap()
                .filter(|(cut, _)| cut.contains(s) != cut.contains(t))
                .map(|(_, w)| w as u64)
                .min()
                .unwrap();
            assert_eq!(local_edge_connectivity(&g, s, t).unwrap(), brute);
        }
    }

    #[test]
    fn table_values() {
        let c5 = fam(GraphFamily::Cycle { n: 5 });
        assert!(edge_connectivities(&c5).unwrap().iter().all(|&k| k == 2));
        let k5 = fam(GraphFamily::Complete { n: 5 });
        assert!(edge_connectivities(&k5).unwrap().iter().all(|&k| k == 4));
        let f2 = fam(GraphFamily::Figure2 { n: 5 });
        assert_eq!(edge_connectivities(&f2).unwrap()[0], 5);
        let split = Multigraph::from_weighted_edges(4, [(0, 1, 1), (2, 3, 1)]).unwrap();
        assert!(edge_connectivities(&split).is_err());
    }

    #[test]
    fn global_min_cut_values() {
        assert_eq!(
            global_min_cut(&fam(GraphFamily::Path { n: 4 })).unwrap().0,
            1
        );
        assert_eq!(
            global_min_cut(&fam(GraphFamily::Figure1 { n: 6 }))
                .unwrap()
                .0,
            2
        );
        assert_eq!(
            global_min_cut(&fam(GraphFamily::Complete { n: 4 }))
                .unwrap()
                .0,
            3
        );
        assert!(global_min_cut(&Multigraph::new(1)).is_err());
    }

    #[test]
    fn table_text_has_one_row_per_edge() {
        let g = fam(GraphFamily::Figure1 { n: 5 });
        let t = ConnectivityTable::full(&g).unwrap();
        let kappa = KappaAssignment::compute(&g, KappaSource::ExactConnectivity).unwrap();
        let text = t.to_text(Some(&kappa));
        let rows: Vec<&str> = text.lines().skip(1).collect();
        assert_eq!(rows.len(), g.edge_count());
        assert_eq!(rows[0].split_whitespace().count(), 9);
        assert!(rows[0].starts_with("0 0 1 1 4 2 "));
    }

    #[test]
    fn kappa_rejects_nonpositive() {
        let g = fam(GraphFamily::Path { n: 3 });
        assert!(KappaAssignment::new(&g, KappaSource::User, vec![1.0, 0.0]).is_err());
        assert!(KappaAssignment::new(&g, KappaSource::User, vec![1.0]).is_err());
    }
}
