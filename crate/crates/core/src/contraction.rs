//! Generalized contraction: random edge contraction with admissible
//! splitting-off of white vertices, and the random-walk variant.
//!
//! Both return the black edges crossing a uniformly random non-empty proper
//! vertex subset of the final graph, and are used to check empirically that
//! every small cut-induced set is output with probability at least
//! `n^{−2α}`.

use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;

use crate::connectivity::FlowNetwork;
use crate::error::{Error, Result};
use crate::graph::{DisjointSets, Edge, EdgeId, Multigraph};
use crate::rng::{substream, StreamRng};
use crate::verify::{cut_induced_sets, BlackEdgeSet, CutInducedSet};

/// Largest `n` accepted by [`contract_experiment`].
pub const STATISTICAL_LIMIT: usize = 12;

/// Every multiplicity doubled, so that all degrees are even and no edge is
/// a cut edge of its component.
pub fn duplicate_edges(g: &Multigraph) -> Result<Multigraph> {
    g.scaled(2)
}

#[derive(Clone, Copy, Debug)]
struct WorkEdge {
    id: EdgeId,
    a: usize,
    b: usize,
    mult: u64,
    black: bool,
}

/// Mutable working copy. Vertex labels stay in the original index space;
/// removed or merged-away vertices are marked dead.
#[derive(Clone, Debug)]
struct Work {
    alive: Vec<bool>,
    edges: Vec<WorkEdge>,
    next_id: EdgeId,
}

impl Work {
    fn new(g: &Multigraph, black: &BlackEdgeSet) -> Self {
        Work {
            alive: vec![true; g.vertex_count()],
            edges: g
                .edges()
                .iter()
                .map(|e| WorkEdge {
                    id: e.id,
                    a: e.a,
                    b: e.b,
                    mult: e.weight,
                    black: black.contains(e.id),
                })
                .collect(),
            next_id: g.next_edge_id(),
        }
    }

    fn vertex_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    fn black_vertices(&self) -> Vec<bool> {
        let mut black = vec![false; self.alive.len()];
        for e in self.edges.iter().filter(|e| e.black) {
            black[e.a] = true;
            black[e.b] = true;
        }
        black
    }

    fn connectivity(&self, s: usize, t: usize, cap: u64) -> u64 {
        let mut net = FlowNetwork::new(self.alive.len());
        for e in &self.edges {
            net.add_undirected(e.a, e.b, e.mult);
        }
        net.max_flow_capped(s, t, cap)
    }

    fn black_pairs(&self) -> Vec<(usize, usize)> {
        let black = self.black_vertices();
        let verts: Vec<usize> = (0..black.len()).filter(|&v| black[v]).collect();
        let mut pairs = Vec::new();
        for (i, &s) in verts.iter().enumerate() {
            pairs.extend(verts[i + 1..].iter().map(|&t| (s, t)));
        }
        pairs
    }

    fn drop_loops(&mut self) {
        self.edges.retain(|e| e.a != e.b && e.mult > 0);
    }

    /// Splits off pairs at white vertex `v` until it is isolated, then
    /// removes it. Only splits that keep every black pair's connectivity are
    /// taken.
    fn split_off(&mut self, v: usize) -> Result<()> {
        if self.black_vertices()[v] {
            return Err(Error::domain(format!("vertex {v} is black")));
        }
        let pairs = self.black_pairs();
        let baseline: Vec<u64> = pairs
            .iter()
            .map(|&(s, t)| self.connectivity(s, t, u64::MAX))
            .collect();
        loop {
            let incident: Vec<usize> = (0..self.edges.len())
                .filter(|&i| self.edges[i].a == v || self.edges[i].b == v)
                .collect();
            if incident.is_empty() {
                break;
            }
            if self
                .try_one_split(v, &incident, &pairs, &baseline)?
                .is_none()
            {
                return Err(Error::internal(format!(
                    "no admissible splitting-off pair at vertex {v}"
                )));
            }
        }
        self.alive[v] = false;
        Ok(())
    }

    fn try_one_split(
        &mut self,
        v: usize,
        incident: &[usize],
        pairs: &[(usize, usize)],
        baseline: &[u64],
    ) -> Result<Option<()>> {
        // pairs with distinct far ends first; a same-end pair only yields a loop
        let mut candidates = Vec::new();
        for (x, &i) in incident.iter().enumerate() {
            for &j in &incident[x..] {
                let looped = self.edges[i].other(v) == self.edges[j].other(v);
                candidates.push((looped, i, j));
            }
        }
        candidates.sort_by_key(|c| c.0);
        for (_, i, j) in candidates {
            let (ei, ej) = (self.edges[i], self.edges[j]);
            let full = if i == j {
                ei.mult / 2
            } else {
                ei.mult.min(ej.mult)
            };
            if full == 0 {
                continue;
            }
            let amounts = if full > 1 { vec![full, 1] } else { vec![1] };
            for amount in amounts {
                let saved = self.edges.clone();
                let saved_id = self.next_id;
                let (u, w) = (ei.other(v), ej.other(v));
                self.edges[i].mult -= amount;
                self.edges[j].mult -= amount;
                if u != w {
                    self.edges.push(WorkEdge {
                        id: self.next_id,
                        a: u,
                        b: w,
                        mult: amount,
                        black: false,
                    });
                    self.next_id += 1;
                }
                self.drop_loops();
                let admissible = pairs
                    .iter()
                    .zip(baseline)
                    .all(|(&(s, t), &k)| self.connectivity(s, t, k) >= k);
                if admissible {
                    return Ok(Some(()));
                }
                self.edges = saved;
                self.next_id = saved_id;
            }
        }
        Ok(None)
    }

    fn split_all_white(&mut self) -> Result<()> {
        loop {
            let black = self.black_vertices();
            match (0..self.alive.len()).find(|&v| self.alive[v] && !black[v]) {
                Some(v) => self.split_off(v)?,
                None => return Ok(()),
            }
        }
    }

    /// Merges each group of `ds` into its lowest member.
    fn merge(&mut self, ds: &mut DisjointSets) {
        let n = self.alive.len();
        let mut rep = vec![usize::MAX; n];
        for v in 0..n {
            let r = ds.find(v);
            if rep[r] == usize::MAX {
                rep[r] = v;
            }
        }
        for v in 0..n {
            let keep = rep[ds.find(v)];
            if keep != v {
                self.alive[v] = false;
            }
        }
        for e in &mut self.edges {
            e.a = rep[ds.find(e.a)];
            e.b = rep[ds.find(e.b)];
        }
        self.drop_loops();
    }

    fn contract_random_edge(&mut self, rng: &mut StreamRng) {
        let total: u64 = self.edges.iter().map(|e| e.mult).sum();
        let mut r = rng.random_range(0..total);
        let e = *self
            .edges
            .iter()
            .find(|e| {
                if r < e.mult {
                    true
                } else {
                    r -= e.mult;
                    false
                }
            })
            .expect("r < total");
        let mut ds = DisjointSets::new(self.alive.len());
        ds.union(e.a, e.b);
        self.merge(&mut ds);
    }

    fn weighted_degrees(&self) -> Vec<u64> {
        let mut d = vec![0u64; self.alive.len()];
        for e in &self.edges {
            d[e.a] += e.mult;
            d[e.b] += e.mult;
        }
        d
    }

    /// One iteration of the random-walk loop. Returns whether anything was
    /// contracted.
    fn random_walk_step(&mut self, rng: &mut StreamRng, step_cap: u64) -> Result<bool> {
        let black = self.black_vertices();
        let deg = self.weighted_degrees();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.alive.len()];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.a].push(i);
            adj[e.b].push(i);
        }
        let black_deg: u64 = (0..deg.len()).filter(|&v| black[v]).map(|v| deg[v]).sum();
        let mut r = rng.random_range(0..black_deg);
        let u1 = (0..deg.len())
            .filter(|&v| black[v])
            .find(|&v| {
                if r < deg[v] {
                    true
                } else {
                    r -= deg[v];
                    false
                }
            })
            .expect("r < black degree");
        let mut traversed = Vec::new();
        let mut at = u1;
        let mut steps = 0u64;
        loop {
            let mut r = rng.random_range(0..deg[at]);
            let i = *adj[at]
                .iter()
                .find(|&&i| {
                    let m = self.edges[i].mult;
                    if r < m {
                        true
                    } else {
                        r -= m;
                        false
                    }
                })
                .expect("r < degree");
            traversed.push(i);
            let e = self.edges[i];
            at = if e.a == at { e.b } else { e.a };
            steps += 1;
            if black[at] {
                break;
            }
            if steps >= step_cap {
                return Err(Error::internal("random walk exceeded its step cap"));
            }
        }
        if at == u1 {
            return Ok(false);
        }
        let mut ds = DisjointSets::new(self.alive.len());
        for i in traversed {
            ds.union(self.edges[i].a, self.edges[i].b);
        }
        self.merge(&mut ds);
        Ok(true)
    }

    /// Black edges crossing a uniformly random non-empty proper subset of
    /// the remaining vertices.
    fn finish(&self, rng: &mut StreamRng) -> Option<CutInducedSet> {
        let verts: Vec<usize> = (0..self.alive.len()).filter(|&v| self.alive[v]).collect();
        let r = verts.len();
        if r < 2 {
            return None;
        }
        let mut side = vec![false; self.alive.len()];
        loop {
            for &v in &verts {
                side[v] = rng.random_bool(0.5);
            }
            let inside = verts.iter().filter(|&&v| side[v]).count();
            if inside > 0 && inside < r {
                break;
            }
        }
        CutInducedSet::new(
            self.edges
                .iter()
                .filter(|e| e.black && side[e.a] != side[e.b])
                .map(|e| e.id),
        )
        .ok()
    }

    /// Snapshot as a [`Multigraph`] on the live vertices (in index order)
    /// together with the surviving black ids.
    fn snapshot(&self) -> (Multigraph, BlackEdgeSet, Vec<usize>) {
        let mut map = vec![usize::MAX; self.alive.len()];
        let mut k = 0;
        for v in 0..self.alive.len() {
            if self.alive[v] {
                map[v] = k;
                k += 1;
            }
        }
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| Edge {
                id: e.id,
                a: map[e.a],
                b: map[e.b],
                weight: e.mult,
            })
            .collect();
        edges.sort_by_key(|e| e.id);
        let g = Multigraph::from_parts(k, edges, self.next_id);
        let black = BlackEdgeSet::new(&g, self.edges.iter().filter(|e| e.black).map(|e| e.id))
            .expect("ids come from the graph");
        (g, black, map)
    }
}

impl WorkEdge {
    fn other(&self, v: usize) -> usize {
        if self.a == v {
            self.b
        } else {
            self.a
        }
    }
}

fn check_run_inputs(g: &Multigraph, black: &BlackEdgeSet, alpha: f64) -> Result<usize> {
    if !(alpha >= 1.0) || !alpha.is_finite() {
        return Err(Error::domain("alpha must be a finite real >= 1"));
    }
    if black.is_empty() {
        return Err(Error::domain("black edge set is empty"));
    }
    if let Some(id) = black.ids().iter().find(|&&id| g.edge(id).is_none()) {
        return Err(Error::domain(format!(
            "black edge {id} is not in the graph"
        )));
    }
    g.require_connected("contraction")?;
    Ok((2.0 * alpha).ceil() as usize)
}

/// Splits off white vertex `v` completely and removes it; vertices above
/// `v` shift down by one. New edges are white and get fresh ids.
pub fn split_off_admissible(g: &Multigraph, v: usize, black: &BlackEdgeSet) -> Result<Multigraph> {
    if v >= g.vertex_count() {
        return Err(Error::domain(format!("vertex {v} out of range")));
    }
    let mut w = Work::new(g, black);
    w.split_off(v)?;
    Ok(w.snapshot().0)
}

/// Algorithm `Contract` on a graph whose edges the caller has already
/// duplicated. `None` means no black edge crossed the final subset.
pub fn contract_run(
    g: &Multigraph,
    black: &BlackEdgeSet,
    alpha: f64,
    rng: &mut StreamRng,
) -> Result<Option<CutInducedSet>> {
    contract_run_observed(g, black, alpha, rng, |_, _| {})
}

/// [`contract_run`], calling `observe` on the working graph after every
/// splitting phase and every contraction.
pub fn contract_run_observed<F>(
    g: &Multigraph,
    black: &BlackEdgeSet,
    alpha: f64,
    rng: &mut StreamRng,
    mut observe: F,
) -> Result<Option<CutInducedSet>>
where
    F: FnMut(&Multigraph, &BlackEdgeSet),
{
    let target = check_run_inputs(g, black, alpha)?;
    let mut w = Work::new(g, black);
    // The vertex count is re-checked after the white vertices are gone:
    // splitting alone can bring it to the target.
    loop {
        w.split_all_white()?;
        let (snap, b, _) = w.snapshot();
        observe(&snap, &b);
        if w.vertex_count() <= target || w.edges.is_empty() {
            break;
        }
        w.contract_random_edge(rng);
        let (snap, b, _) = w.snapshot();
        observe(&snap, &b);
    }
    Ok(w.finish(rng))
}

/// Algorithm `ContractRW`. No duplication or splitting is needed.
pub fn contract_rw_run(
    g: &Multigraph,
    black: &BlackEdgeSet,
    alpha: f64,
    rng: &mut StreamRng,
) -> Result<Option<CutInducedSet>> {
    let target = check_run_inputs(g, black, alpha)?;
    let step_cap = 1_000_000u64 * g.vertex_count() as u64;
    let mut w = Work::new(g, black);
    while w.black_vertices().iter().filter(|&&b| b).count() > target {
        w.random_walk_step(rng, step_cap)?;
    }
    Ok(w.finish(rng))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ContractAlgo {
    Split,
    Rw,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TargetFrequency {
    pub set: CutInducedSet,
    pub q: u64,
    pub count: u64,
    pub frequency: f64,
    /// `frequency ≥ bound − 3σ`, with `σ` the binomial standard error at
    /// the bound.
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContractReport {
    pub algo: ContractAlgo,
    pub n: usize,
    pub alpha: f64,
    /// `K = min_{e ∈ B} k_e`
    pub k_min: u64,
    pub trials: u64,
    pub seed: u64,
    /// `n^{−2α}`
    pub bound: f64,
    pub sigma: f64,
    /// Output set (ids joined by commas) to count.
    pub counts: BTreeMap<String, u64>,
    /// Runs in which no black edge crossed the final subset.
    pub empty: u64,
    /// Every cut-induced set with `q(F) ≤ αK`.
    pub targets: Vec<TargetFrequency>,
    pub pass: bool,
}

fn key(f: &CutInducedSet) -> String {
    f.ids()
        .iter()
        .map(|id| id.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Runs `trials` independent contractions (trial `t` draws from substream
/// `(seed, t)`) and compares every target frequency with `n^{−2α}`. The
/// `Split` algorithm duplicates the edges of `g` first.
pub fn contract_experiment(
    g: &Multigraph,
    black: &BlackEdgeSet,
    alpha: f64,
    algo: ContractAlgo,
    trials: u64,
    seed: u64,
) -> Result<ContractReport> {
    let n = g.vertex_count();
    if n > STATISTICAL_LIMIT {
        return Err(Error::domain(format!(
            "contraction experiments are limited to n <= {STATISTICAL_LIMIT} (got {n})"
        )));
    }
    if trials == 0 {
        return Err(Error::domain("trials must be positive"));
    }
    check_run_inputs(g, black, alpha)?;
    let k_min = black.min_connectivity(g)?;
    let input = match algo {
        ContractAlgo::Split => duplicate_edges(g)?,
        ContractAlgo::Rw => g.clone(),
    };
    let run = |t: u64| -> Result<Option<CutInducedSet>> {
        let mut rng = substream(seed, t);
        match algo {
            ContractAlgo::Split => contract_run(&input, black, alpha, &mut rng),
            ContractAlgo::Rw => contract_rw_run(&input, black, alpha, &mut rng),
        }
    };
    let add = |mut acc: BTreeMap<Option<CutInducedSet>, u64>, out: Option<CutInducedSet>| {
        *acc.entry(out).or_default() += 1;
        acc
    };
    #[cfg(feature = "parallel")]
    let table: BTreeMap<Option<CutInducedSet>, u64> = {
        use rayon::prelude::*;
        (0..trials)
            .into_par_iter()
            .map(run)
            .try_fold(BTreeMap::new, |acc, out| out.map(|o| add(acc, o)))
            .try_reduce(BTreeMap::new, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_default() += v;
                }
                Ok(a)
            })?
    };
    #[cfg(not(feature = "parallel"))]
    let table: BTreeMap<Option<CutInducedSet>, u64> = {
        let mut acc = BTreeMap::new();
        for t in 0..trials {
            acc = add(acc, run(t)?);
        }
        acc
    };

    let bound = (n as f64).powf(-2.0 * alpha);
    let sigma = (bound * (1.0 - bound) / trials as f64).sqrt();
    let threshold = alpha * k_min as f64;
    let targets: Vec<TargetFrequency> = cut_induced_sets(g, black)?
        .into_iter()
        .filter(|&(_, q)| q as f64 <= threshold + 1e-9)
        .map(|(set, q)| {
            let count = table.get(&Some(set.clone())).copied().unwrap_or(0);
            let frequency = count as f64 / trials as f64;
            TargetFrequency {
                set,
                q,
                count,
                frequency,
                pass: frequency >= bound - 3.0 * sigma,
            }
        })
        .collect();
    Ok(ContractReport {
        algo,
        n,
        alpha,
        k_min,
        trials,
        seed,
        bound,
        sigma,
        counts: table
            .iter()
            .filter_map(|(f, &c)| f.as_ref().map(|f| (key(f), c)))
            .collect(),
        empty: table.get(&None).copied().unwrap_or(0),
        pass: targets.iter().all(|t| t.pass),
        targets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::{edge_connectivities, local_edge_connectivity};
    use crate::verify::enumerate_cuts;
    use crate::{generate, GraphFamily};

    fn fam(f: GraphFamily) -> Multigraph {
        generate(&f, 0).unwrap()
    }

    #[test]
    fn doubling_makes_degrees_even() {
        let g = duplicate_edges(&fam(GraphFamily::Path { n: 3 })).unwrap();
        assert!(g.edges().iter().all(|e| e.weight == 2));
        let r = crate::generators::random_connected(9, 0.3, 3, 4).unwrap();
        let d = duplicate_edges(&r).unwrap();
        assert!(d.weighted_degrees().iter().all(|x| x % 2 == 0));
        assert!(crate::connectivity::global_min_cut(&d).unwrap().0 >= 2);
    }

    #[test]
    fn split_path_midpoint() {
        let g = fam(GraphFamily::Path { n: 3 });
        // black ends 0 and 2 would need a black edge; use none
        let out = split_off_admissible(&g, 1, &BlackEdgeSet::default()).unwrap();
        assert_eq!(out.vertex_count(), 2);
        assert_eq!(out.edge_count(), 1);
        assert_eq!(out.edges()[0].weight, 1);
        assert!(out.edges()[0].id >= g.next_edge_id());
    }

    #[test]
    fn split_figure1_keeps_st_connectivity() {
        let g = duplicate_edges(&fam(GraphFamily::Figure1 { n: 6 })).unwrap();
        let black = BlackEdgeSet::new(&g, [0]).unwrap();
        let mut h = g.clone();
        while h.vertex_count() > 2 {
            h = split_off_admissible(&h, 2, &black).unwrap();
        }
        assert_eq!(h.total_weight(), 10);
        assert_eq!(local_edge_connectivity(&h, 0, 1).unwrap(), 10);
        assert!(h.edge(0).is_some());
    }

    #[test]
    fn star_centre_splits_freely() {
        let star = Multigraph::from_weighted_edges(5, (1..5).map(|v| (0, v, 2))).unwrap();
        let out = split_off_admissible(&star, 0, &BlackEdgeSet::default()).unwrap();
        assert_eq!(out.vertex_count(), 4);
        assert_eq!(out.total_weight(), 4);
    }

    #[test]
    fn split_keeps_black_cut_weights_away_from_v() {
        let g =
            duplicate_edges(&crate::generators::random_connected(8, 0.4, 2, 11).unwrap()).unwrap();
        // blacken the edges not touching vertex 7
        let black = BlackEdgeSet::new(
            &g,
            g.edges()
                .iter()
                .filter(|e| e.a != 7 && e.b != 7)
                .map(|e| e.id),
        )
        .unwrap();
        let h = split_off_admissible(&g, 7, &black).unwrap();
        let black_only = |x: &Multigraph| {
            let ids: std::collections::BTreeSet<EdgeId> = x
                .edges()
                .iter()
                .filter(|e| !black.contains(e.id))
                .map(|e| e.id)
                .collect();
            x.without_edges(&ids)
        };
        let before: Vec<f64> = enumerate_cuts(&black_only(
            &g.induced_subgraph(&(0..7).collect::<Vec<_>>()),
        ))
        .unwrap()
        .map(|(_, w)| w)
        .collect();
        let after: Vec<f64> = enumerate_cuts(&black_only(&h))
            .unwrap()
            .map(|(_, w)| w)
            .collect();
        assert_eq!(before, after);
    }

    #[test]
    fn small_graph_skips_the_loop() {
        let g = duplicate_edges(&fam(GraphFamily::Path { n: 2 })).unwrap();
        let black = BlackEdgeSet::all(&g);
        let mut rng = substream(0, 0);
        let f = contract_run(&g, &black, 1.0, &mut rng).unwrap().unwrap();
        assert_eq!(f.ids(), &[0]);
    }

    #[test]
    fn black_connectivity_invariant_along_traces() {
        for seed in 0..10 {
            let g0 = crate::generators::random_connected(10, 0.35, 2, seed).unwrap();
            let k = edge_connectivities(&g0).unwrap();
            let kmax = *k.iter().max().unwrap();
            let black = BlackEdgeSet::new(
                &g0,
                g0.edges()
                    .iter()
                    .zip(&k)
                    .filter(|(_, &x)| x == kmax)
                    .map(|(e, _)| e.id),
            )
            .unwrap();
            let g = duplicate_edges(&g0).unwrap();
            let big_k = black.min_connectivity(&g).unwrap();
            let mut rng = substream(seed, 0);
            contract_run_observed(&g, &black, 1.0, &mut rng, |h, b| {
                if b.is_empty() || !h.is_connected() {
                    return;
                }
                let kh = edge_connectivities(h).unwrap();
                for (e, &x) in h.edges().iter().zip(&kh) {
                    if b.contains(e.id) {
                        assert!(x >= big_k, "edge {} has k = {x} < {big_k}", e.id);
                    }
                }
            })
            .unwrap();
        }
    }

    #[test]
    fn rw_with_all_black_and_equal_endpoints() {
        let g = fam(GraphFamily::Cycle { n: 6 });
        let black = BlackEdgeSet::all(&g);
        for seed in 0..50 {
            let f = contract_rw_run(&g, &black, 1.0, &mut substream(seed, 0)).unwrap();
            assert!(f.is_none_or(|f| f.len() == 2));
        }
    }

    #[test]
    fn experiment_is_deterministic() {
        let g = fam(GraphFamily::Figure1 { n: 5 });
        let black = BlackEdgeSet::new(&g, [0]).unwrap();
        let a = contract_experiment(&g, &black, 1.0, ContractAlgo::Split, 2000, 9).unwrap();
        let b = contract_experiment(&g, &black, 1.0, ContractAlgo::Split, 2000, 9).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.targets.len(), 1);
        assert_eq!(a.targets[0].q, 4);
        assert!(a.pass);
        let big = fam(GraphFamily::Cycle { n: 13 });
        assert!(
            contract_experiment(&big, &BlackEdgeSet::all(&big), 1.0, ContractAlgo::Rw, 10, 0)
                .is_err()
        );
    }
}
