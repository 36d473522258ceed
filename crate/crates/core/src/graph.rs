//! Integer-weighted undirected multigraphs, real-weighted sparsifiers and
//! vertex cuts.
//!
//! Edges carry a stable [`EdgeId`]. Ids are assigned once and survive every
//! derived graph (induced subgraphs, edge removal, contraction), so results
//! computed on a derived graph can be mapped back onto the source graph.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};

pub type EdgeId = u64;

/// One weighted edge record. `weight` is the multiplicity `u_e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Edge {
    pub id: EdgeId,
    pub a: usize,
    pub b: usize,
    pub weight: u64,
}

impl Edge {
    /// The endpoint opposite `v`. `v` must be an endpoint.
    #[inline]
    pub fn other(&self, v: usize) -> usize {
        if v == self.a {
            self.b
        } else {
            self.a
        }
    }

    #[inline]
    pub fn crosses(&self, side: &[bool]) -> bool {
        side[self.a] != side[self.b]
    }
}

/// Undirected multigraph with integer multiplicities.
///
/// Self-loops are never stored. Parallel records between the same pair of
/// vertices are allowed (contraction produces them); loading from text merges
/// them instead.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    edges: Vec<Edge>,
    next_id: EdgeId,
}

impl Multigraph {
    pub fn new(vertex_count: usize) -> Self {
        Multigraph {
            n: vertex_count,
            edges: Vec::new(),
            next_id: 0,
        }
    }

    /// Builds a graph from `(a, b, weight)` triples, merging duplicate
    /// unordered pairs by adding weights and dropping self-loops. Ids follow
    /// first appearance.
    pub fn from_weighted_edges<I>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, u64)>,
    {
        let mut g = Multigraph::new(vertex_count);
        let mut slot: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (a, b, w) in edges {
            g.check_endpoints(a, b)?;
            if w == 0 {
                return Err(Error::domain("edge weight must be at least 1"));
            }
            if a == b {
                continue;
            }
            let key = (a.min(b), a.max(b));
            match slot.get(&key) {
                Some(&i) => g.edges[i].weight += w,
                None => {
                    slot.insert(key, g.edges.len());
                    g.push_edge(a, b, w)?;
                }
            }
        }
        Ok(g)
    }

    /// Builds a graph from explicit edge records, keeping their ids.
    pub fn from_edges(vertex_count: usize, mut edges: Vec<Edge>) -> Result<Self> {
        edges.retain(|e| e.a != e.b);
        edges.sort_by_key(|e| e.id);
        let mut g = Multigraph::new(vertex_count);
        for pair in edges.windows(2) {
            if pair[0].id == pair[1].id {
                return Err(Error::domain(format!("duplicate edge id {}", pair[0].id)));
            }
        }
        for e in &edges {
            g.check_endpoints(e.a, e.b)?;
            if e.weight == 0 {
                return Err(Error::domain(format!("edge {} has weight 0", e.id)));
            }
        }
        g.next_id = edges.last().map_or(0, |e| e.id + 1);
        g.edges = edges;
        Ok(g)
    }

    /// Assembles a graph from parts already known to be valid.
    pub(crate) fn from_parts(vertex_count: usize, edges: Vec<Edge>, next_id: EdgeId) -> Self {
        debug_assert!(edges.windows(2).all(|p| p[0].id < p[1].id));
        Multigraph {
            n: vertex_count,
            edges,
            next_id,
        }
    }

    /// Appends a new edge record without merging. Self-loops are ignored and
    /// return `None`.
    pub fn push_edge(&mut self, a: usize, b: usize, weight: u64) -> Result<Option<EdgeId>> {
        self.check_endpoints(a, b)?;
        if weight == 0 {
            return Err(Error::domain("edge weight must be at least 1"));
        }
        if a == b {
            return Ok(None);
        }
        let id = self.next_id;
        self.next_id += 1;
        self.edges.push(Edge { id, a, b, weight });
        Ok(Some(id))
    }

    fn check_endpoints(&self, a: usize, b: usize) -> Result<()> {
        if a >= self.n || b >= self.n {
            return Err(Error::domain(format!(
                "vertex index out of range: ({a}, {b}) with n = {}",
                self.n
            )));
        }
        Ok(())
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Id the next pushed edge will receive.
    pub fn next_edge_id(&self) -> EdgeId {
        self.next_id
    }

    pub fn edge_index(&self, id: EdgeId) -> Option<usize> {
        self.edges.binary_search_by_key(&id, |e| e.id).ok()
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edge_index(id).map(|i| &self.edges[i])
    }

    pub fn total_weight(&self) -> u64 {
        self.edges.iter().map(|e| e.weight).sum()
    }

    pub fn max_weight(&self) -> u64 {
        self.edges.iter().map(|e| e.weight).max().unwrap_or(0)
    }

    pub fn weighted_degrees(&self) -> Vec<u64> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            deg[e.a] += e.weight;
            deg[e.b] += e.weight;
        }
        deg
    }

    /// `adj[v]` lists `(neighbour, edge index)` for every record at `v`.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.a].push((e.b, i));
            adj[e.b].push((e.a, i));
        }
        adj
    }

    /// Connected component label of every vertex, labels numbered in order of
    /// their smallest vertex. Returns `(count, labels)`.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let mut dsu = DisjointSets::new(self.n);
        for e in &self.edges {
            dsu.union(e.a, e.b);
        }
        let mut label = vec![usize::MAX; self.n];
        let mut root_label = vec![usize::MAX; self.n];
        let mut count = 0;
        for v in 0..self.n {
            let r = dsu.find(v);
            if root_label[r] == usize::MAX {
                root_label[r] = count;
                count += 1;
            }
            label[v] = root_label[r];
        }
        (count, label)
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().0 == 1
    }

    pub(crate) fn require_connected(&self, what: &str) -> Result<()> {
        if !self.is_connected() {
            return Err(Error::domain(format!("{what} requires a connected graph")));
        }
        Ok(())
    }

    /// Subgraph induced by `vertices` (listed in the order that defines the
    /// new indices). Edge ids are preserved.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Multigraph {
        let mut map = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            map[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| map[e.a] != usize::MAX && map[e.b] != usize::MAX)
            .map(|e| Edge {
                a: map[e.a],
                b: map[e.b],
                ..*e
            })
            .collect();
        Multigraph {
            n: vertices.len(),
            edges,
            next_id: self.next_id,
        }
    }

    /// Same vertex set with the listed edge records removed.
    pub fn without_edges(&self, ids: &BTreeSet<EdgeId>) -> Multigraph {
        Multigraph {
            n: self.n,
            edges: self
                .edges
                .iter()
                .filter(|e| !ids.contains(&e.id))
                .copied()
                .collect(),
            next_id: self.next_id,
        }
    }

    /// Every multiplicity multiplied by `factor` (≥ 1).
    pub fn scaled(&self, factor: u64) -> Result<Multigraph> {
        if factor == 0 {
            return Err(Error::domain("scale factor must be positive"));
        }
        let mut g = self.clone();
        for e in &mut g.edges {
            e.weight = e
                .weight
                .checked_mul(factor)
                .ok_or_else(|| Error::domain("edge weight overflow while scaling"))?;
        }
        Ok(g)
    }

    /// Identifies the endpoints of edge `id`. Self-loops created by the
    /// contraction are removed; parallel records are kept with their ids.
    /// The returned mapping sends every old vertex index to its new index.
    pub fn contract_edge(&self, id: EdgeId) -> Result<(Multigraph, Vec<usize>)> {
        let e = *self
            .edge(id)
            .ok_or_else(|| Error::domain(format!("unknown edge id {id}")))?;
        let (keep, gone) = (e.a.min(e.b), e.a.max(e.b));
        let mapping: Vec<usize> = (0..self.n)
            .map(|v| match v.cmp(&gone) {
                std::cmp::Ordering::Less => v,
                std::cmp::Ordering::Equal => keep,
                std::cmp::Ordering::Greater => v - 1,
            })
            .collect();
        let edges = self
            .edges
            .iter()
            .map(|x| Edge {
                a: mapping[x.a],
                b: mapping[x.b],
                ..*x
            })
            .filter(|x| x.a != x.b)
            .collect();
        Ok((
            Multigraph {
                n: self.n - 1,
                edges,
                next_id: self.next_id,
            },
            mapping,
        ))
    }
}

/// Union-find with path halving and union by size.
#[derive(Clone, Debug)]
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

/// A sampled edge of a [`Sparsifier`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SparseEdge {
    pub id: EdgeId,
    pub a: usize,
    pub b: usize,
    pub weight: f64,
}

/// Real-weighted subgraph of a source multigraph on the same vertex set.
/// Only strictly positive weights are stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Sparsifier {
    n: usize,
    edges: Vec<SparseEdge>,
}

impl Sparsifier {
    pub fn new(vertex_count: usize, mut edges: Vec<SparseEdge>) -> Result<Self> {
        edges.retain(|e| e.weight > 0.0);
        edges.sort_by_key(|e| e.id);
        for e in &edges {
            if e.a >= vertex_count || e.b >= vertex_count || e.a == e.b {
                return Err(Error::domain(format!("invalid sparsifier edge {}", e.id)));
            }
            if !e.weight.is_finite() {
                return Err(Error::domain(format!("non-finite weight on edge {}", e.id)));
            }
        }
        if edges.windows(2).any(|p| p[0].id == p[1].id) {
            return Err(Error::domain("duplicate edge id in sparsifier"));
        }
        Ok(Sparsifier {
            n: vertex_count,
            edges,
        })
    }

    /// Builds a sparsifier over `g` from per-edge weights aligned with
    /// `g.edges()`. Zero weights are dropped.
    pub fn from_aligned_weights(g: &Multigraph, weights: &[f64]) -> Sparsifier {
        debug_assert_eq!(weights.len(), g.edge_count());
        let edges = g
            .edges()
            .iter()
            .zip(weights)
            .filter(|(_, &w)| w > 0.0)
            .map(|(e, &w)| SparseEdge {
                id: e.id,
                a: e.a,
                b: e.b,
                weight: w,
            })
            .collect();
        Sparsifier { n: g.n, edges }
    }

    /// The graph itself viewed as a sparsifier.
    pub fn from_multigraph(g: &Multigraph) -> Sparsifier {
        let weights: Vec<f64> = g.edges().iter().map(|e| e.weight as f64).collect();
        Sparsifier::from_aligned_weights(g, &weights)
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[SparseEdge] {
        &self.edges
    }

    /// Weight of edge `id`, zero when it was not sampled.
    pub fn weight_of(&self, id: EdgeId) -> f64 {
        self.edges
            .binary_search_by_key(&id, |e| e.id)
            .map_or(0.0, |i| self.edges[i].weight)
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.weight).sum()
    }

    pub fn scaled(&self, factor: f64) -> Sparsifier {
        let edges = self
            .edges
            .iter()
            .map(|e| SparseEdge {
                weight: e.weight * factor,
                ..*e
            })
            .filter(|e| e.weight > 0.0)
            .collect();
        Sparsifier { n: self.n, edges }
    }

    /// Every weight multiplied by `factor` and rounded to an integer
    /// multiplicity (at least 1), keeping edge ids.
    pub fn to_scaled_multigraph(&self, factor: f64) -> Result<Multigraph> {
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let w = (e.weight * factor).round();
                if !(w < u64::MAX as f64) {
                    return Err(Error::domain("scaled weight does not fit in 64 bits"));
                }
                Ok(Edge {
                    id: e.id,
                    a: e.a,
                    b: e.b,
                    weight: (w as u64).max(1),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Multigraph::from_edges(self.n, edges)
    }

    /// Checks that every edge exists in `g` with the same endpoints.
    pub fn is_subgraph_of(&self, g: &Multigraph) -> bool {
        self.n == g.vertex_count()
            && self.edges.iter().all(|s| {
                g.edge(s.id)
                    .is_some_and(|e| (e.a, e.b) == (s.a, s.b) || (e.a, e.b) == (s.b, s.a))
            })
    }
}

/// Anything that has a vertex count and real edge weights.
pub trait WeightedGraph {
    fn vertex_count(&self) -> usize;
    fn weighted_edges(&self) -> Vec<(usize, usize, f64)>;
}

impl WeightedGraph for Multigraph {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn weighted_edges(&self) -> Vec<(usize, usize, f64)> {
        self.edges
            .iter()
            .map(|e| (e.a, e.b, e.weight as f64))
            .collect()
    }
}

impl WeightedGraph for Sparsifier {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn weighted_edges(&self) -> Vec<(usize, usize, f64)> {
        self.edges.iter().map(|e| (e.a, e.b, e.weight)).collect()
    }
}

/// A vertex set `S`, stored as a membership vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexCut {
    members: Vec<bool>,
}

impl VertexCut {
    pub fn from_members(vertex_count: usize, members: &[usize]) -> Result<Self> {
        let mut side = vec![false; vertex_count];
        for &v in members {
            if v >= vertex_count {
                return Err(Error::domain(format!("vertex {v} out of range")));
            }
            side[v] = true;
        }
        Ok(VertexCut { members: side })
    }

    pub fn from_side(side: Vec<bool>) -> Self {
        VertexCut { members: side }
    }

    /// Bit `v` of `mask` set means `v ∈ S`. Requires `vertex_count ≤ 64`.
    pub fn from_mask(vertex_count: usize, mask: u64) -> Self {
        assert!(vertex_count <= 64);
        VertexCut {
            members: (0..vertex_count).map(|v| mask >> v & 1 == 1).collect(),
        }
    }

    pub fn mask(&self) -> Option<u64> {
        (self.members.len() <= 64).then(|| {
            self.members
                .iter()
                .enumerate()
                .filter(|(_, &m)| m)
                .fold(0u64, |acc, (v, _)| acc | 1 << v)
        })
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.members[v]
    }

    pub fn side(&self) -> &[bool] {
        &self.members
    }

    pub fn vertex_count(&self) -> usize {
        self.members.len()
    }

    pub fn size(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    pub fn members(&self) -> Vec<usize> {
        (0..self.members.len())
            .filter(|&v| self.members[v])
            .collect()
    }

    pub fn complement(&self) -> VertexCut {
        VertexCut {
            members: self.members.iter().map(|m| !m).collect(),
        }
    }

    pub fn is_proper(&self) -> bool {
        let k = self.size();
        k > 0 && k < self.members.len()
    }
}

/// `u(δ(S))`: total weight of edges with exactly one endpoint in `S`.
pub fn cut_weight<G: WeightedGraph + ?Sized>(g: &G, s: &VertexCut) -> Result<f64> {
    if s.vertex_count() != g.vertex_count() {
        return Err(Error::domain("cut and graph have different vertex counts"));
    }
    if !s.is_proper() {
        return Err(Error::domain("cut side must be a non-empty proper subset"));
    }
    Ok(g.weighted_edges()
        .into_iter()
        .filter(|&(a, b, _)| s.contains(a) != s.contains(b))
        .map(|(_, _, w)| w)
        .sum())
}

/// Integer cut weight of `side` in `g`, no validation.
#[cfg(test)]
pub(crate) fn side_weight(g: &Multigraph, side: &[bool]) -> u64 {
    g.edges()
        .iter()
        .filter(|e| e.crosses(side))
        .map(|e| e.weight)
        .sum()
}
