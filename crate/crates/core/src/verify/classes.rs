//! Connectivity classes `E_i`, cut-induced sets and the bad events of the
//! concentration argument.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::analytic::g_inv;
use super::enumerate::{check_enumerable, walk_cuts};
use super::{max_cut_error_exact, ClassDeviation, ErrorReport};
use crate::connectivity::edge_connectivities;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Multigraph, Sparsifier};

/// A restriction set `B` of edge ids. Endpoints of black edges are black
/// vertices, all others white.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BlackEdgeSet(BTreeSet<EdgeId>);

impl BlackEdgeSet {
    /// Fails if some id is not an edge of `g`.
    pub fn new(g: &Multigraph, ids: impl IntoIterator<Item = EdgeId>) -> Result<Self> {
        let ids: BTreeSet<EdgeId> = ids.into_iter().collect();
        if let Some(bad) = ids.iter().find(|&&id| g.edge(id).is_none()) {
            return Err(Error::domain(format!(
                "black edge {bad} is not in the graph"
            )));
        }
        Ok(BlackEdgeSet(ids))
    }

    pub fn all(g: &Multigraph) -> Self {
        BlackEdgeSet(g.edges().iter().map(|e| e.id).collect())
    }

    pub fn ids(&self) -> &BTreeSet<EdgeId> {
        &self.0
    }

    pub fn contains(&self, id: EdgeId) -> bool {
        self.0.contains(&id)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn black_vertices(&self, g: &Multigraph) -> Vec<bool> {
        let mut black = vec![false; g.vertex_count()];
        for e in g.edges().iter().filter(|e| self.contains(e.id)) {
            black[e.a] = true;
            black[e.b] = true;
        }
        black
    }

    /// `K = min_{e ∈ B} k_e`.
    pub fn min_connectivity(&self, g: &Multigraph) -> Result<u64> {
        if self.is_empty() {
            return Err(Error::domain("empty black edge set has no K"));
        }
        let k = edge_connectivities(g)?;
        Ok(g.edges()
            .iter()
            .zip(&k)
            .filter(|(e, _)| self.contains(e.id))
            .map(|(_, &k)| k)
            .min()
            .unwrap_or(0))
    }
}

/// Sorted, non-empty set of edge ids.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct CutInducedSet(Vec<EdgeId>);

impl CutInducedSet {
    pub fn new(ids: impl IntoIterator<Item = EdgeId>) -> Result<Self> {
        let ids: BTreeSet<EdgeId> = ids.into_iter().collect();
        if ids.is_empty() {
            return Err(Error::domain("a cut-induced set is non-empty"));
        }
        Ok(CutInducedSet(ids.into_iter().collect()))
    }

    pub fn ids(&self) -> &[EdgeId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|F|`, the total multiplicity in `g`.
    pub fn size_in(&self, g: &Multigraph) -> u64 {
        self.0
            .iter()
            .filter_map(|&id| g.edge(id))
            .map(|e| e.weight)
            .sum()
    }
}

/// `E_i = {e : 2^i ≤ k_e < 2^{i+1}}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConnectivityClasses {
    pub classes: BTreeMap<u32, BTreeSet<EdgeId>>,
    /// `k_e` aligned with the graph's edges.
    pub connectivity: Vec<u64>,
}

fn class_index(k: u64) -> u32 {
    63 - k.max(1).leading_zeros()
}

impl ConnectivityClasses {
    pub fn class_of(&self, g: &Multigraph, id: EdgeId) -> Option<u32> {
        g.edge_index(id).map(|i| class_index(self.connectivity[i]))
    }

    pub fn class(&self, i: u32) -> Option<&BTreeSet<EdgeId>> {
        self.classes.get(&i)
    }

    /// Checks `|F| < n²·2^i` for every cut-induced `F ⊆ E_i`.
    pub fn validate_fsmall(&self, g: &Multigraph) -> Result<bool> {
        let n2 = (g.vertex_count() as u128).pow(2);
        for (&i, ids) in &self.classes {
            let b = BlackEdgeSet(ids.clone());
            for f in cut_induced_sets(g, &b)?.keys() {
                if f.size_in(g) as u128 >= n2 << i {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

pub fn connectivity_classes(g: &Multigraph) -> Result<ConnectivityClasses> {
    let connectivity = edge_connectivities(g)?;
    let mut classes: BTreeMap<u32, BTreeSet<EdgeId>> = BTreeMap::new();
    for (e, &k) in g.edges().iter().zip(&connectivity) {
        classes.entry(class_index(k)).or_default().insert(e.id);
    }
    Ok(ConnectivityClasses {
        classes,
        connectivity,
    })
}

/// Visits every cut with its weight and the bitset of restriction edges it
/// crosses (bit `j` is the `j`-th id of `b` in ascending order).
fn walk_induced<F>(g: &Multigraph, b: &BTreeSet<EdgeId>, mut visit: F) -> Result<()>
where
    F: FnMut(u64, &[u64]),
{
    let n = g.vertex_count();
    check_enumerable(n)?;
    let black: Vec<(usize, usize)> = b
        .iter()
        .map(|&id| {
            g.edge(id)
                .map(|e| (e.a, e.b))
                .ok_or_else(|| Error::domain(format!("edge {id} is not in the graph")))
        })
        .collect::<Result<_>>()?;
    let ends: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.a, e.b)).collect();
    let weights: Vec<f64> = g.edges().iter().map(|e| e.weight as f64).collect();
    let mut bits = vec![0u64; black.len().div_ceil(64)];
    walk_cuts(n, &ends, 1, &weights, |mask, t| {
        bits.iter_mut().for_each(|w| *w = 0);
        for (j, &(a, b)) in black.iter().enumerate() {
            if (mask >> a ^ mask >> b) & 1 == 1 {
                bits[j / 64] |= 1 << (j % 64);
            }
        }
        visit(t[0].round() as u64, &bits);
    });
    Ok(())
}

fn bits_to_set(b: &BTreeSet<EdgeId>, bits: &[u64]) -> CutInducedSet {
    CutInducedSet(
        b.iter()
            .enumerate()
            .filter(|(j, _)| bits[j / 64] >> (j % 64) & 1 == 1)
            .map(|(_, &id)| id)
            .collect(),
    )
}

/// Every non-empty `δ(S) ∩ B` with its `q`, the minimum weight of a cut
/// inducing it.
pub fn cut_induced_sets(g: &Multigraph, b: &BlackEdgeSet) -> Result<BTreeMap<CutInducedSet, u64>> {
    let mut raw: BTreeMap<Vec<u64>, u64> = BTreeMap::new();
    walk_induced(g, b.ids(), |w, bits| {
        if bits.iter().any(|&x| x != 0) {
            raw.entry(bits.to_vec())
                .and_modify(|q| *q = (*q).min(w))
                .or_insert(w);
        }
    })?;
    Ok(raw
        .into_iter()
        .map(|(bits, q)| (bits_to_set(b.ids(), &bits), q))
        .collect())
}

/// `q(F)` with respect to `restriction`: the minimum weight of a cut `C`
/// with `C ∩ restriction = F`.
pub fn q_value(g: &Multigraph, restriction: &BTreeSet<EdgeId>, f: &CutInducedSet) -> Result<u64> {
    if let Some(id) = f.ids().iter().find(|id| !restriction.contains(id)) {
        return Err(Error::domain(format!(
            "edge {id} is outside the restriction set"
        )));
    }
    let target: BTreeSet<EdgeId> = f.ids().iter().copied().collect();
    let mut want = vec![0u64; restriction.len().div_ceil(64)];
    for (j, id) in restriction.iter().enumerate() {
        if target.contains(id) {
            want[j / 64] |= 1 << (j % 64);
        }
    }
    let mut best: Option<u64> = None;
    walk_induced(g, restriction, |w, bits| {
        if bits == want.as_slice() {
            best = Some(best.map_or(w, |b| b.min(w)));
        }
    })?;
    best.ok_or_else(|| Error::domain("the set is not induced by any cut"))
}

/// Number of distinct non-empty `δ(S) ∩ B` over cuts of weight at most
/// `threshold`. Every black edge must have `k_e ≥ K`; `K` defaults to the
/// minimum over `B`.
pub fn count_cut_induced_sets(
    g: &Multigraph,
    b: &BlackEdgeSet,
    threshold: f64,
    k_min: Option<u64>,
) -> Result<u64> {
    if b.is_empty() {
        return Ok(0);
    }
    if let Some(k_min) = k_min {
        let k = edge_connectivities(g)?;
        for (e, &ke) in g.edges().iter().zip(&k) {
            if b.contains(e.id) && ke < k_min {
                return Err(Error::domain(format!(
                    "black edge {} ({}, {}) has k_e = {ke} < K = {k_min}",
                    e.id, e.a, e.b
                )));
            }
        }
    }
    Ok(cut_induced_sets(g, b)?
        .values()
        .filter(|&&q| q as f64 <= threshold + 1e-9)
        .count() as u64)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BadEventFlags {
    pub class: u32,
    /// `|F|`
    pub size: u64,
    pub q: u64,
    /// `q(F) / 2^i`
    pub alpha: f64,
    /// `X_F`
    pub sampled_weight: f64,
    pub a: bool,
    pub b: bool,
    pub c: bool,
}

/// Evaluates `A_F`, `B_F` and `C_F` for `F ⊆ E_i`, with `q` taken over the
/// restriction `E_i`.
pub fn bad_event_flags(
    g: &Multigraph,
    sp: &Sparsifier,
    classes: &ConnectivityClasses,
    f: &CutInducedSet,
    class: u32,
    epsilon: f64,
) -> Result<BadEventFlags> {
    let restriction = classes
        .class(class)
        .ok_or_else(|| Error::domain(format!("class {class} is empty")))?;
    let q = q_value(g, restriction, f)?;
    bad_event_flags_with_q(g, sp, f, class, q, epsilon)
}

/// [`bad_event_flags`] with `q(F)` already known, e.g. from
/// [`cut_induced_sets`] over the class.
pub fn bad_event_flags_with_q(
    g: &Multigraph,
    sp: &Sparsifier,
    f: &CutInducedSet,
    class: u32,
    q: u64,
    epsilon: f64,
) -> Result<BadEventFlags> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::domain("bad events need ln n > 0, i.e. n >= 2"));
    }
    let ln_n = (n as f64).ln();
    let size = f.size_in(g);
    let x: f64 = f.ids().iter().map(|&id| sp.weight_of(id)).sum();
    let size_f = size as f64;
    let dev = x - size_f;
    let c_limit = g_inv(epsilon * epsilon * q as f64 / (size_f * ln_n))? * size_f;
    Ok(BadEventFlags {
        class,
        size,
        q,
        alpha: q as f64 / 2f64.powi(class as i32),
        sampled_weight: x,
        a: dev.abs() > epsilon * size_f,
        b: dev.abs() > epsilon * q as f64 / ln_n,
        c: dev > c_limit,
    })
}

/// `2 n^{−dαε²/6}`.
pub fn claim_bad_event_bound(n: usize, d: f64, alpha: f64, epsilon: f64) -> f64 {
    2.0 * (n as f64).powf(-d * alpha * epsilon * epsilon / 6.0)
}

/// `t = lg|C| − 4 lg n − lg(1/ε)`.
pub fn proof_threshold(cut_weight: f64, n: usize, epsilon: f64) -> f64 {
    cut_weight.log2() - 4.0 * (n as f64).log2() + epsilon.log2()
}

/// Checks `Σ_{i ≤ lg|C| − 2 lg n − d} |C ∩ E_i| < 2^{1−d}|C|` on every cut.
pub fn concentrate_holds(g: &Multigraph, classes: &ConnectivityClasses, d: u32) -> Result<bool> {
    let n = g.vertex_count();
    check_enumerable(n)?;
    let idx: Vec<u32> = classes.classes.keys().copied().collect();
    let ch = idx.len() + 1;
    let ends: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.a, e.b)).collect();
    let mut weights = vec![0.0; ends.len() * ch];
    for (j, (e, &k)) in g.edges().iter().zip(&classes.connectivity).enumerate() {
        let c = idx.binary_search(&class_index(k)).unwrap_or(0);
        weights[j * ch] = e.weight as f64;
        weights[j * ch + 1 + c] = e.weight as f64;
    }
    let lg_n = (n as f64).log2();
    let mut ok = true;
    walk_cuts(n, &ends, ch, &weights, |_, t| {
        let c = t[0];
        if c <= 0.5 {
            return;
        }
        let limit = c.log2() - 2.0 * lg_n - d as f64;
        let low: f64 = idx
            .iter()
            .zip(&t[1..])
            .filter(|(&i, _)| i as f64 <= limit)
            .map(|(_, w)| w)
            .sum();
        if low >= 2f64.powi(1 - d as i32) * c {
            ok = false;
        }
    });
    Ok(ok)
}

/// The exact error report, with per-class deviations `X_{C_i} − |C_i|` for
/// the maximising cut `C`.
pub fn cut_class_error_decomposition(g: &Multigraph, sp: &Sparsifier) -> Result<ErrorReport> {
    let mut report = max_cut_error_exact(g, sp)?;
    let classes = connectivity_classes(g)?;
    let mut side = vec![false; g.vertex_count()];
    for &v in &report.argmax {
        side[v] = true;
    }
    let mut per: BTreeMap<u32, (f64, f64)> = BTreeMap::new();
    for (e, &k) in g.edges().iter().zip(&classes.connectivity) {
        let entry = per.entry(class_index(k)).or_default();
        if e.crosses(&side) {
            entry.0 += e.weight as f64;
            entry.1 += sp.weight_of(e.id);
        }
    }
    report.class_deviations = per
        .into_iter()
        .map(|(class, (t, s))| ClassDeviation {
            class,
            true_weight: t,
            sampled_weight: s,
            deviation: s - t,
        })
        .collect();
    Ok(report)
}
