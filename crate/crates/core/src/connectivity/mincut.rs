//! Stoer–Wagner global minimum cut on a dense weight matrix.

use crate::graph::Multigraph;

/// Returns `(value, side)` where `side[v]` marks one shore of a minimum cut.
/// Disconnected graphs give value 0 with the component of vertex 0 as the
/// shore. Requires at least two vertices.
pub fn stoer_wagner(g: &Multigraph) -> (u64, Vec<bool>) {
    let n = g.vertex_count();
    assert!(n >= 2, "global minimum cut needs two vertices");

    let (count, labels) = g.components();
    if count > 1 {
        return (0, labels.iter().map(|&c| c == labels[0]).collect());
    }

    let mut w = vec![vec![0u64; n]; n];
    for e in g.edges() {
        w[e.a][e.b] += e.weight;
        w[e.b][e.a] += e.weight;
    }
    // merged[v] lists the original vertices currently represented by v
    let mut merged: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut alive: Vec<usize> = (0..n).collect();
    let mut best = (u64::MAX, Vec::new());

    while alive.len() > 1 {
        let mut key = vec![0u64; n];
        let mut added = vec![false; n];
        let mut prev = alive[0];
        let mut last = alive[0];
        for step in 0..alive.len() {
            // most tightly connected vertex; ties go to the lowest index
            let mut sel = usize::MAX;
            for &v in &alive {
                if !added[v] && (sel == usize::MAX || key[v] > key[sel]) {
                    sel = v;
                }
            }
            added[sel] = true;
            if step + 1 == alive.len() {
                if key[sel] < best.0 {
                    best = (key[sel], merged[sel].clone());
                }
                last = sel;
            } else {
                prev = sel;
                for &v in &alive {
                    if !added[v] {
                        key[v] += w[sel][v];
                    }
                }
            }
        }
        // merge `last` into `prev`
        let moved = std::mem::take(&mut merged[last]);
        merged[prev].extend(moved);
        for &v in &alive {
            let x = w[last][v];
            w[prev][v] += x;
            w[v][prev] += x;
        }
        w[prev][prev] = 0;
        alive.retain(|&v| v != last);
    }

    let mut side = vec![false; n];
    for v in best.1 {
        side[v] = true;
    }
    (best.0, side)
}
