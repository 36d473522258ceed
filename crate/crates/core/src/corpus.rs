//! Fixed graph collections shared by the test suites, the CLI and the demo.

use crate::error::Result;
use crate::generators::{generate, random_connected, GraphFamily};
use crate::graph::Multigraph;

#[derive(Clone, Debug)]
pub struct CorpusGraph {
    pub name: String,
    pub graph: Multigraph,
}

fn entry(name: impl Into<String>, graph: Multigraph) -> CorpusGraph {
    CorpusGraph {
        name: name.into(),
        graph,
    }
}

fn family(f: GraphFamily) -> Result<CorpusGraph> {
    let name = format!("{}{}", f.name(), params(&f));
    Ok(entry(name, generate(&f, 0)?))
}

fn params(f: &GraphFamily) -> String {
    match *f {
        GraphFamily::Path { n }
        | GraphFamily::Cycle { n }
        | GraphFamily::Complete { n }
        | GraphFamily::Figure1 { n }
        | GraphFamily::Figure2 { n } => format!("({n})"),
        GraphFamily::RandomGnp { n, p } => format!("({n},{p})"),
        GraphFamily::Figure3 { k } => format!("({k})"),
        GraphFamily::TreeLowerBound { n, k } => format!("({n},{k})"),
        GraphFamily::Dumbbell { clique } => format!("({clique})"),
    }
}

/// First connected `G(n, p)` sample at seed `seed, seed + 1, ...`.
pub fn connected_gnp(n: usize, p: f64, seed: u64) -> Result<(u64, Multigraph)> {
    let f = GraphFamily::RandomGnp { n, p };
    let mut s = seed;
    loop {
        let g = generate(&f, s)?;
        if g.is_connected() {
            return Ok((s, g));
        }
        s += 1;
    }
}

/// 50 random connected graphs with `n` spread over `5..=200`, expected
/// degree about 6 and weights in `1..=3`.
pub fn random_corpus() -> Result<Vec<CorpusGraph>> {
    (0..50u64)
        .map(|i| {
            let n = 5 + (i as usize * 195).div_ceil(49);
            let p = (6.0 / n as f64).min(1.0);
            Ok(entry(
                format!("random({n},{p:.3},seed={i})"),
                random_connected(n, p, 3, i)?,
            ))
        })
        .collect()
}

/// Ten graphs with `n ≤ 14` for exhaustive sparsifier checks.
pub fn small_corpus() -> Result<Vec<CorpusGraph>> {
    let mut out = vec![
        family(GraphFamily::Figure1 { n: 8 })?,
        family(GraphFamily::Figure3 { k: 4 })?,
        family(GraphFamily::Dumbbell { clique: 4 })?,
    ];
    for (n, p, seed) in [(12, 0.4, 1), (14, 0.3, 2)] {
        let (s, g) = connected_gnp(n, p, seed)?;
        out.push(entry(format!("random-gnp({n},{p},seed={s})"), g));
    }
    out.push(family(GraphFamily::Cycle { n: 10 })?);
    out.push(family(GraphFamily::Complete { n: 8 })?);
    out.push(family(GraphFamily::Figure2 { n: 6 })?);
    out.push(family(GraphFamily::TreeLowerBound { n: 3, k: 2 })?);
    out.push(entry(
        "weighted(12,0.35,seed=3)",
        random_connected(12, 0.35, 3, 3)?,
    ));
    Ok(out)
}

/// Graphs with `n ≤ 12` for exhaustive cut counting.
pub fn counting_corpus() -> Result<Vec<CorpusGraph>> {
    let mut out: Vec<CorpusGraph> = small_corpus()?
        .into_iter()
        .filter(|c| c.graph.vertex_count() <= 12)
        .collect();
    out.push(family(GraphFamily::Cycle { n: 6 })?);
    out.push(family(GraphFamily::Figure1 { n: 5 })?);
    out.push(family(GraphFamily::Complete { n: 5 })?);
    for seed in 0..6 {
        let n = 7 + seed as usize % 6;
        out.push(entry(
            format!("weighted({n},0.4,seed={seed})"),
            random_connected(n, 0.4, 4, 100 + seed)?,
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_shapes() {
        let r = random_corpus().unwrap();
        assert_eq!(r.len(), 50);
        assert_eq!(r[0].graph.vertex_count(), 5);
        assert_eq!(r[49].graph.vertex_count(), 200);
        assert!(r.iter().all(|c| c.graph.is_connected()));
        let s = small_corpus().unwrap();
        assert_eq!(s.len(), 10);
        assert!(s
            .iter()
            .all(|c| c.graph.vertex_count() <= 14 && c.graph.is_connected()));
        assert!(counting_corpus()
            .unwrap()
            .iter()
            .all(|c| c.graph.vertex_count() <= 12));
    }
}
