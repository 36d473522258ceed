//! Edge-list text format.
//!
//! ```text
//! # comment
//! n m
//! a b w
//! ...
//! ```
//!
//! Vertices are 0-based. Graph weights are positive integers, sparsifier
//! weights positive decimals. `#` starts a comment anywhere on a line.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Multigraph, SparseEdge, Sparsifier};

struct Record<'a> {
    line: usize,
    fields: Vec<&'a str>,
}

fn records(text: &str) -> impl Iterator<Item = Record<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = body.split_whitespace().collect();
        (!fields.is_empty()).then_some(Record {
            line: i + 1,
            fields,
        })
    })
}

/// Parses the header and returns `(n, m, edge records)`.
fn split_document(text: &str) -> Result<(usize, usize, Vec<Record<'_>>)> {
    let mut it = records(text);
    let header = it
        .next()
        .ok_or_else(|| Error::parse(1, "missing \"n m\" header"))?;
    if header.fields.len() != 2 {
        return Err(Error::parse(header.line, "header must be \"n m\""));
    }
    let n: usize = header.fields[0]
        .parse()
        .map_err(|_| Error::parse(header.line, "vertex count is not a non-negative integer"))?;
    if n == 0 {
        return Err(Error::parse(header.line, "vertex count must be positive"));
    }
    let m: usize = header.fields[1]
        .parse()
        .map_err(|_| Error::parse(header.line, "edge count is not a non-negative integer"))?;
    let body: Vec<Record> = it.collect();
    if body.len() != m {
        let line = body.last().map_or(header.line, |r| r.line);
        return Err(Error::parse(
            line,
            format!("expected {m} edge lines, found {}", body.len()),
        ));
    }
    Ok((n, m, body))
}

fn endpoints(rec: &Record, n: usize) -> Result<(usize, usize)> {
    if rec.fields.len() != 3 {
        return Err(Error::parse(
            rec.line,
            "malformed edge line, expected \"a b w\"",
        ));
    }
    let parse_vertex = |s: &str| -> Result<usize> {
        let v: usize = s
            .parse()
            .map_err(|_| Error::parse(rec.line, format!("malformed vertex index {s:?}")))?;
        if v >= n {
            return Err(Error::parse(rec.line, "vertex index out of range"));
        }
        Ok(v)
    };
    Ok((parse_vertex(rec.fields[0])?, parse_vertex(rec.fields[1])?))
}

/// Parses an integer-weighted graph. Duplicate pairs merge by summing
/// weights; ids follow line order.
pub fn parse_graph(text: &str) -> Result<Multigraph> {
    let (n, _, body) = split_document(text)?;
    let mut triples = Vec::with_capacity(body.len());
    for rec in &body {
        let (a, b) = endpoints(rec, n)?;
        let raw = rec.fields[2];
        let w: u64 = match raw.parse::<u64>() {
            Ok(w) => w,
            Err(_) => {
                return Err(match raw.parse::<f64>() {
                    Ok(x) if x < 1.0 => Error::parse(rec.line, "weight < 1"),
                    Ok(_) => Error::parse(rec.line, "weight not integer"),
                    Err(_) if raw.starts_with('-') => Error::parse(rec.line, "weight < 1"),
                    Err(_) => Error::parse(rec.line, format!("malformed weight {raw:?}")),
                })
            }
        };
        if w < 1 {
            return Err(Error::parse(rec.line, "weight < 1"));
        }
        if a == b {
            return Err(Error::parse(rec.line, "self-loop"));
        }
        triples.push((a, b, w));
    }
    Multigraph::from_weighted_edges(n, triples)
}

/// Parses a real-weighted sparsifier. Edge ids follow line order; duplicate
/// pairs merge.
pub fn parse_sparsifier(text: &str) -> Result<Sparsifier> {
    let (n, _, body) = split_document(text)?;
    let mut edges: Vec<SparseEdge> = Vec::with_capacity(body.len());
    let mut seen = std::collections::BTreeMap::new();
    for rec in &body {
        let (a, b) = endpoints(rec, n)?;
        let w: f64 = rec.fields[2]
            .parse()
            .map_err(|_| Error::parse(rec.line, "malformed weight"))?;
        if !(w > 0.0) || !w.is_finite() {
            return Err(Error::parse(rec.line, "weight must be positive"));
        }
        if a == b {
            return Err(Error::parse(rec.line, "self-loop"));
        }
        let key = (a.min(b), a.max(b));
        match seen.get(&key) {
            Some(&i) => {
                let e: &mut SparseEdge = &mut edges[i];
                e.weight += w;
            }
            None => {
                seen.insert(key, edges.len());
                edges.push(SparseEdge {
                    id: edges.len() as u64,
                    a,
                    b,
                    weight: w,
                });
            }
        }
    }
    Sparsifier::new(n, edges)
}

pub fn serialize_graph(g: &Multigraph) -> String {
    let mut out = format!("{} {}", g.vertex_count(), g.edge_count());
    for e in g.edges() {
        let _ = write!(out, "\n{} {} {}", e.a, e.b, e.weight);
    }
    out.push('\n');
    out
}

pub fn serialize_sparsifier(sp: &Sparsifier) -> String {
    let mut out = format!("{} {}", sp.vertex_count(), sp.edge_count());
    for e in sp.edges() {
        let _ = write!(out, "\n{} {} {}", e.a, e.b, format_real(e.weight));
    }
    out.push('\n');
    out
}

/// Shortest decimal that round-trips the value rounded to 12 significant
/// digits.
pub fn format_real(x: f64) -> String {
    let rounded: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    format!("{rounded}")
}
