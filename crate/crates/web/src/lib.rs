//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export returns a JSON string; errors come back as a thrown string.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use cutsparse::connectivity::{KappaAssignment, KappaSource};
use cutsparse::rng::substream;
use cutsparse::sampling::{sparsify, SamplingConfig, TreeSampler, TreeSparsifier};
use cutsparse::verify::{max_cut_error_exact, tree_lb_probability};
use cutsparse::{generate, GraphFamily, Multigraph};

/// Largest graph the page will enumerate cuts for.
pub const DEMO_MAX_N: usize = 16;

pub fn family(name: &str, n: usize, p: f64, k: u64) -> Result<GraphFamily, String> {
    Ok(match name {
        "path" => GraphFamily::Path { n },
        "cycle" => GraphFamily::Cycle { n },
        "complete" => GraphFamily::Complete { n },
        "random-gnp" => GraphFamily::RandomGnp { n, p },
        "figure1" => GraphFamily::Figure1 { n },
        "figure2" => GraphFamily::Figure2 { n },
        "figure3" => GraphFamily::Figure3 { k: k as usize },
        "tree-lower-bound" => GraphFamily::TreeLowerBound { n, k },
        "dumbbell" => GraphFamily::Dumbbell { clique: n },
        other => return Err(format!("unknown family {other:?}")),
    })
}

fn build(name: &str, n: usize, p: f64, k: u64, seed: u64) -> Result<Multigraph, String> {
    let g = generate(&family(name, n, p, k)?, seed).map_err(|e| e.to_string())?;
    if g.vertex_count() > DEMO_MAX_N {
        return Err(format!(
            "the demo enumerates every cut and stops at {DEMO_MAX_N} vertices (this graph has {})",
            g.vertex_count()
        ));
    }
    if !g.is_connected() {
        return Err("the generated graph is disconnected; try another seed or a larger p".into());
    }
    Ok(g)
}

#[derive(Serialize)]
struct EdgeOut {
    a: usize,
    b: usize,
    u: u64,
    w: f64,
}

#[derive(Serialize)]
struct SparsifyOut {
    n: usize,
    rho: u64,
    input_edges: usize,
    kept_edges: usize,
    max_relative_error: f64,
    argmax: Vec<usize>,
    true_weight: f64,
    sampled_weight: f64,
    cuts: u64,
    pass: bool,
    edges: Vec<EdgeOut>,
}

pub fn sparsify_json(
    name: &str,
    n: usize,
    p: f64,
    k: u64,
    method: &str,
    epsilon: f64,
    seed: u64,
) -> Result<String, String> {
    let g = build(name, n, p, k, seed)?;
    let cfg = SamplingConfig::new(epsilon).with_seed(seed);
    cfg.check(g.vertex_count()).map_err(|e| e.to_string())?;
    let sp = if method == "trees" {
        TreeSparsifier::new(&g)
            .and_then(|ts| ts.sparsify(cfg.rho(g.vertex_count()), seed))
            .map_err(|e| e.to_string())?
    } else {
        let source = match method {
            "connectivity" => KappaSource::ExactConnectivity,
            "conductance" => KappaSource::Conductance,
            "strength" => KappaSource::ExactStrength,
            "ni" => KappaSource::NiLabel,
            "connest" => KappaSource::Connest,
            other => return Err(format!("unknown method {other:?}")),
        };
        let kappa = KappaAssignment::compute(&g, source).map_err(|e| e.to_string())?;
        sparsify(&g, &kappa, &cfg).map_err(|e| e.to_string())?
    };
    let r = max_cut_error_exact(&g, &sp).map_err(|e| e.to_string())?;
    let out = SparsifyOut {
        n: g.vertex_count(),
        rho: cfg.rho(g.vertex_count()),
        input_edges: g.edge_count(),
        kept_edges: sp.edge_count(),
        pass: r.max_relative_error <= epsilon,
        max_relative_error: r.max_relative_error,
        argmax: r.argmax,
        true_weight: r.argmax_true_weight,
        sampled_weight: r.argmax_sampled_weight,
        cuts: r.cuts_inspected,
        edges: g
            .edges()
            .iter()
            .map(|e| EdgeOut {
                a: e.a,
                b: e.b,
                u: e.weight,
                w: sp.weight_of(e.id),
            })
            .collect(),
    };
    serde_json::to_string(&out).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct CurvePoint {
    rho: u32,
    p: f64,
}

#[derive(Serialize)]
struct CurveOut {
    n: f64,
    k: u64,
    /// `ln n / ln(2k+1)`, where `p → 1 − 1/e`
    critical_rho: f64,
    limit: f64,
    points: Vec<CurvePoint>,
}

pub fn tree_lb_curve_json(n: f64, k: u64, rho_max: u32) -> Result<String, String> {
    if n.is_nan() || n < 1.0 || k == 0 || rho_max == 0 || rho_max > 200 {
        return Err("need n >= 1, k >= 1 and 1 <= rho_max <= 200".into());
    }
    let points = (1..=rho_max)
        .map(|rho| {
            tree_lb_probability(n, k as f64, rho as f64)
                .map(|p| CurvePoint { rho, p })
                .map_err(|e| e.to_string())
        })
        .collect::<Result<_, _>>()?;
    let out = CurveOut {
        n,
        k,
        critical_rho: n.ln() / ((2 * k + 1) as f64).ln(),
        limit: 1.0 - (-1f64).exp(),
        points,
    };
    serde_json::to_string(&out).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct MarginalOut {
    a: usize,
    b: usize,
    u: u64,
    /// `u_e · r_e`
    exact: f64,
    empirical: f64,
    z: f64,
}

pub fn tree_marginals_json(
    name: &str,
    n: usize,
    p: f64,
    k: u64,
    trees: u32,
    seed: u64,
) -> Result<String, String> {
    if trees == 0 || trees > 200_000 {
        return Err("trees must be in 1..=200000".into());
    }
    let g = build(name, n, p, k, seed)?;
    let ts = TreeSparsifier::new(&g).map_err(|e| e.to_string())?;
    let sampler = TreeSampler::new(&g).map_err(|e| e.to_string())?;
    let mut hits = vec![0u64; g.edge_count()];
    for t in 0..trees as u64 {
        for i in sampler.sample_indices(&mut substream(seed, t)) {
            hits[i] += 1;
        }
    }
    let t = trees as f64;
    let rows: Vec<MarginalOut> = g
        .edges()
        .iter()
        .zip(ts.conductance())
        .zip(&hits)
        .map(|((e, &c), &h)| {
            let exact = e.weight as f64 / c;
            let empirical = h as f64 / t;
            let se = (exact * (1.0 - exact) / t).sqrt();
            MarginalOut {
                a: e.a,
                b: e.b,
                u: e.weight,
                exact,
                empirical,
                z: if se > 0.0 { (empirical - exact) / se } else { 0.0 },
            }
        })
        .collect();
    serde_json::to_string(&rows).map_err(|e| e.to_string())
}

/// Sparsify a generated graph and report its worst cut.
#[wasm_bindgen]
pub fn sparsify_family(
    family: &str,
    n: u32,
    p: f64,
    k: u32,
    method: &str,
    epsilon: f64,
    seed: u32,
) -> Result<String, JsValue> {
    sparsify_json(family, n as usize, p, k as u64, method, epsilon, seed as u64)
        .map_err(|e| JsValue::from_str(&e))
}

/// Probability that some position of the lower-bound graph loses its heavy
/// edge in every one of `ρ` trees, for `ρ = 1..=rho_max`.
#[wasm_bindgen]
pub fn tree_lb_curve(n: f64, k: u32, rho_max: u32) -> Result<String, JsValue> {
    tree_lb_curve_json(n, k as u64, rho_max).map_err(|e| JsValue::from_str(&e))
}

/// Empirical edge frequencies over random spanning trees next to `u_e · r_e`.
#[wasm_bindgen]
pub fn tree_marginals(
    family: &str,
    n: u32,
    p: f64,
    k: u32,
    trees: u32,
    seed: u32,
) -> Result<String, JsValue> {
    tree_marginals_json(family, n as usize, p, k as u64, trees, seed as u64)
        .map_err(|e| JsValue::from_str(&e))
}
