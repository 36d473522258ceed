use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use cutsparse::connectivity::{
    connectivity_estimation, ConnectivityTable, KappaAssignment, KappaSource,
};
use cutsparse::contraction::{contract_experiment, ContractAlgo};
use cutsparse::io::{parse_graph, parse_sparsifier, serialize_graph, serialize_sparsifier};
use cutsparse::sampling::{
    expected_size_bound, sparsify, sparsify_pipeline, SamplingConfig, TreeSparsifier,
    PIPELINE_PRECISION,
};
use cutsparse::verify::{
    connectivity_classes, count_cut_induced_sets, max_cut_error_exact, max_cut_error_sampled,
    tree_lb_experiment, BlackEdgeSet,
};
use cutsparse::{generate, GraphFamily, Multigraph, Sparsifier};

use crate::manifest::Manifest;
use crate::{
    Algo, Command, ContractArgs, CountArgs, Failure, FamilyName, GenArgs, Method, Mode,
    SparsifyArgs, TableArgs, TreeLbArgs, VerifyArgs,
};

type Outcome = Result<(), Failure>;

/// Shared shape of every experiment report.
#[derive(Serialize)]
struct Experiment<S: Serialize> {
    experiment: &'static str,
    params: Value,
    seed: u64,
    trials: u64,
    statistics: S,
    bound: f64,
    pass: bool,
}

pub fn run(cmd: &Command, m: &mut Manifest) -> Outcome {
    match cmd {
        Command::Gen(a) => gen(a, m),
        Command::Sparsify(a) => sparsify_cmd(a, m),
        Command::Verify(a) => verify(a, m),
        Command::Countcuts(a) => countcuts(a, m),
        Command::ContractExp(a) => contract_exp(a, m),
        Command::Treelb(a) => treelb(a, m),
        Command::Resist(a) => table(a, m, false),
        Command::Connest(a) => table(a, m, true),
    }
}

fn read(path: &Path, m: &mut Manifest) -> Result<String, Failure> {
    m.input(path);
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn read_graph(path: &Path, m: &mut Manifest) -> Result<Multigraph, Failure> {
    let text = read(path, m)?;
    parse_graph(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_sparsifier(path: &Path, m: &mut Manifest) -> Result<Sparsifier, Failure> {
    let text = read(path, m)?;
    parse_sparsifier(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write(out: Option<&Path>, text: &str, m: &mut Manifest) -> Outcome {
    match out {
        Some(p) => {
            std::fs::write(p, text)
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display())))?;
            m.output(p);
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn write_json(out: Option<&Path>, value: &impl Serialize, m: &mut Manifest) -> Outcome {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Failure::Internal(format!("json: {e}")))?;
    write(out, &(text + "\n"), m)
}

fn report<S: Serialize>(out: Option<&Path>, exp: Experiment<S>, m: &mut Manifest) -> Outcome {
    let pass = exp.pass;
    write_json(out, &exp, m)?;
    if pass {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn need<T: Copy>(v: Option<T>, flag: &str, family: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("{family} requires --{flag}")))
}

fn family(a: &GenArgs) -> Result<GraphFamily, Failure> {
    let n = |name| need(a.n, "n", name);
    Ok(match a.family {
        FamilyName::Path => GraphFamily::Path { n: n("path")? },
        FamilyName::Cycle => GraphFamily::Cycle { n: n("cycle")? },
        FamilyName::Complete => GraphFamily::Complete { n: n("complete")? },
        FamilyName::RandomGnp => GraphFamily::RandomGnp {
            n: n("random-gnp")?,
            p: need(a.p, "p", "random-gnp")?,
        },
        FamilyName::Figure1 => GraphFamily::Figure1 { n: n("figure1")? },
        FamilyName::Figure2 => GraphFamily::Figure2 { n: n("figure2")? },
        FamilyName::Figure3 => GraphFamily::Figure3 {
            k: need(a.k, "k", "figure3")? as usize,
        },
        FamilyName::TreeLowerBound => GraphFamily::TreeLowerBound {
            n: n("tree-lower-bound")?,
            k: need(a.k, "k", "tree-lower-bound")?,
        },
        FamilyName::Dumbbell => GraphFamily::Dumbbell {
            clique: need(a.clique, "clique", "dumbbell")?,
        },
    })
}

fn gen(a: &GenArgs, m: &mut Manifest) -> Outcome {
    let f = family(a)?;
    m.param("family", &f);
    m.seed = Some(a.seed);
    let g = generate(&f, a.seed)?;
    write(a.out.as_deref(), &serialize_graph(&g), m)
}

fn kappa_source(method: Method) -> Option<KappaSource> {
    match method {
        Method::Connectivity => Some(KappaSource::ExactConnectivity),
        Method::Conductance => Some(KappaSource::Conductance),
        Method::Strength => Some(KappaSource::ExactStrength),
        Method::Ni => Some(KappaSource::NiLabel),
        Method::Connest => Some(KappaSource::Connest),
        Method::Trees | Method::Pipeline => None,
    }
}

#[derive(Serialize)]
struct Sidecar {
    method: Method,
    epsilon: f64,
    rho: u64,
    seed: u64,
    edge_count: usize,
    expected_size_bound: f64,
    d: f64,
    kappa_source: Option<KappaSource>,
    vertex_count: usize,
    input_edge_count: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    stages: Vec<cutsparse::sampling::StageReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    warnings: Vec<String>,
}

impl Serialize for Method {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use clap::ValueEnum;
        s.serialize_str(self.to_possible_value().expect("no skipped variants").get_name())
    }
}

fn sparsify_cmd(a: &SparsifyArgs, m: &mut Manifest) -> Outcome {
    let g = read_graph(&a.input, m)?;
    let n = g.vertex_count();
    let mut cfg = SamplingConfig::new(a.epsilon).with_d(a.d).with_seed(a.seed);
    if let Some(r) = a.rho {
        if r == 0 {
            return Err(Failure::Usage("--rho must be at least 1".into()));
        }
        cfg = cfg.with_rho(r);
    }
    m.param("method", a.method);
    m.param("config", cfg);
    m.seed = Some(a.seed);
    cfg.check(n)?;

    let mut stages = Vec::new();
    let mut warnings = Vec::new();
    let (sp, kappa_src, rho, bound) = match (a.method, kappa_source(a.method)) {
        (_, Some(src)) => {
            let kappa = KappaAssignment::compute(&g, src)?;
            let sp = sparsify(&g, &kappa, &cfg)?;
            (sp, Some(src), cfg.rho(n), expected_size_bound(&g, &kappa, &cfg))
        }
        (Method::Trees, None) => {
            let ts = TreeSparsifier::new(&g)?;
            let kappa =
                KappaAssignment::new(&g, KappaSource::Conductance, ts.conductance().to_vec())?;
            let sp = ts.sparsify(cfg.rho(n), cfg.seed)?;
            (
                sp,
                Some(KappaSource::Conductance),
                cfg.rho(n),
                expected_size_bound(&g, &kappa, &cfg),
            )
        }
        _ => {
            let out = sparsify_pipeline(&g, &cfg, PIPELINE_PRECISION)?;
            let first = out
                .stages
                .first()
                .ok_or_else(|| Failure::Internal("pipeline ran no stage".into()))?;
            let (rho, bound) = (first.rho, first.expected_size_bound);
            stages = out.stages;
            warnings = out.warnings;
            for w in &warnings {
                eprintln!("warning: {w}");
            }
            (out.sparsifier, None, rho, bound)
        }
    };
    write(Some(&a.out), &serialize_sparsifier(&sp), m)?;
    let sidecar = Sidecar {
        method: a.method,
        epsilon: a.epsilon,
        rho,
        seed: a.seed,
        edge_count: sp.edge_count(),
        expected_size_bound: bound,
        d: a.d,
        kappa_source: kappa_src,
        vertex_count: n,
        input_edge_count: g.edge_count(),
        stages,
        warnings,
    };
    let side = a.out.with_file_name(format!(
        "{}.json",
        a.out.file_name().map_or("sparsifier".into(), |f| f.to_string_lossy())
    ));
    write_json(Some(&side), &sidecar, m)
}

fn verify(a: &VerifyArgs, m: &mut Manifest) -> Outcome {
    let g = read_graph(&a.graph, m)?;
    let sp = read_sparsifier(&a.sparsifier, m)?;
    if a.epsilon.is_nan() || a.epsilon < 0.0 {
        return Err(Failure::Usage("--epsilon must be non-negative".into()));
    }
    let mode = match a.mode {
        Mode::Exact => "exact",
        Mode::Sampled => "sampled",
    };
    m.param("epsilon", a.epsilon);
    m.param("mode", mode);
    m.seed = Some(a.seed);
    let r = match a.mode {
        Mode::Exact => max_cut_error_exact(&g, &sp)?,
        Mode::Sampled => max_cut_error_sampled(&g, &sp, a.seed)?,
    };
    let exp = Experiment {
        experiment: "verify",
        params: json!({ "epsilon": a.epsilon, "mode": mode, "n": g.vertex_count() }),
        seed: a.seed,
        trials: r.cuts_inspected,
        bound: a.epsilon,
        pass: r.max_relative_error <= a.epsilon,
        statistics: r,
    };
    report(a.out.as_deref(), exp, m)
}

fn black_set(spec: &str, g: &Multigraph, m: &mut Manifest) -> Result<BlackEdgeSet, Failure> {
    if let Some(i) = spec.strip_prefix("class:") {
        let i: u32 = i
            .parse()
            .map_err(|_| Failure::Usage(format!("bad class index in --black {spec}")))?;
        let classes = connectivity_classes(g)?;
        let set = classes
            .class(i)
            .ok_or_else(|| Failure::Usage(format!("connectivity class E_{i} is empty")))?;
        Ok(BlackEdgeSet::new(g, set.iter().copied())?)
    } else if let Some(file) = spec.strip_prefix("edges:") {
        let text = read(Path::new(file), m)?;
        let ids = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or(""))
            .flat_map(str::split_whitespace)
            .map(|t| {
                t.parse::<u64>()
                    .map_err(|_| Failure::Usage(format!("{file}: bad edge id {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BlackEdgeSet::new(g, ids)?)
    } else {
        Err(Failure::Usage(format!(
            "--black must be class:i or edges:FILE, got {spec:?}"
        )))
    }
}

fn check_alpha(alpha: f64) -> Outcome {
    if alpha >= 1.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(Failure::Usage(format!("--alpha must be at least 1, got {alpha}")))
    }
}

#[derive(Serialize)]
struct CountStats {
    count: u64,
    n: usize,
    black_edges: usize,
    k_min: u64,
    threshold: f64,
}

fn countcuts(a: &CountArgs, m: &mut Manifest) -> Outcome {
    check_alpha(a.alpha)?;
    let g = read_graph(&a.graph, m)?;
    let b = black_set(&a.black, &g, m)?;
    m.param("black", &a.black);
    m.param("alpha", a.alpha);
    let k = match a.k_min {
        Some(k) => k,
        None if b.is_empty() => 0,
        None => b.min_connectivity(&g)?,
    };
    m.param("k", k);
    let threshold = a.alpha * k as f64;
    let count = count_cut_induced_sets(&g, &b, threshold, Some(k))?;
    let n = g.vertex_count();
    let bound = (n as f64).powf(2.0 * a.alpha);
    let exp = Experiment {
        experiment: "countcuts",
        params: json!({ "black": a.black, "alpha": a.alpha, "k": k }),
        seed: 0,
        trials: 1,
        statistics: CountStats {
            count,
            n,
            black_edges: b.len(),
            k_min: k,
            threshold,
        },
        bound,
        pass: (count as f64) < bound,
    };
    report(a.out.as_deref(), exp, m)
}

fn contract_exp(a: &ContractArgs, m: &mut Manifest) -> Outcome {
    check_alpha(a.alpha)?;
    let g = read_graph(&a.graph, m)?;
    let b = black_set(&a.black, &g, m)?;
    let (algo, name) = match a.algo {
        Algo::Split => (ContractAlgo::Split, "split"),
        Algo::Rw => (ContractAlgo::Rw, "rw"),
    };
    m.param("black", &a.black);
    m.param("alpha", a.alpha);
    m.param("algo", name);
    m.param("trials", a.trials);
    m.seed = Some(a.seed);
    let r = contract_experiment(&g, &b, a.alpha, algo, a.trials, a.seed)?;
    let exp = Experiment {
        experiment: "contract-exp",
        params: json!({ "black": a.black, "alpha": a.alpha, "algo": name }),
        seed: a.seed,
        trials: a.trials,
        bound: r.bound,
        pass: r.pass,
        statistics: r,
    };
    report(a.out.as_deref(), exp, m)
}

fn treelb(a: &TreeLbArgs, m: &mut Manifest) -> Outcome {
    m.param("n", a.n);
    m.param("k", a.k);
    m.param("rho", a.rho);
    m.param("trials", a.trials);
    m.seed = Some(a.seed);
    let r = tree_lb_experiment(a.n, a.k, a.rho, a.trials, a.seed)?;
    let exp = Experiment {
        experiment: "treelb",
        params: json!({ "n": a.n, "k": a.k, "rho": a.rho }),
        seed: a.seed,
        trials: a.trials,
        bound: 3.0 * r.sigma,
        pass: r.within_3sigma && r.witness_exact,
        statistics: r,
    };
    report(a.out.as_deref(), exp, m)
}

fn table(a: &TableArgs, m: &mut Manifest, with_kappa: bool) -> Outcome {
    let g = read_graph(&a.graph, m)?;
    let t = ConnectivityTable::full(&g)?;
    let kappa = if with_kappa {
        Some(connectivity_estimation(&g)?)
    } else {
        None
    };
    write(a.out.as_deref(), &t.to_text(kappa.as_ref()), m)
}
