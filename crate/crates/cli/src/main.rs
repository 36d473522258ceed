//! `cutsparse`: generation, estimation, sparsification and verification
//! runs from the command line.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 usage or domain error,
//! 3 internal invariant violation.

mod commands;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use manifest::Manifest;

#[derive(Parser, Debug)]
#[command(name = "cutsparse", version, about = "Cut sparsification experiments")]
pub struct Cli {
    /// Worker threads for Monte-Carlo trials (results do not depend on it).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Where to write the run manifest. Defaults to `<out>.manifest.json`
    /// when the command has an output file, otherwise stderr.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a graph from one of the built-in families.
    Gen(GenArgs),
    /// Sparsify a graph.
    Sparsify(SparsifyArgs),
    /// Compare a sparsifier's cuts with the graph's.
    Verify(VerifyArgs),
    /// Count cut-induced subsets of a black edge set.
    Countcuts(CountArgs),
    /// Frequency table of contraction outputs.
    ContractExp(ContractArgs),
    /// Tree sparsification on the lower-bound family.
    Treelb(TreeLbArgs),
    /// Per-edge connectivity, strength, resistance and conductance table.
    Resist(TableArgs),
    /// Connectivity estimates next to the exact table.
    Connest(TableArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Gen(_) => "gen",
            Command::Sparsify(_) => "sparsify",
            Command::Verify(_) => "verify",
            Command::Countcuts(_) => "countcuts",
            Command::ContractExp(_) => "contract-exp",
            Command::Treelb(_) => "treelb",
            Command::Resist(_) => "resist",
            Command::Connest(_) => "connest",
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FamilyName {
    Path,
    Cycle,
    Complete,
    RandomGnp,
    Figure1,
    Figure2,
    Figure3,
    TreeLowerBound,
    Dumbbell,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    /// Graph family.
    pub family: FamilyName,
    /// Vertex count (positions for tree-lower-bound).
    #[arg(long)]
    pub n: Option<usize>,
    /// Edge probability for random-gnp.
    #[arg(long)]
    pub p: Option<f64>,
    /// Parallel edges for figure3 and tree-lower-bound.
    #[arg(long)]
    pub k: Option<u64>,
    /// Clique size for dumbbell.
    #[arg(long)]
    pub clique: Option<usize>,
    /// Seed for random families.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Connectivity,
    Conductance,
    Strength,
    Ni,
    Connest,
    Trees,
    Pipeline,
}

#[derive(Args, Debug)]
pub struct SparsifyArgs {
    /// Input graph in edge-list format.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// `connectivity`, `conductance`, `strength`, `ni` and `connest` choose
    /// the sampling parameter; `trees` unions random spanning trees;
    /// `pipeline` chains three stages at epsilon/4.
    #[arg(long, value_enum)]
    pub method: Method,
    /// Target relative cut error; must be at least 1/n.
    #[arg(long, default_value_t = 0.5)]
    pub epsilon: f64,
    /// Constant `d` in `ρ = ⌈d log₂²n / ε²⌉`.
    #[arg(long, default_value_t = cutsparse::sampling::DEFAULT_D)]
    pub d: f64,
    /// Fixed number of rounds, overriding `d`.
    #[arg(long)]
    pub rho: Option<u64>,
    /// Base seed; rounds and stages draw from derived substreams.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Sparsifier file; the JSON sidecar goes to `<out>.json`.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Sampled,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Original graph.
    #[arg(long)]
    pub graph: PathBuf,
    /// Sparsifier in edge-list format with real weights.
    #[arg(long)]
    pub sparsifier: PathBuf,
    /// Allowed relative cut error.
    #[arg(long)]
    pub epsilon: f64,
    /// `exact` enumerates every cut (n <= 24 unless CUTSPARSE_MAX_ENUM is
    /// set); `sampled` checks singletons, pairs, the minimum cut and 10^4
    /// random subsets.
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    pub mode: Mode,
    /// Seed of the random subsets in sampled mode.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// JSON report file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CountArgs {
    /// Graph in edge-list format.
    #[arg(long)]
    pub graph: PathBuf,
    /// `class:i` for `E_i`, or `edges:FILE` with whitespace-separated ids.
    #[arg(long)]
    pub black: String,
    /// Cuts of weight at most alpha * K are counted.
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    /// Required lower bound `K` on `k_e` over the black edges; the minimum
    /// over the set when omitted.
    #[arg(long = "k")]
    pub k_min: Option<u64>,
    /// JSON report file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Split,
    Rw,
}

#[derive(Args, Debug)]
pub struct ContractArgs {
    /// Graph in edge-list format (n <= 12).
    #[arg(long)]
    pub graph: PathBuf,
    /// `class:i` for `E_i`, or `edges:FILE` with whitespace-separated ids.
    #[arg(long)]
    pub black: String,
    /// Target sets have q(F) <= alpha * K; contraction stops at
    /// ceil(2 alpha) vertices.
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    /// `split` duplicates edges and splits off white vertices; `rw`
    /// contracts random-walk paths between black vertices.
    #[arg(long, value_enum, default_value_t = Algo::Split)]
    pub algo: Algo,
    /// Independent runs.
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    /// Run t draws from substream (seed, t).
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// JSON report file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TreeLbArgs {
    /// Positions in the lower-bound graph (n <= 200).
    #[arg(long)]
    pub n: usize,
    /// Multiplicity of each heavy edge.
    #[arg(long)]
    pub k: u64,
    /// Trees per sparsifier.
    #[arg(long)]
    pub rho: u64,
    /// Independent sparsifiers (at most 10^6).
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    /// Trial t uses a seed derived from (seed, t).
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// JSON report file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    /// Graph in edge-list format.
    #[arg(long)]
    pub graph: PathBuf,
    /// Table file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Failure classes, one per nonzero exit code.
#[derive(Debug)]
pub enum Failure {
    Verification,
    Usage(String),
    Internal(String),
}

impl From<cutsparse::Error> for Failure {
    fn from(e: cutsparse::Error) -> Self {
        match e {
            cutsparse::Error::Internal(_) => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    }
    let mut manifest = Manifest::start(&cli);
    let result = commands::run(&cli.command, &mut manifest);
    let code = match &result {
        Ok(()) => 0,
        Err(Failure::Verification) => 1,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            3
        }
    };
    manifest.exit_code = code;
    if let Err(e) = manifest.finish(cli.manifest.as_deref()) {
        eprintln!("error: cannot write manifest: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
