use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

/// Exact verification and optimization of distance-preserving contractions.
#[derive(Debug, Parser)]
#[command(name = "contractlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a contraction set against a tolerance.
    ///
    /// Exit status: 0 valid, 1 invalid (a witness is printed), 2 usage or
    /// input error.
    Verify(VerifyArgs),
    /// Solve a maximization problem exactly.
    Solve(SolveArgs),
    /// Build the pendant gadget or the tensor square of a bipartite graph.
    Reduce(ReduceArgs),
    /// Run a lemma-lab suite and compare it with pinned verdicts.
    ///
    /// Exit status: 0 clean (or golden file freshly pinned), 1 regression or
    /// a witness that failed re-verification, 2 usage or input error.
    Lab(LabArgs),
    /// Generate a random bipartite instance.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct ToleranceArgs {
    /// Multiplicative slack, an integer or `p/q`.
    #[arg(long, default_value = "1")]
    alpha: String,
    /// Additive slack, an integer or `p/q`.
    #[arg(long, default_value = "1")]
    beta: String,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Graph file.
    graph: PathBuf,
    /// Contraction file: edge ids, one per line.
    contraction: PathBuf,
    #[command(flatten)]
    tolerance: ToleranceArgs,
    /// Use weak-contraction semantics.
    #[arg(long)]
    weak: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Problem {
    Cont,
    Weakcont,
    Meb,
    Mbb,
}

#[derive(Debug, Args)]
struct SolveArgs {
    graph: PathBuf,
    #[arg(long, value_enum)]
    problem: Problem,
    #[command(flatten)]
    tolerance: ToleranceArgs,
    /// Largest edge count (per component) for exact contraction search.
    #[arg(long, default_value_t = contractlab::solvers::DEFAULT_EDGE_CAP)]
    cap_edges: usize,
    /// Largest smaller-side size for exact biclique search.
    #[arg(long, default_value_t = contractlab::solvers::DEFAULT_SIDE_CAP)]
    cap_side: usize,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Gadget,
    Tensor,
}

#[derive(Debug, Args)]
struct ReduceArgs {
    graph: PathBuf,
    #[arg(long, value_enum)]
    kind: Kind,
    /// Gadget edge weight, an integer or `p/q`.
    #[arg(long, default_value = "1")]
    weight: String,
    /// Output graph file; the provenance map goes to `<out>.provenance.json`.
    #[arg(long)]
    out: PathBuf,
    /// Build the gadget of a disconnected graph anyway.
    #[arg(long)]
    allow_disconnected: bool,
}

#[derive(Debug, Args)]
struct LabArgs {
    /// Suite configuration (JSON); the standard suite when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Pinned verdicts; created from this run when missing.
    #[arg(long)]
    golden: Option<PathBuf>,
    /// Write all reports (JSON) here.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    cap_edges: Option<usize>,
    #[arg(long)]
    cap_path_len: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum GenCommand {
    /// Each left-right pair is an edge with probability `p`.
    Random {
        #[arg(long)]
        left: usize,
        #[arg(long)]
        right: usize,
        #[arg(long)]
        p: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A complete `plant_left x plant_right` biclique plus noise edges.
    Planted {
        #[arg(long)]
        left: usize,
        #[arg(long)]
        right: usize,
        #[arg(long)]
        plant_left: usize,
        #[arg(long)]
        plant_right: usize,
        #[arg(long, default_value = "0")]
        noise: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(args) => commands::verify(args),
        Command::Solve(args) => commands::solve(args),
        Command::Reduce(args) => commands::reduce(args),
        Command::Lab(args) => commands::lab(args),
        Command::Gen(cmd) => commands::gen(cmd),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("contractlab: {err:#}");
            ExitCode::from(2)
        }
    }
}
