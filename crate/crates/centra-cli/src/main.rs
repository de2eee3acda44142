//! Command-line surface: dataset fetching, maximization runs, fixed-sample
//! bound comparisons, structural stats, and brute-force oracles.
//!
//! Exit codes: 0 success, 1 I/O, 2 argument errors, 3 budget exhausted
//! (guarantee not certified).

mod commands;
mod fetch;
mod report;

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "centra", version, about = "Most-central-set approximation by progressive sampling")]
struct Cli {
    /// Worker threads for sampling and BFS (0 = rayon default).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Download and cache the graphs listed in a dataset manifest.
    Fetch(FetchArgs),
    /// Run the progressive maximization and certify an approximation.
    Maximize(MaximizeArgs),
    /// Evaluate every bound family on one shared fixed-size sample.
    Bound(BoundArgs),
    /// Harness: run several variants/epsilons and emit one CSV for plots.
    Compare(CompareArgs),
    /// Print structural statistics (n, |E|, vertex diameter B).
    Stats(StatsArgs),
    /// Brute-force oracles (exhaustive subset search; desk-scale only).
    Oracle(OracleArgs),
}

#[derive(Args)]
struct GraphArgs {
    /// Edge-list file (whitespace-separated pairs; # and % comments).
    #[arg(long)]
    graph: PathBuf,
    /// Treat the edge list as directed.
    #[arg(long, default_value_t = false)]
    directed: bool,
}

#[derive(Args)]
struct FetchArgs {
    /// Manifest: one `name url directedness` triple per line.
    #[arg(long)]
    manifest: PathBuf,
    /// Cache directory (defaults to $CENTRA_CACHE_DIR or ./cache).
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

#[derive(Args)]
struct MaximizeArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    eps: f64,
    /// Failure probability of the whole run.
    #[arg(long, default_value_t = 0.05)]
    delta: f64,
    /// Monte Carlo trials of the AMCERA.
    #[arg(long, default_value_t = 100)]
    t: usize,
    #[arg(long, default_value = "centra")]
    variant: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Geometric growth factor of the sampling schedule.
    #[arg(long, default_value_t = 1.2)]
    alpha: f64,
    /// Hard cap on the number of samples.
    #[arg(long)]
    m_max: Option<u64>,
    /// First-iteration sample size override.
    #[arg(long)]
    m_first: Option<u64>,
    /// Vertex-diameter upper bound for the VC bounds (skips exact BFS).
    #[arg(long)]
    b: Option<u64>,
    /// Lower bound on the optimum centrality for the VC sample-size cap.
    #[arg(long, default_value_t = 0.5)]
    c_star: f64,
    /// Absolute constant of the relative-approximation theorem.
    #[arg(long, default_value_t = 0.5)]
    c_const: f64,
    /// Write the JSON report here (trace CSV lands next to it as .trace.csv).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BoundArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Shared sample size for every method.
    #[arg(long)]
    m: u64,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 0.05)]
    delta: f64,
    #[arg(long, default_value_t = 100)]
    t: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Vertex-diameter upper bound (skips exact BFS for the VC row).
    #[arg(long)]
    b: Option<u64>,
    #[arg(long, default_value_t = 0.5)]
    c_const: f64,
    /// Also write the full JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long)]
    k: usize,
    /// Comma-separated epsilons, one progressive run each.
    #[arg(long, default_value = "0.2,0.1,0.05", value_delimiter = ',')]
    eps: Vec<f64>,
    /// Comma-separated variants to compare.
    #[arg(long, default_value = "centra,hedge-p", value_delimiter = ',')]
    variants: Vec<String>,
    #[arg(long, default_value_t = 0.05)]
    delta: f64,
    #[arg(long, default_value_t = 100)]
    t: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1.2)]
    alpha: f64,
    #[arg(long)]
    m_max: Option<u64>,
    #[arg(long)]
    b: Option<u64>,
    /// Write the comparison CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct StatsArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Echo this vertex-diameter bound instead of computing it exactly.
    #[arg(long)]
    b: Option<u64>,
    /// Skip the vertex diameter entirely (prints "unknown").
    #[arg(long, default_value_t = false)]
    no_diameter: bool,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(subcommand)]
    command: OracleCommand,
    /// Required acknowledgment that exhaustive search may take a while.
    #[arg(long, default_value_t = false)]
    yes_this_is_slow: bool,
    /// Subset-enumeration ceiling.
    #[arg(long, default_value_t = 1_000_000)]
    ceiling: u64,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Exhaustive optimum set of size at most k.
    Optimum {
        #[arg(long)]
        k: usize,
    },
    /// Exact centrality of an explicit node set (external labels).
    Centrality {
        #[arg(long, value_delimiter = ',')]
        nodes: Vec<u64>,
    },
    /// Exhaustive hyper-edge distribution.
    Distribution {
        /// Shortest-path enumeration ceiling.
        #[arg(long, default_value_t = 1_000_000)]
        path_ceiling: u64,
    },
    /// Exact supremum deviation of a freshly drawn sample.
    Sd {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
        {
            eprintln!("error: failed to configure thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    let outcome = match cli.command {
        Command::Fetch(args) => fetch::run(args),
        Command::Maximize(args) => commands::maximize(args),
        Command::Bound(args) => commands::bound(args),
        Command::Compare(args) => commands::compare(args),
        Command::Stats(args) => commands::stats(args),
        Command::Oracle(args) => commands::oracle(args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &centra::Error) -> u8 {
    match err {
        centra::Error::Io(_) => 1,
        centra::Error::Parse { .. } => 1,
        _ => 2,
    }
}
