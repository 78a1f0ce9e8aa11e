mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rigikit::harness::Claim;
use rigikit::rigidity::Predicate;

/// Exit code for bad arguments or unreadable input.
const USAGE: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "rigikit", version, about = "Generic rigidity matroid toolkit")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    /// Dimension of the rigidity matroid.
    #[arg(long, short = 'd', global = true, default_value_t = 3)]
    dim: usize,
    /// Seed for random points and property suites (decimal or 0x-prefixed hex).
    #[arg(long, global = true, env = "RIGIKIT_SEED", value_parser = parse_seed)]
    seed: Option<u64>,
    /// Random points tried before a dependence is reported.
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Shard `i/m` of an enumeration.
    #[arg(long, global = true)]
    partition: Option<String>,
    /// Run everything on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    G6,
    Text,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generic rank and matroid flags of each input graph.
    Rank {
        /// graph6 files; standard input when absent.
        files: Vec<PathBuf>,
    },
    /// Decide a matroid predicate for each input graph.
    Check {
        #[arg(value_enum)]
        predicate: PredicateArg,
        files: Vec<PathBuf>,
    },
    /// Build a flexible circuit family.
    Family {
        #[arg(value_enum)]
        family: FamilyArg,
        /// Size of the shared clique for `b`; defaults to d - 1.
        #[arg(long, short = 't')]
        t: Option<usize>,
    },
    /// Apply a graph operation to graph6 input.
    Op(OpArgs),
    /// Enumerate isomorphism classes of graphs.
    Enumerate(EnumerateArgs),
    /// Run a verification claim and report.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PredicateArg {
    Independent,
    Rigid,
    Circuit,
    FlexibleCircuit,
}

impl From<PredicateArg> for Predicate {
    fn from(p: PredicateArg) -> Self {
        match p {
            PredicateArg::Independent => Predicate::Independent,
            PredicateArg::Rigid => Predicate::Rigid,
            PredicateArg::Circuit => Predicate::Circuit,
            PredicateArg::FlexibleCircuit => Predicate::FlexibleCircuit,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    /// Two copies of K_{d+2} glued along K_t, minus a shared edge.
    B,
    /// Every member of the B+ family on d + 6 vertices.
    Bplus,
    /// The complete bipartite graph K_{d+2,d+2}.
    Bipartite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Operation {
    ZeroExt,
    OneExt,
    Split,
    Cone,
    TwoSum,
    TSum,
    Complement,
    Contract,
}

#[derive(Debug, Args)]
struct OpArgs {
    #[arg(value_enum)]
    operation: Operation,
    /// Neighbours of the new vertex, e.g. `0,1,2`.
    #[arg(long, value_delimiter = ',')]
    neighbors: Vec<usize>,
    /// Edge removed by a 1-extension, e.g. `0-1`.
    #[arg(long, value_parser = parse_edge)]
    remove: Option<(usize, usize)>,
    /// Vertex to split.
    #[arg(long)]
    vertex: Option<usize>,
    /// The d - 1 hinge vertices of a split.
    #[arg(long, value_delimiter = ',')]
    hinge: Vec<usize>,
    /// Neighbours kept by the first half of a split.
    #[arg(long, value_delimiter = ',')]
    part1: Vec<usize>,
    /// Shared clique of a t-sum.
    #[arg(long, value_delimiter = ',')]
    shared: Vec<usize>,
    /// Glue edge of a 2-sum, deleted edge of a t-sum, or contracted edge.
    #[arg(long, value_parser = parse_edge)]
    edge: Option<(usize, usize)>,
    /// graph6 files; standard input when absent. Sums read two graphs.
    files: Vec<PathBuf>,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    /// Number of vertices.
    #[arg(long, short = 'n')]
    n: usize,
    /// Shorthand for equal minimum and maximum degree.
    #[arg(long)]
    regular: Option<usize>,
    #[arg(long)]
    degree_min: Option<usize>,
    #[arg(long)]
    degree_max: Option<usize>,
    #[arg(long)]
    edge_min: Option<usize>,
    #[arg(long)]
    edge_max: Option<usize>,
    /// Keep only graphs that are d-sparse for this d.
    #[arg(long)]
    sparse: Option<usize>,
    /// Keep only k-connected graphs.
    #[arg(long)]
    connectivity: Option<usize>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(value_parser = parse_claim)]
    claim: Claim,
    /// Largest dimension for `families` and `edge-bound`.
    #[arg(long)]
    d_max: Option<usize>,
    /// Largest vertex count for `classify`.
    #[arg(long)]
    n_max: Option<usize>,
    /// Allow the long-running classification in dimension 4.
    #[arg(long)]
    long: bool,
    /// Number of cones for `cone-ladder`.
    #[arg(long)]
    steps: Option<usize>,
    /// Random sums per sign for `two-sum`.
    #[arg(long)]
    count: Option<usize>,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(&hex.replace('_', ""), 16),
        None => s.replace('_', "").parse(),
    };
    parsed.map_err(|e| format!("invalid seed {s:?}: {e}"))
}

fn parse_edge(s: &str) -> Result<(usize, usize), String> {
    let (u, v) = s
        .split_once(['-', ','])
        .ok_or_else(|| format!("expected an edge like 0-1, got {s:?}"))?;
    let u = u.trim().parse().map_err(|_| format!("bad vertex in {s:?}"))?;
    let v = v.trim().parse().map_err(|_| format!("bad vertex in {s:?}"))?;
    Ok((u, v))
}

fn parse_claim(s: &str) -> Result<Claim, String> {
    s.parse().map_err(|_| {
        let ids: Vec<_> = Claim::ALL.iter().map(|c| c.id()).collect();
        format!("unknown claim {s:?}; expected one of {}", ids.join(", "))
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match commands::run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("rigikit: {e}");
            ExitCode::from(USAGE)
        }
    }
}
