use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "chroma", version, about = "Monochromatic tree covers, cycle covers and hub checks for edge-coloured graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate instances.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Tree cover of a coloured graph.
    Tc(TcArgs),
    /// Exact monochromatic cycle partition.
    Cp(CpArgs),
    /// Transversal of a hypergraph.
    Transversal(TransversalArgs),
    /// Cycle covers of a designated vertex set.
    #[command(subcommand)]
    Cover(CoverCommand),
    /// b-matchings, triangle packings, cherry and matching covers.
    #[command(subcommand)]
    Kit(KitCommand),
    /// Connecting hubs and linked hub families.
    #[command(subcommand)]
    Hub(HubCommand),
    /// Check a certificate (or a report bundle holding one) against a graph.
    Verify(VerifyArgs),
    /// Evaluate the cover-number bound formulas.
    Bounds(BoundsArgs),
    /// Sweep a parameter grid and tabulate cover sizes against the bounds.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BudgetArgs {
    /// Search-node limit for exact oracles.
    #[arg(long, default_value_t = 50_000_000)]
    pub nodes: u64,
    /// Wall-clock limit in milliseconds.
    #[arg(long, env = "CHROMA_BUDGET_MS")]
    pub budget_ms: Option<u64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct IoArgs {
    /// Input JSON, `-` for stdin.
    #[arg(long, short)]
    #[serde(skip)]
    pub input: PathBuf,
    /// Output file; must not exist yet. Defaults to stdout.
    #[arg(long, short)]
    #[serde(skip)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OutArgs {
    /// Output file; must not exist yet. Defaults to stdout.
    #[arg(long, short)]
    #[serde(skip)]
    pub output: Option<PathBuf>,
    /// Sidecar trace file; must not exist yet.
    #[arg(long)]
    #[serde(skip)]
    pub trace: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BranchArg {
    Star,
    Matching,
    Hypergraph,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "generator", rename_all = "kebab-case")]
pub enum GenCommand {
    /// The hypergraph H_{r,t,m}, or its reduction to a coloured graph.
    Hrtm {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        m: usize,
        /// Emit the reduced coloured graph instead of the hypergraph.
        #[arg(long)]
        reduce: bool,
        #[command(flatten)]
        #[serde(skip)]
        out: OutArgs,
    },
    /// Lower-bound instance for given r and δ.
    LowerBound {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        delta: String,
        /// Vertex count (star branch) or blob size (blow-up branches).
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        branch: Option<BranchArg>,
        /// Colour blob edges from this seed instead of colour 1.
        #[arg(long)]
        intra_seed: Option<u64>,
        #[command(flatten)]
        #[serde(skip)]
        out: OutArgs,
    },
    /// Star instance on n vertices.
    Star {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        intra_seed: Option<u64>,
        #[command(flatten)]
        #[serde(skip)]
        out: OutArgs,
    },
    /// G(n, p) with uniform colours.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        #[serde(skip)]
        out: OutArgs,
    },
}

#[derive(Debug, Args, Serialize)]
pub struct BoundParams {
    /// δ for the bound report (`0.9`, `1/100`, `e^-3`).
    #[arg(long)]
    pub delta: Option<String>,
    #[arg(long, default_value = "1")]
    pub k: String,
    #[arg(long = "big-k", default_value = "1")]
    pub big_k: String,
}

#[derive(Debug, Args, Serialize)]
pub struct TcArgs {
    #[command(flatten)]
    #[serde(skip)]
    pub io: IoArgs,
    /// Exact minimum tree cover (the default).
    #[arg(long, conflicts_with = "greedy")]
    pub exact: bool,
    /// Degree-threshold tree cover; needs a rational `--delta`.
    #[arg(long)]
    pub greedy: bool,
    #[command(flatten)]
    pub bounds: BoundParams,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct CpArgs {
    #[command(flatten)]
    #[serde(skip)]
    pub io: IoArgs,
    #[arg(long)]
    pub exact: bool,
    #[command(flatten)]
    pub bounds: BoundParams,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct TransversalArgs {
    #[command(flatten)]
    #[serde(skip)]
    pub io: IoArgs,
    #[arg(long, conflicts_with = "greedy")]
    pub exact: bool,
    /// Degree-threshold transversal at `--delta`.
    #[arg(long)]
    pub greedy: bool,
    #[arg(long)]
    pub delta: Option<String>,
    /// Uniformity used by the greedy threshold; defaults to the part count.
    #[arg(long)]
    pub r: Option<usize>,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct ClassArgs {
    /// Vertex list such as `0..10` or `0,3,5..8`.
    #[arg(long)]
    pub a: String,
    #[arg(long)]
    pub b: String,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "engine", rename_all = "kebab-case")]
pub enum CoverCommand {
    /// At most 2k cycles of G[A, B] covering A.
    Bipartite {
        #[command(flatten)]
        #[serde(skip)]
        io: IoArgs,
        #[command(flatten)]
        classes: ClassArgs,
        #[arg(long)]
        k: usize,
        /// Colours to use; all when omitted.
        #[arg(long, value_delimiter = ',')]
        colours: Vec<u8>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Monochromatic cycles covering A by signature classes.
    Signature {
        #[command(flatten)]
        #[serde(skip)]
        io: IoArgs,
        #[command(flatten)]
        classes: ClassArgs,
        #[arg(long)]
        delta: String,
        #[arg(long = "big-k", default_value_t = 1)]
        big_k: u32,
    },
    /// At most α(G) cycles partitioning the uncoloured graph.
    Posa {
        #[command(flatten)]
        #[serde(skip)]
        io: IoArgs,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Shape {
    Triangle,
    Barbell,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "tool", rename_all = "kebab-case")]
pub enum KitCommand {
    /// b-matching on a triangle (vertices 0..3) or barbell (vertices 0..7).
    Bmatch {
        #[arg(long, value_enum)]
        shape: Shape,
        #[arg(long)]
        n: u64,
        /// Demands b(0), b(1), .. in vertex order.
        #[arg(long, value_delimiter = ',', required = true)]
        demands: Vec<u64>,
        #[arg(long, short)]
        #[serde(skip)]
        output: Option<PathBuf>,
    },
    /// Vertex-disjoint triangles of the uncoloured graph.
    Triangles {
        #[command(flatten)]
        #[serde(skip)]
        io: IoArgs,
        #[arg(long)]
        greedy: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Disjoint cherries centred exactly on A.
    Cherries {
        #[command(flatten)]
        #[serde(skip)]
        io: IoArgs,
        #[command(flatten)]
        classes: ClassArgs,
        #[arg(long)]
        delta: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Greedy connected matchings until at most `stop`·n vertices are left.
    Matchings {
        #[command(flatten)]
        #[serde(skip)]
        io: IoArgs,
        #[arg(long, default_value = "0")]
        stop: String,
    },
}

#[derive(Debug, Args, Serialize)]
pub struct HubInput {
    #[command(flatten)]
    #[serde(skip)]
    pub io: IoArgs,
    /// Hub document: params, a, b, x and hubs.
    #[arg(long)]
    #[serde(skip)]
    pub hub: PathBuf,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "action", rename_all = "kebab-case")]
pub enum HubCommand {
    /// Check a hub (one entry in `hubs`) or a linked family (several).
    Verify(HubInput),
    /// Greedy search for a single hub in G[A, B].
    Search {
        #[command(flatten)]
        #[serde(skip)]
        io: IoArgs,
        #[command(flatten)]
        classes: ClassArgs,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        eps: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// The simplified graph R(X, F) of a linked family.
    Simplify(HubInput),
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    #[command(flatten)]
    #[serde(skip)]
    pub io: IoArgs,
    /// Certificate JSON or a report bundle with a `certificate` field.
    #[arg(long)]
    #[serde(skip)]
    pub certificate: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct BoundsArgs {
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub delta: String,
    #[arg(long, default_value = "1")]
    pub k: String,
    #[arg(long = "big-k", default_value = "1")]
    pub big_k: String,
    #[arg(long, short)]
    #[serde(skip)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Star,
    Hrtm,
    LowerBound,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args, Serialize)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub r: Vec<usize>,
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub delta: Vec<String>,
    /// Vertex counts (star, random) or blob sizes (lower-bound).
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub n: Vec<usize>,
    /// Values of m for H_{r,t,m}.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub m: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    pub t: usize,
    /// Edge probability for the random family.
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Append missing cells to an existing CSV table.
    #[arg(long)]
    pub resume: bool,
    #[arg(long, short)]
    #[serde(skip)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub budget: BudgetArgs,
}
