use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use flaglab::coclique::Variant;
use flaglab::graph::{Mode, DEFAULT_MEMORY_BUDGET};

#[derive(Parser, Debug)]
#[command(name = "flaglab", version, about = "Opposition graphs of (n-1, n)-flags in PG(2n, q)")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Flags are (n-1, n)-flags of PG(2n, q).
    #[arg(long, global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true)]
    pub q: Option<u32>,
    /// Subspace enumeration cache [default: user cache dir]/flaglab
    #[arg(long, global = true, env = "FLAGLAB_CACHE")]
    pub cache_dir: Option<PathBuf>,
    /// Byte limit for a dense adjacency matrix.
    #[arg(long, global = true, default_value_t = DEFAULT_MEMORY_BUDGET)]
    pub memory_budget: u64,
    #[arg(long, global = true, env = "FLAGLAB_THREADS")]
    pub threads: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphMode {
    Dense,
    Streaming,
}

impl From<GraphMode> for Mode {
    fn from(m: GraphMode) -> Mode {
        match m {
            GraphMode::Dense => Mode::Dense,
            GraphMode::Streaming => Mode::Streaming,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    #[value(name = "a_i")]
    AI,
    #[value(name = "a_ii")]
    AII,
    #[value(name = "b_i")]
    BI,
    #[value(name = "b_ii")]
    BII,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::AI => Variant::AI,
            VariantArg::AII => Variant::AII,
            VariantArg::BI => Variant::BI,
            VariantArg::BII => Variant::BII,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Exact,
    Heuristic,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Gaussian coefficients and the closed formulas for (n, q).
    Formulas,
    /// Enumerate subspaces (through the cache) and flags.
    Enumerate {
        /// Vector dimension to enumerate; default both flag levels.
        #[arg(long)]
        k: Option<usize>,
        /// Include the subspaces themselves (requires --k).
        #[arg(long, requires = "k")]
        list: bool,
    },
    /// Build the opposition graph, check regularity, optionally export DIMACS.
    Graph {
        #[arg(long, value_enum, default_value_t = GraphMode::Dense)]
        mode: GraphMode,
        #[arg(long)]
        dimacs: Option<PathBuf>,
    },
    /// Build an Example 1 family.
    Construct {
        #[arg(long, value_enum)]
        variant: VariantArg,
        /// Draw the anchors from --seed.
        #[arg(long, conflicts_with = "anchors")]
        random_anchors: bool,
        /// JSON {variant, anchor1, anchor2}.
        #[arg(long)]
        anchors: Option<PathBuf>,
    },
    /// Check that a family is a coclique, and optionally maximal.
    Verify {
        #[command(flatten)]
        input: FamilyInput,
        #[arg(long)]
        maximal: bool,
    },
    /// Sort a maximal coclique into categories A, B, C.
    Classify {
        #[command(flatten)]
        input: FamilyInput,
    },
    /// Exhaustive counts behind the weight and skew-count lemmas.
    #[command(subcommand)]
    Oracle(Oracle),
    /// Maximum coclique search on the graph or an induced view.
    Search(SearchArgs),
}

#[derive(Args, Debug)]
pub struct FamilyInput {
    /// Family JSON {n, q, vertex_hash, indices}; `-` reads stdin.
    #[arg(long, default_value = "-")]
    pub input: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum Oracle {
    /// Count n-spaces meeting n+1 pairwise skew (n-1)-spaces.
    Lemma43 {
        /// JSON array of subspaces; default three fixed lines of PG(4, q).
        #[arg(long)]
        skew_lines: Option<PathBuf>,
    },
    /// Count distinct n-spaces of members skew to yellow n-spaces.
    Lemma44 {
        #[command(flatten)]
        input: FamilyInput,
        /// Only this n-space; default every yellow n-space.
        #[arg(long)]
        space: Option<String>,
    },
    /// Per-space weights, cores and colors of a maximal coclique.
    Weights {
        #[command(flatten)]
        input: FamilyInput,
    },
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long, value_enum, default_value_t = Method::Heuristic)]
    pub method: Method,
    #[arg(long, value_enum, default_value_t = GraphMode::Dense)]
    pub mode: GraphMode,
    /// Node budget of the exact search.
    #[arg(long, default_value_t = u64::MAX)]
    pub budget: u64,
    /// Stop the exact search once a coclique of this size is found.
    #[arg(long)]
    pub target: Option<usize>,
    /// Local search rounds of the heuristic.
    #[arg(long, default_value_t = 1000)]
    pub iterations: u64,
    /// Family JSON used as incumbent (exact) or warm start (heuristic).
    #[arg(long)]
    pub warm_start: Option<PathBuf>,
    /// JSON array of vertex indices spanning the view.
    #[arg(long, group = "view")]
    pub subset: Option<PathBuf>,
    /// A uniformly random view of this many vertices, drawn from --seed.
    #[arg(long, group = "view")]
    pub random_subset: Option<usize>,
    /// The flags (A, B) with B in the hyperplane x_{2n+1} = 0.
    #[arg(long, group = "view")]
    pub hyperplane_slice: bool,
    /// Print exact search progress to stderr.
    #[arg(long)]
    pub progress: bool,
}
