use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cyclograph::{RootParam, VertexId};

#[derive(Debug, Parser)]
#[command(
    name = "cyclograph",
    version,
    about = "Exact Hermitian Laplacian minors of oriented graphs",
    after_help = "Parameters: 1, -1, i, w<n> (primitive n-th root), w<n>^<q>, or <n>/<q>.\n\
                  Graph files hold one arc `u v` per line (`#` starts a comment) or JSON \
                  {\"vertices\": [...], \"edges\": [[u, v], ...]}. Use `-` to read stdin.\n\
                  Exit status: 1 bad input, 2 method precondition failed, 3 enumeration limit hit."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Graph file, or `-` for standard input.
    pub graph: PathBuf,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub output: Format,
}

#[derive(Debug, Args)]
pub struct VertexSet {
    /// Comma-separated vertex ids; defaults to every vertex.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub vset: Option<Vec<VertexId>>,
}

#[derive(Debug, Args)]
pub struct EdgeSet {
    /// Comma-separated edge ids (0-based, in file order); defaults to every
    /// edge.
    #[arg(long, value_delimiter = ',')]
    pub eset: Option<Vec<usize>>,
}

#[derive(Debug, Args)]
pub struct Params {
    /// Root of unity to evaluate at; repeat for several.
    #[arg(long = "param", required = true, allow_hyphen_values = true)]
    pub params: Vec<RootParam>,
}

#[derive(Debug, Args)]
pub struct Guard {
    /// Enumerate even when the number of edge subsets exceeds 10^7.
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact principal minor det L[V'] by elimination.
    Minor {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        params: Params,
        #[command(flatten)]
        vset: VertexSet,
        /// Also list the all-regular substructures behind the minor.
        #[arg(long)]
        breakdown: bool,
        #[command(flatten)]
        guard: Guard,
    },
    /// Principal minor as a sum over edge subsets.
    Expand {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        params: Params,
        #[command(flatten)]
        vset: VertexSet,
        #[command(flatten)]
        guard: Guard,
    },
    /// Tally of all-regular substructures on a vertex set.
    Census {
        #[command(flatten)]
        common: Common,
        /// Parameters at which to report each class's determinant.
        #[arg(long = "param", allow_hyphen_values = true)]
        params: Vec<RootParam>,
        #[command(flatten)]
        vset: VertexSet,
        #[command(flatten)]
        guard: Guard,
    },
    /// Alpha and beta unicyclic components of a substructure.
    #[command(name = "count-ab")]
    CountAb {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        vset: VertexSet,
        #[command(flatten)]
        eset: EdgeSet,
    },
    /// Non-vanishing unicyclic components from conjugate parameters.
    #[command(name = "count-galois")]
    CountGalois {
        #[command(flatten)]
        common: Common,
        /// Odd prime.
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        vset: VertexSet,
        #[command(flatten)]
        eset: EdgeSet,
    },
    /// Triangles and rootless trees spanned by three vertices.
    Triangles {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        vset: VertexSet,
        /// Cross-check against a census.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        guard: Guard,
    },
    /// Four-vertex substructure classes from five minors.
    Count4 {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        vset: VertexSet,
        /// Cross-check against a census.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        guard: Guard,
    },
    /// Spanning-tree count from a Laplacian cofactor.
    #[command(name = "spanning-trees")]
    SpanningTrees {
        #[command(flatten)]
        common: Common,
        #[arg(long = "param", default_value = "1", allow_hyphen_values = true)]
        param: RootParam,
        /// Vertex to delete; defaults to the first vertex.
        #[arg(long, allow_hyphen_values = true)]
        vertex: Option<VertexId>,
        /// Cross-check against brute-force enumeration.
        #[arg(long)]
        verify: bool,
    },
}
