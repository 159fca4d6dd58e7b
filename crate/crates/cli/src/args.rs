use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Edit distance functions of hereditary graph properties via colored
/// regularity graphs.
#[derive(Debug, Parser)]
#[command(name = "edfun", version, about)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Cycles,
    Complete,
    Invariants,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// g_K(p): minimum of xᵀM_K(p)x over the simplex.
    G(CrgAt),
    /// f_K(p): value of the uniform weighting.
    F(CrgAt),
    /// Whether a graph embeds in a CRG, with the first embedding found.
    Embed {
        #[command(flatten)]
        graph: GraphInput,
        #[command(flatten)]
        crg: CrgInput,
    },
    /// Clique spectrum extreme points and chromatic parameters.
    Spectrum(ForbidInput),
    /// γ_H(p), the best K(r,s) bound.
    Gamma {
        #[command(flatten)]
        forbid: ForbidInput,
        #[command(flatten)]
        points: Points,
    },
    /// Searched upper bound on the edit distance function.
    Edf {
        #[command(flatten)]
        forbid: ForbidInput,
        #[command(flatten)]
        points: Points,
        /// Largest enumerated CRG.
        #[arg(long, default_value_t = 6)]
        max_k: usize,
    },
    /// Location and value of the maximum of the searched curve.
    Maximize {
        #[command(flatten)]
        forbid: ForbidInput,
        #[arg(long, default_value_t = 6)]
        max_k: usize,
        /// Grid points used before refinement.
        #[arg(long, default_value_t = 199)]
        grid: usize,
    },
    /// Exact edit distance from a small graph to the property.
    Dist {
        #[command(flatten)]
        graph: GraphInput,
        #[command(flatten)]
        forbid: ForbidInput,
    },
    /// p-core test with certificate and coloring screen.
    Pcore(CrgAt),
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct CrgInput {
    /// CRG token: `k<r>,<s>` or `crg:<vcolors>/<row>/...`.
    #[arg(long)]
    pub crg: Option<String>,
    /// File holding a CRG in the `crg` text format.
    #[arg(long, value_name = "PATH")]
    pub crg_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct GraphInput {
    /// Graph name: `C<h>`, `K<h>` or `E<h>`.
    #[arg(long)]
    pub graph: Option<String>,
    /// File holding a graph in the `graph` text format.
    #[arg(long, value_name = "PATH")]
    pub graph_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct ForbidInput {
    /// Comma-separated forbidden graph names.
    #[arg(long)]
    pub forbid: Option<String>,
    /// File holding one or more graphs in the `graph` text format.
    #[arg(long, value_name = "PATH")]
    pub forbid_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Points {
    /// A single density.
    #[arg(long)]
    pub p: Option<f64>,
    /// Number of grid points i/(n+1), i = 1..n.
    #[arg(long)]
    pub grid: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CrgAt {
    #[command(flatten)]
    pub crg: CrgInput,
    #[arg(long)]
    pub p: f64,
}
