use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "rainbowlab", version)]
#[command(about = "Rainbow triangle packings and anti-Ramsey numbers of complete graphs")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Common {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Worker threads for ar-search and the censuses.
    #[arg(long, global = true, env = "RAINBOWLAB_WORKERS", default_value_t = 1)]
    pub workers: usize,

    /// Seed for every randomized operation.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Evaluate t_2(n-t), moon_ex(n,t) and the anti-Ramsey formula.
    Formulas {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        t: u64,
    },
    /// Build the extremal coloring avoiding a rainbow (t+2)K_3.
    Construct {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        /// Write the coloring here (text format).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Look for k disjoint rainbow triangles in a coloring file.
    CheckRainbow {
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Compute ar(n, kK_3) exactly.
    ArSearch {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Node budget for this invocation.
        #[arg(long, default_value_t = rainbowlab::search::DEFAULT_NODE_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = 6)]
        split_depth: usize,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Continue from the checkpoint file if it exists.
        #[arg(long, requires = "checkpoint")]
        resume: bool,
        /// Do not seed the search with the lower-bound construction.
        #[arg(long)]
        no_seed: bool,
    },
    /// Moon's bound on graphs without t+1 disjoint triangles.
    VerifyMoon(CensusArgs),
    /// The h(n-h) bound for triangle-free graphs with matching number h.
    VerifyGamma(CensusArgs),
    /// Independent-set extraction on dense triangle-free graphs.
    VerifyPairs {
        #[arg(long, default_value_t = 60)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        t: usize,
        #[arg(long, default_value_t = 1000)]
        instances: usize,
        #[arg(long, default_value_t = 30)]
        max_deletions: usize,
        /// Check this single graph (graph6) instead of random instances.
        #[arg(long)]
        graph: Option<String>,
    },
    /// Maximum number of vertex-disjoint triangles.
    I3 {
        graph6: String,
        #[arg(long, default_value_t = rainbowlab::packing::DEFAULT_PACKING_BUDGET)]
        budget: u64,
    },
    /// Maximum matching.
    Matching { graph6: String },
    /// graph6 string of a named graph or an edge-list file.
    Encode {
        /// complete:N, empty:N, cycle:N, path:N, star:N, petersen,
        /// turan:N:P, bipartite:A:B or clique-join:N:T
        #[arg(required_unless_present = "edges", conflicts_with = "edges")]
        family: Option<String>,
        /// File with the order on the first line, then one `u v` per line.
        #[arg(long)]
        edges: Option<PathBuf>,
    },
    /// Order and edge list of a graph6 string.
    Decode { graph6: String },
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct CensusArgs {
    #[arg(long, default_value_t = 7)]
    pub n_max: usize,
    /// Random graphs per order above the exhaustive range.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
}
