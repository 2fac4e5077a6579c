//! `spinelab` command-line front end.
//!
//! Exit codes: 0 success, 1 input error, 2 certificate or check failure,
//! 3 internal invariant violation.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "spinelab",
    version,
    about = "Simple spines dual to triangulations"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Annealing steps per search chain.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    /// Write the main output complex to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for `search`; results do not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
}

/// Where the input triangulation comes from.
#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Complex file; `-` or absent reads stdin.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Catalogue entry instead of a file.
    #[arg(long, conflicts_with = "input")]
    pub name: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct PartitionArg {
    /// `discrete`, `single`, or a partition file; defaults to classes in the input.
    #[arg(long)]
    pub partition: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Emit a catalogue complex, a simplex or a sphere.
    Gen {
        #[arg(long, conflicts_with_all = ["simplex", "sphere", "list"])]
        name: Option<String>,
        /// The n-simplex.
        #[arg(long)]
        simplex: Option<usize>,
        /// The boundary of the (n+1)-simplex.
        #[arg(long)]
        sphere: Option<usize>,
        /// List catalogue names.
        #[arg(long)]
        list: bool,
    },
    /// Barycentric subdivision.
    Subdivide {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 1)]
        times: usize,
    },
    /// Dual spine of a triangulation and a partition.
    DualSpine {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        partition: PartitionArg,
    },
    /// Certify the spine property by collapsing the complementary regions.
    VerifySpine {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        partition: PartitionArg,
    },
    /// Types and stratum components of a dual spine.
    Strata {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        partition: PartitionArg,
    },
    /// Search partitions for a certified spine with fewest vertices.
    Search {
        #[command(flatten)]
        input: Input,
        /// Enumerate every partition.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Nerve of a manifold with its dual spine, or of a pair (X, Y).
    Nerve {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        partition: PartitionArg,
        /// Subcomplex Y of the input, as a complex file; switches to pair mode.
        #[arg(long)]
        sub: Option<PathBuf>,
    },
    /// Mod-2 Betti numbers.
    Homology {
        #[command(flatten)]
        input: Input,
        /// Also list the nonzero top-dimensional classes.
        #[arg(long)]
        classes: bool,
    },
    /// Normal discs of the (n+1)-simplex.
    NormalDiscs {
        #[arg(long)]
        n: usize,
    },
    /// Drill a dual spine along a subcomplex or cut it along a hypersurface.
    Drill {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        partition: PartitionArg,
        /// A face of the triangulation, as comma-separated labels.
        #[arg(long, conflicts_with_all = ["point", "random", "class"])]
        face: Option<String>,
        /// A vertex of the first derived subdivision, by label, e.g. `(0,1)`.
        #[arg(long, conflicts_with_all = ["random", "class"])]
        point: Option<String>,
        /// Drill at this many seeded points off the 1-skeleton, one at a time.
        #[arg(long, conflicts_with = "class")]
        random: Option<usize>,
        /// Cut along the hypersurface of the i-th nonzero top class of the spine.
        #[arg(long)]
        class: Option<usize>,
    },
    /// Spine, certificate, strata, nerve and theorem checks in one summary.
    Report {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        partition: PartitionArg,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
