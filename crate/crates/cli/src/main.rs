//! Command line front end: instance generation, every clustering algorithm,
//! pants construction with validation, bisectable-tree queries, benchmark
//! ratio reports, and SVG rendering.
//!
//! Exit codes: 0 success, 2 malformed input, 3 precondition violation,
//! 4 validation failure.

use clap::{Parser, Subcommand};
use clusterpants_cli::{bench, commands, generate, svg, OutputFormat};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "clusterpants",
    about = "Hierarchical clustering minimizing total cluster size, with pants decompositions",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a clustering algorithm on an instance file.
    Cluster {
        /// Instance file (JSON).
        input: PathBuf,
        #[arg(long, value_enum)]
        algorithm: commands::Algorithm,
        /// Objective for the oracle algorithm.
        #[arg(long, value_enum, default_value = "mst-sum")]
        objective: commands::ObjectiveArg,
        /// Separation parameter for the hyperbolic pipeline, in [0.1, 10].
        #[arg(long, default_value_t = 1.0)]
        delta: f64,
        /// Write the result here instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Also print a human-readable cost summary to stderr.
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
    },
    /// Build and validate a pants decomposition of a Euclidean instance.
    Pants {
        input: PathBuf,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Test whether a tree instance is bisectable.
    Bisect {
        input: PathBuf,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Count the i-bisectable trees exactly.
    Count {
        i: u32,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Generate a reproducible instance file.
    Generate {
        #[arg(long, value_enum)]
        kind: generate::GenerateKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Disk radius for hyperbolic-disk instances.
        #[arg(long, default_value_t = 3.0)]
        radius: f64,
        /// Edge probability for graph-metric instances.
        #[arg(long, default_value_t = 0.5)]
        edge_prob: f64,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run a benchmark suite and report approximation ratios.
    Bench {
        #[arg(long, value_enum)]
        suite: bench::Suite,
        /// Comma-separated instance sizes; suite defaults apply otherwise.
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        /// Number of seeds per size.
        #[arg(long, default_value_t = 20)]
        seeds: u64,
        #[arg(long, default_value_t = 1.0)]
        delta: f64,
        #[arg(long, value_enum, default_value = "table")]
        format: OutputFormat,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Render a planar result (sites, hulls, curves) to SVG.
    Render {
        /// Result file produced by cluster or pants.
        input: PathBuf,
        /// The instance the result was computed from.
        #[arg(long)]
        instance: PathBuf,
        /// Draw cluster hull outlines.
        #[arg(long)]
        hulls: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Cluster {
            input,
            algorithm,
            objective,
            delta,
            output,
            format,
        } => commands::cmd_cluster(&input, algorithm, objective, delta, output.as_deref(), format),
        Command::Pants { input, output } => commands::cmd_pants(&input, output.as_deref()),
        Command::Bisect { input, output } => commands::cmd_bisect(&input, output.as_deref()),
        Command::Count { i, output } => commands::cmd_count(i, output.as_deref()),
        Command::Generate {
            kind,
            n,
            seed,
            radius,
            edge_prob,
            output,
        } => generate::cmd_generate(kind, n, seed, radius, edge_prob, output.as_deref()),
        Command::Bench {
            suite,
            sizes,
            seeds,
            delta,
            format,
            output,
        } => bench::cmd_bench(suite, sizes, seeds, delta, format, output.as_deref()),
        Command::Render {
            input,
            instance,
            hulls,
            output,
        } => svg::cmd_render(&input, &instance, hulls, output.as_deref()),
    };
    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
