use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

/// Trimming sequences, trimming cylinders and tight spans of finite metric
/// spaces, in exact rational arithmetic.
#[derive(Debug, Parser)]
#[command(name = "trimspan", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Accept pseudometric input by passing to the metric quotient.
    #[arg(long, global = true)]
    pseudometric: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the metric axioms and report the trim function.
    Validate { matrix: PathBuf },
    /// Compute the trimming sequence.
    Sequence { matrix: PathBuf },
    /// Build the trimming cylinder and its metric quotient.
    Cylinder {
        matrix: PathBuf,
        /// Emit Graphviz DOT instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Membership, projection and decomposition in the tight span.
    Tightspan {
        matrix: PathBuf,
        #[command(flatten)]
        action: TightspanAction,
    },
    /// Run every invariant check and the sampled decomposition check.
    Verify {
        matrix: PathBuf,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Generate a distance matrix from a tree or a chain.
    Gen {
        #[command(flatten)]
        source: GenSource,
        /// Append the oracle tables as comment lines.
        #[arg(long)]
        oracle: bool,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct TightspanAction {
    /// Certify membership of the function in the file.
    #[arg(long, value_name = "F_JSON")]
    check: Option<PathBuf>,
    /// Push the function in the file into the tight span.
    #[arg(long, value_name = "F_JSON")]
    project: Option<PathBuf>,
    /// Classify the function in the file.
    #[arg(long, value_name = "F_JSON")]
    decompose: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct GenSource {
    /// Newick tree; the output is its leaf space.
    #[arg(long, value_name = "FILE")]
    newick: Option<PathBuf>,
    /// Chain description in JSON; the output is its bottom level.
    #[arg(long, value_name = "FILE")]
    chain: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.status)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.status)
        }
    }
}
