mod commands;
mod fail;
mod input;
mod recheck;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::fail::{CliError, EXIT_MISMATCH, EXIT_OTHER, EXIT_PARSE};
use crate::report::Verification;

/// Shifted and lexicographic optimization over matroids.
///
/// Prints a JSON report on stdout; messages go to stderr.
#[derive(Debug, Parser)]
#[command(name = "matroid-shift", version)]
struct Cli {
    /// Seed for the sampled self-test.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Re-parse the emitted report and re-validate the solution.
    #[arg(long, global = true)]
    recheck: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// n spanning trees with the lexicographically smallest vulnerability vector.
    LexminTrees {
        /// Graph file: "p <vertices> <edges>" then "e u v" lines, 1-indexed.
        graph: PathBuf,
        #[arg(long)]
        n: usize,
        /// Cross-check against brute force.
        #[arg(long)]
        verify: bool,
    },
    /// max c̄·x̄ over n independent sets (or bases).
    Shifted {
        matroid: PathBuf,
        profits: PathBuf,
        #[arg(long)]
        n: usize,
        /// Restrict columns to bases.
        #[arg(long)]
        bases: bool,
        #[arg(long)]
        verify: bool,
    },
    /// Optimal shifted value over the intersection of two matroids.
    ///
    /// Takes M1 M2 PROFITS, or only PROFITS together with --bipartite.
    IntersectValue {
        #[arg(num_args = 1..=3, required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        n: usize,
        /// Bipartite graph JSON; solves over its matchings and emits a solution.
        #[arg(long)]
        bipartite: Option<PathBuf>,
        #[arg(long)]
        verify: bool,
    },
    /// Rewrites x into an equivalent matrix whose columns are independent.
    Fiber {
        matroid: PathBuf,
        matrix: PathBuf,
        #[arg(long)]
        n: usize,
    },
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let outcome = match &cli.command {
        Command::LexminTrees { graph, n, verify } => commands::lexmin_trees(graph, *n, *verify)?,
        Command::Shifted { matroid, profits, n, bases, verify } => {
            commands::shifted(matroid, profits, *n, *bases, *verify)?
        }
        Command::IntersectValue { files, n, bipartite, verify } => {
            commands::intersect_value(files, bipartite.as_deref(), *n, *verify)?
        }
        Command::Fiber { matroid, matrix, n } => commands::fiber(matroid, matrix, *n)?,
    };
    let emitted = serde_json::to_string_pretty(&outcome.report)
        .map_err(|e| CliError::new(EXIT_OTHER, format!("cannot serialize report: {e}")))?;
    println!("{emitted}");
    if outcome.report.verification == Verification::Mismatch {
        return Err(CliError::new(EXIT_MISMATCH, "solver disagrees with brute force"));
    }
    if cli.recheck {
        recheck::recheck(&emitted, &outcome.problem, cli.seed)
            .map_err(|e| CliError::new(EXIT_MISMATCH, format!("recheck failed: {e}")))?;
        eprintln!("recheck ok ({} samples, seed {})", recheck::SAMPLES, cli.seed);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help / --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(EXIT_PARSE as u8);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code as u8)
        }
    }
}
