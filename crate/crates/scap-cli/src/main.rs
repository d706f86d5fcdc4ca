//! `scap`: byte-level n-gram authorship experiments on Java corpora.
//!
//! Subcommands: `corpus validate`, `prepare`, `experiment`, `report`,
//! `stats summary-t`. Exit codes: 0 success, 1 domain failure (validation,
//! lexing, malformed data, degenerate statistics), 2 usage or I/O error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use scap_core::error::Error;

mod commands;

#[derive(Parser)]
#[command(
    name = "scap",
    version,
    about = "Source-code author profiles: build, disguise, classify, report"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Corpus manifest tools
    Corpus {
        #[command(subcommand)]
        command: CorpusCommand,
    },
    /// Write a transformed copy of a corpus (comment stripping, identifier
    /// neutralization) with a regenerated manifest
    Prepare(PrepareArgs),
    /// Run the (n, L) accuracy grid over a corpus and write the grid file
    Experiment(ExperimentArgs),
    /// Compare treatment grids against a benchmark grid and print the
    /// summary and significance tables
    Report(ReportArgs),
    /// Statistical utilities
    Stats {
        #[command(subcommand)]
        command: StatsCommand,
    },
}

#[derive(Subcommand)]
enum CorpusCommand {
    /// Check a manifest: roles per author, duplicate paths, and (optionally)
    /// the domain-independent split protocol
    Validate {
        manifest: PathBuf,
        /// Also require that no author shares a project between train and test
        #[arg(long)]
        domain_independent: bool,
    },
}

#[derive(Args)]
struct PrepareArgs {
    manifest: PathBuf,
    /// Output directory for the mirrored corpus
    #[arg(long)]
    out: PathBuf,
    /// Delete all comments from every file
    #[arg(long)]
    strip_comments: bool,
    /// Replace identifiers of this category with unique a{k}b{k} names:
    /// simple, class, method, or all
    #[arg(long, value_name = "CATEGORY")]
    neutralize: Option<String>,
}

#[derive(Args)]
struct ExperimentArgs {
    manifest: PathBuf,
    /// Output directory for grid.csv
    #[arg(long)]
    out: PathBuf,
    /// n-gram lengths, e.g. "3", "3,5,7", "3..10"
    #[arg(long = "n", default_value = "3..10")]
    n_spec: String,
    /// Profile lengths, e.g. "2000", "2000..8000:1000"
    #[arg(long = "L", default_value = "2000..8000:1000")]
    l_spec: String,
}

#[derive(Args)]
struct ReportArgs {
    /// Benchmark grid file
    #[arg(long)]
    benchmark: PathBuf,
    /// Treatment grid files, compared cell-by-cell against the benchmark
    #[arg(required = true)]
    treatments: Vec<PathBuf>,
}

#[derive(Subcommand)]
enum StatsCommand {
    /// One-tailed paired t-test from a (mean, sd, n) summary triple
    #[command(name = "summary-t")]
    SummaryT {
        #[arg(long, allow_hyphen_values = true)]
        mean: f64,
        #[arg(long)]
        sd: f64,
        #[arg(long)]
        n: usize,
    },
}

fn exit_code_for(error: &Error) -> u8 {
    match error {
        Error::Io(_) | Error::Load { .. } => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    // die quietly on a closed pipe (e.g. `scap experiment ... | head`)
    // instead of panicking on the failed write
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Corpus {
            command:
                CorpusCommand::Validate {
                    manifest,
                    domain_independent,
                },
        } => commands::corpus_validate(&manifest, domain_independent),
        Command::Prepare(args) => commands::prepare(
            &args.manifest,
            &args.out,
            args.strip_comments,
            args.neutralize.as_deref(),
        ),
        Command::Experiment(args) => {
            commands::experiment(&args.manifest, &args.out, &args.n_spec, &args.l_spec)
        }
        Command::Report(args) => commands::report(&args.benchmark, &args.treatments),
        Command::Stats {
            command: StatsCommand::SummaryT { mean, sd, n },
        } => commands::summary_t(mean, sd, n),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(exit_code_for(&error))
        }
    }
}
