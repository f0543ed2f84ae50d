//! `geodav`: invariants of finite groups from product-one sequences, and
//! the Cayley digraph diameters they control.
//!
//! Exit codes: 0 on complete success, 2 for input or cache errors, 3 when
//! a requested stat could not be completed within the configured limits,
//! 4 when the engine contradicts itself or the brute-force oracle.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod cache;
mod error;
mod report;
mod run;

use error::CliError;

#[derive(Parser)]
#[command(name = "geodav", version, about = "Product-one sequence invariants and Cayley diameters")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute invariants and emit one report row per group.
    Analyze(AnalyzeArgs),
    /// List atom representatives level by level.
    Atoms(AtomsArgs),
    /// Compute the diameter of one Cayley digraph.
    Diameter(DiameterArgs),
    /// Compare engine results against the brute-force reference.
    OracleCheck(OracleCheckArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Group spec such as cyclic:6, dihedral:8, abelian:2,4, perm:(1,2,3)
    /// or table:PATH; repeat the flag to analyze several groups.
    #[arg(long = "group", value_name = "SPEC", required = true)]
    groups: Vec<String>,

    /// Comma-separated stats to compute: d,D,GD,dcdstar,ddiam (default all).
    #[arg(long, value_name = "STATS", value_delimiter = ',')]
    stats: Vec<String>,

    /// Cap level searches at this sequence length.
    #[arg(long = "max-length", value_name = "N")]
    max_length: Option<usize>,

    /// Size of the worker pool (default: all cores).
    #[arg(long, value_name = "N")]
    threads: Option<usize>,

    /// Directory holding resumable level caches.
    #[arg(long = "cache-dir", value_name = "PATH")]
    cache_dir: Option<PathBuf>,

    /// Wall-clock budget in seconds.  Level searches checkpoint at level
    /// boundaries; stats cut short are reported as incomplete.
    #[arg(long, value_name = "SECONDS")]
    timeout: Option<u64>,

    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct AtomsArgs {
    /// Group spec.
    #[arg(long, value_name = "SPEC")]
    group: String,

    /// List directed geodesic atoms instead of all atoms.
    #[arg(long)]
    geodesic: bool,

    /// Cap the search at this sequence length.
    #[arg(long = "max-length", value_name = "N")]
    max_length: Option<usize>,
}

#[derive(Args)]
struct DiameterArgs {
    /// Group spec.
    #[arg(long, value_name = "SPEC")]
    group: String,

    /// Generating set, as comma-separated element indices.
    #[arg(long, value_name = "INDICES", value_delimiter = ',', required = true)]
    gens: Vec<usize>,

    /// Read the diameter off the geodesic atom levels instead of searching
    /// the digraph.
    #[arg(long = "via-ga")]
    via_ga: bool,
}

#[derive(Args)]
struct OracleCheckArgs {
    /// Group spec.
    #[arg(long, value_name = "SPEC")]
    group: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(error::exit_code(&err))
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Analyze(args) => run::analyze(args),
        Command::Atoms(args) => run::atoms(args),
        Command::Diameter(args) => run::diameter(args),
        Command::OracleCheck(args) => run::oracle_check(args),
    }
}
