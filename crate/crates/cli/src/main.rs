//! `holotube` — membership checks with certificates for tube domains,
//! extended tubes, Jost points and permuted unions over complexified
//! Minkowski space, plus Horn solving and order classification.
//!
//! Exit codes for check commands: 0 Inside, 1 Outside, 2 Boundary,
//! 3 Unknown, 64 input error. Randomized paths take an explicit `--seed`
//! and default to 0; output never uses color, so `NO_COLOR` holds
//! trivially.

mod commands;
mod jsonio;
mod schema;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use holotube::DEFAULT_EPSILON;

#[derive(Parser)]
#[command(name = "holotube", version, about, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tube-domain membership of a JSON configuration
    TubeCheck(TubeArgs),
    /// Extended-tube membership: exact arcs in s = 2, certificate search otherwise
    EtubeCheck(EtubeArgs),
    /// Membership in the union of permuted extended tubes (s = 2)
    UnionCheck(UnionArgs),
    /// Jost-point test: exact wedges in s = 2, convex-combination sampling otherwise
    JostCheck(JostArgs),
    /// Order classes and function indices over m for a fixed dimension
    Classify(ClassifyArgs),
    /// Horn formula tools
    Horn {
        #[command(subcommand)]
        action: HornAction,
    },
    /// Run the verification suites
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct TubeArgs {
    /// Configuration JSON file
    #[arg(long)]
    input: PathBuf,
    /// Boundary band width
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    epsilon: f64,
}

#[derive(Args)]
struct EtubeArgs {
    /// Configuration JSON file
    #[arg(long)]
    input: PathBuf,
    /// Boundary band width
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    epsilon: f64,
    /// Candidate budget for the search mode (s > 2)
    #[arg(long, default_value_t = 512)]
    budget: usize,
    /// Seed for the search mode
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Fail unless the exact s = 2 procedure applies
    #[arg(long)]
    exact: bool,
}

#[derive(Args)]
struct UnionArgs {
    /// Configuration JSON file
    #[arg(long)]
    input: PathBuf,
    /// Boundary band width
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    epsilon: f64,
    /// Exhaustive-enumeration cutoff on the number of points
    #[arg(long, default_value_t = 8)]
    max_enumerate: usize,
}

#[derive(Args)]
struct JostArgs {
    /// Configuration JSON file
    #[arg(long)]
    input: PathBuf,
    /// Boundary band width
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    epsilon: f64,
    /// Convex-combination samples for the sampling mode (s > 2)
    #[arg(long, default_value_t = 10_000)]
    budget: usize,
    /// Seed for the sampling mode
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Fail unless the exact s = 2 procedure applies
    #[arg(long)]
    exact: bool,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Space-time dimension (at least 2)
    #[arg(long)]
    s: u64,
    /// Largest order m to tabulate
    #[arg(long)]
    m_max: u64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum HornAction {
    /// Print the minimal model (sorted atoms) or UNSAT
    Solve {
        /// Horn formula in the line-based text format
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Args)]
struct SelftestArgs {
    /// Reduced sample counts (default)
    #[arg(long, conflicts_with = "full")]
    quick: bool,
    /// Full acceptance-scale sample counts
    #[arg(long)]
    full: bool,
    /// Seed for every randomized suite
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::TubeCheck(args) => commands::tube_check(&args.input, args.epsilon),
        Command::EtubeCheck(args) => {
            commands::etube_check(&args.input, args.epsilon, args.budget, args.seed, args.exact)
        }
        Command::UnionCheck(args) => {
            commands::union_check(&args.input, args.epsilon, args.max_enumerate)
        }
        Command::JostCheck(args) => {
            commands::jost_check(&args.input, args.epsilon, args.budget, args.seed, args.exact)
        }
        Command::Classify(args) => {
            commands::classify(args.s, args.m_max, matches!(args.format, Format::Json))
        }
        Command::Horn { action } => match action {
            HornAction::Solve { input } => commands::horn_solve(&input),
        },
        Command::Selftest(args) => commands::selftest(!args.full, args.seed),
    };
    ExitCode::from(code as u8)
}
