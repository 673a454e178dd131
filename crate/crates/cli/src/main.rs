//! `cobordkit`: command-line front end.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails (the witness
//! is printed), 2 for malformed input.

mod commands;
mod input;
mod range;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cobordkit::chern::StructureKind;
use cobordkit::Partition;
use num_bigint::BigInt;

use range::IntRange;

#[derive(Debug, Parser)]
#[command(
    name = "cobordkit",
    version,
    about = "Exact bordism checks for projective bundles over CP^1"
)]
pub struct Cli {
    /// Output format.
    #[arg(
        long,
        global = true,
        value_enum,
        env = "COBORDKIT_FORMAT",
        default_value = "table"
    )]
    pub format: Format,

    /// Also write the JSON document to this path.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Structure {
    Standard,
    Twisted,
}

impl From<Structure> for StructureKind {
    fn from(s: Structure) -> Self {
        match s {
            Structure::Standard => StructureKind::Standard,
            Structure::Twisted => StructureKind::Twisted,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Chern numbers of P^n(a), ring-computed and closed form side by side.
    Chern(ChernArgs),
    /// Check a bordism identity over a parameter range.
    Verify {
        #[command(subcommand)]
        which: VerifyCommand,
    },
    /// Build and certify the hexagon-prism isotropy data.
    Hexprism(HexArgs),
    /// Characteristic and isotropy function checks.
    Charfun {
        #[command(subcommand)]
        which: CharfunCommand,
    },
    /// Search for a GL_n(Z) equivalence between two assignments.
    Glequiv(InputArgs),
}

#[derive(Debug, Args)]
pub struct ChernArgs {
    #[arg(long)]
    pub n: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub a: BigInt,
    #[arg(long, value_enum, default_value = "standard")]
    pub structure: Structure,
    /// A single partition, e.g. `2,1`.
    #[arg(long)]
    pub partition: Option<Partition>,
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    #[arg(long)]
    pub n: i64,
    #[arg(long, allow_hyphen_values = true, conflicts_with = "a_range")]
    pub a: Option<BigInt>,
    #[arg(long, allow_hyphen_values = true, conflicts_with = "b_range")]
    pub b: Option<BigInt>,
    /// Inclusive range `lo..hi`.
    #[arg(long, allow_hyphen_values = true)]
    pub a_range: Option<IntRange>,
    /// Inclusive range `lo..hi`.
    #[arg(long, allow_hyphen_values = true)]
    pub b_range: Option<IntRange>,
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Standard Chern numbers do not depend on a.
    Independence(ParamArgs),
    /// Twisted Chern numbers vanish.
    TwistedNull(ParamArgs),
    /// c(P^n(a)) - c(P^n(b)) + c_T(P^n(b-a)) = 0.
    Triple(ParamArgs),
    /// The three-piece gluing yields cancelling boundaries.
    Gluing(ParamArgs),
}

#[derive(Debug, Args)]
pub struct HexArgs {
    #[arg(long)]
    pub n: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub a: BigInt,
    #[arg(long, allow_hyphen_values = true)]
    pub b: BigInt,
}

#[derive(Debug, Subcommand)]
pub enum CharfunCommand {
    /// Validate a characteristic function, or an isotropy function when
    /// marked facets are given.
    Validate(InputArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// JSON input file; `-` reads standard input.
    #[arg(long)]
    pub input: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(outcome) => outcome.exit_code(),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
