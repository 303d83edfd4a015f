//! Command-line interface over `weyl-core`. Every command reads a JSON
//! scheme file and writes deterministic text, JSON or DOT to stdout.
//!
//! Exit codes: 0 success, 1 validation or property failure, 2 usage or
//! parse error.

pub mod commands;
pub mod scheme_file;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use commands::{run, CliError};
pub use scheme_file::{parse_scheme_file, ParseError, SchemeFile};

#[derive(Debug, Parser)]
#[command(name = "weyl", version, about = "Weyl groupoids of Cartan schemes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the Cartan scheme axioms and the root system axioms.
    Validate { file: PathBuf },
    /// Positive roots at an object, one JSON array per line.
    Roots {
        file: PathBuf,
        #[arg(long)]
        object: String,
    },
    /// All morphisms into an object with canonical words and lengths.
    Hom {
        file: PathBuf,
        #[arg(long)]
        target: String,
    },
    /// Hasse diagram of the weak order into an object.
    Poset {
        file: PathBuf,
        #[arg(long)]
        target: String,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
    },
    /// Rank generating function of the weak order into an object.
    Poincare {
        file: PathBuf,
        #[arg(long)]
        target: String,
    },
    /// Greatest lower bound of two morphisms.
    Meet(PairArgs),
    /// Least upper bound of two morphisms.
    Join(PairArgs),
    /// Topology of the open interval between two morphisms.
    Interval(PairArgs),
    /// Coxeter complex at an object.
    Complex {
        file: PathBuf,
        #[arg(long)]
        object: String,
        #[arg(long, value_enum, default_value_t = GraphFormat::Json)]
        format: GraphFormat,
    },
    /// Hyperplane arrangement of the positive roots at an object.
    Arrangement {
        file: PathBuf,
        #[arg(long)]
        object: String,
    },
    /// Run the full property suite.
    Check {
        file: PathBuf,
        #[arg(long)]
        object: Option<String>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
}

/// Two morphisms into `target`, each a word applied to a source object.
/// Words are comma-separated index labels, e.g. `1,2` for `σ_1σ_2`; the
/// empty word is written `id`.
#[derive(Debug, Args)]
pub struct PairArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub target: String,
    #[arg(long)]
    pub u: String,
    #[arg(long)]
    pub su: String,
    #[arg(long)]
    pub v: String,
    #[arg(long)]
    pub sv: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}
