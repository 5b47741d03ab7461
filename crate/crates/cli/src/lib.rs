//! Command-line front end for `infimax-core`.

use std::fmt;

use clap::{Parser, Subcommand};

pub mod commands;
pub mod input;
pub mod render;
pub mod selftest;

pub use render::Format;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Malformed or out-of-domain input.
    Input(String),
    /// A size limit was hit.
    Cap(String),
    /// A computed result contradicts an independent check.
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Cap(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "invalid input: {m}"),
            CliError::Cap(m) => write!(f, "cap exceeded: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<infimax_core::Error> for CliError {
    fn from(e: infimax_core::Error) -> Self {
        match e {
            infimax_core::Error::CapExceeded { .. } => CliError::Cap(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "infimax",
    version,
    about = "Minimax words, infimax sequences and their rotation vectors"
)]
pub struct Cli {
    /// Alphabet size.
    #[arg(short = 'k', global = true)]
    pub k: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Size limit: letters for words, total count for the oracle, steps for
    /// itineraries.
    #[arg(long, global = true)]
    pub cap: Option<usize>,

    /// Print words in power notation, e.g. `31(311)^10(312)^3`.
    #[arg(long, global = true)]
    pub run_length: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The least maximal word with the given letter counts.
    Minimax {
        /// Letter counts, e.g. `24,3,14`.
        counts: String,
    },
    /// Compare the fast minimax with exhaustive search.
    Oracle {
        /// A single count vector.
        counts: Option<String>,
        /// Check every count vector with total at most this value.
        #[arg(long, conflicts_with = "counts")]
        max_sum: Option<u64>,
    },
    /// The itinerary of a rational rotation vector.
    Itinerary {
        /// Coordinates `2/9,3/9,1/9,3/9` or integer weights.
        point: String,
    },
    /// The rational point whose itinerary is given.
    Point {
        /// Entries such as `0 3 1 2 | 0̄`, `0,3,1,2` or `list:0,3,1,2`.
        #[arg(num_args = 1.., required = true)]
        itinerary: Vec<String>,
    },
    /// A prefix of the infimax sequence of a point or itinerary.
    Infimax {
        /// Rotation vector; omit when `--itinerary` is given.
        point: Option<String>,
        /// Itinerary spec: `list:..`, `periodic:..`, `prefix:..`, `growth:..`, `poly:c,e`.
        #[arg(long, conflicts_with = "point")]
        itinerary: Option<String>,
        /// Number of letters.
        #[arg(short = 'R', default_value_t = 64)]
        length: usize,
    },
    /// Regular/exceptional classification of an itinerary.
    Regularity {
        spec: String,
        /// Deepest level to examine.
        #[arg(long, default_value_t = 64)]
        depth: usize,
    },
    /// Vertices of the nested simplex at depth `r`.
    Vertices {
        spec: String,
        #[arg(short = 'r', default_value_t = 0)]
        depth: usize,
    },
    /// Recompute the reference examples.
    Selftest,
}

/// A report and the exit status it should end with.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: serde_json::Value,
    pub exit_code: u8,
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    commands::dispatch(cli)
}
