use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dicke_core::OccupationIndex;

/// Variable consulted when `--dense-limit` is absent.
pub const DENSE_LIMIT_ENV: &str = "DICKE_DENSE_LIMIT";
/// 4^10 amplitudes.
pub const DEFAULT_DENSE_LIMIT: usize = 1 << 20;

#[derive(Debug, Parser)]
#[command(
    name = "dicke",
    version,
    about = "Exact PT certification for reduced qudit Dicke states"
)]
pub struct Cli {
    /// Output format; defaults to json for certify and ppt, text otherwise.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Largest dense vector length the oracle may allocate.
    #[arg(long, global = true, env = DENSE_LIMIT_ENV, default_value_t = DEFAULT_DENSE_LIMIT)]
    pub dense_limit: usize,

    /// Worker threads for parallel sweeps (ignored in sequential builds).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certify NPT on every (m, k) split of every reduction.
    Certify(OccupationArg),
    /// Print the diagonal weights of the m-site reduction.
    Reduce {
        #[command(flatten)]
        occupation: OccupationArg,
        #[arg(short = 'm')]
        m: usize,
    },
    /// Print the partial-transpose spectrum for one (m, k).
    Ppt {
        #[command(flatten)]
        occupation: OccupationArg,
        #[arg(short = 'm')]
        m: usize,
        #[arg(short = 'k')]
        k: usize,
        /// Also compute the spectrum from the dense oracle.
        #[arg(long)]
        dense: bool,
    },
    /// List a full or restricted index set.
    Enumerate(EnumerateArgs),
    /// Cross-check every symmetric-basis construction against the dense oracle.
    OracleCheck {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long, default_value_t = 3)]
        max_d: usize,
    },
}

#[derive(Debug, Args)]
pub struct OccupationArg {
    /// Comma-separated occupation numbers, e.g. 1,0,2.
    #[arg(long, value_parser = parse_occupation)]
    pub occupation: OccupationIndex,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    /// Local dimension for the full set.
    #[arg(short = 'd', requires = "n", conflicts_with = "bound")]
    pub d: Option<usize>,
    /// Particle number for the full set.
    #[arg(short = 'n', requires = "d")]
    pub n: Option<usize>,
    /// Elementwise upper bound for the restricted set.
    #[arg(long, value_parser = parse_occupation, requires = "m")]
    pub bound: Option<OccupationIndex>,
    /// Norm of the restricted set members.
    #[arg(short = 'm', requires = "bound")]
    pub m: Option<usize>,
}

fn parse_occupation(s: &str) -> Result<OccupationIndex, String> {
    s.parse()
}
