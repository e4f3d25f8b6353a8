use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "ydkit", version, about = "Yetter-Drinfeld modules over generalized Liu algebras and their Nichols algebras")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Cyclotomic conductor N of the scalar field Q(zeta_N)(t); inferred when omitted
    #[arg(long, global = true)]
    pub conductor: Option<u32>,

    /// Highest degree for graded dimensions [default: 6]
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub degree: Option<u64>,

    /// Row limit for symmetrizer matrices
    #[arg(long, global = true, default_value_t = 4096, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,

    /// Output format [default: json; text for selftest, tsv for tables list]
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Seed for sampled checks
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Classification row corpus to load instead of the built-in copy
    #[arg(long, global = true)]
    pub tables: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Tsv,
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct ParamsArg {
    /// Module parameters as JSON, e.g. '{"n":2,"w":2,"gamma":"-1","alpha":"zeta(2,1)","beta":"-1","r":1,"i":0}'; read from stdin when omitted
    #[arg(long)]
    pub json: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build the simple module V(alpha, beta, x^r g^i) and verify it
    Construct(ParamsArg),
    /// Verify a module: construct output (params and module) or bare parameters
    Verify(ParamsArg),
    /// Coefficient matrix (c(k,l)) of size p+1 and the comatrix check
    Comatrix {
        #[command(flatten)]
        params: ParamsArg,
        /// Matrix index bound p [default: dim V - 1]
        #[arg(long)]
        size: Option<u32>,
    },
    /// Graded dimensions of the Nichols algebra up to --degree
    Hilbert {
        #[command(flatten)]
        params: ParamsArg,
        /// Use the two-dimensional diagonal companion space instead of the module
        #[arg(long)]
        companion: bool,
        /// Diagonal braiding matrix of literals, e.g. '[["-1","1"],["1","zeta(3,1)"]]'
        #[arg(long, conflicts_with_all = ["json", "companion"])]
        diagonal: Option<String>,
    },
    /// Classify one tuple, or every tuple of a grid as a stream
    Classify {
        #[command(flatten)]
        params: ParamsArg,
        /// Grid specification as JSON, e.g. '{"n":[2,3],"w":[1],"gamma":"primitive","beta":["gamma^j"],"alpha":"solve","i":"all","r":[0,1,2,3]}'
        #[arg(long, conflicts_with = "json")]
        grid: Option<String>,
        /// Worker threads for grids [default: available parallelism]
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Compare the verdict with symmetrizer ranks up to --degree
    CrossValidate(ParamsArg),
    /// The classification row corpus
    Tables {
        #[command(subcommand)]
        action: TablesAction,
    },
    /// Run the acceptance suite
    Selftest {
        /// Comma-separated criterion numbers [default: all]
        #[arg(long, value_delimiter = ',')]
        criteria: Vec<u8>,
    },
}

#[derive(Subcommand, Debug)]
pub enum TablesAction {
    /// Print every row: table, ids, zeta order, conditions, flag
    List,
}
