//! `amecode`: derive codes from AME states, build pentagon networks and scan
//! boundary entropies.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "amecode", version, about = "Stabiliser codes from AME states and holographic pentagon networks")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Local dimension; checked against input files
    #[arg(long, global = true)]
    pub dim: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = OutcomePolicy::PostselectPlus)]
    pub outcome_policy: OutcomePolicy,
    /// Seed for sampled measurement outcomes
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output format; each command has its own default
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of stdout
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutcomePolicy {
    PostselectPlus,
    Sample,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Extract the code encoding m qudits of an AME state into the rest
    Extract {
        /// Table file holding the AME state
        table: PathBuf,
        /// Number of encoded qudits; defaults to the length of --inputs, else 1
        #[arg(short)]
        m: Option<usize>,
        /// Input qudits (1-based, in logical order); defaults to N, N-1, ...
        #[arg(long, value_delimiter = ',')]
        inputs: Option<Vec<usize>>,
    },
    /// Check whether a table or adjacency file describes an AME state
    VerifyAme {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = FileKind::Auto)]
        kind: FileKind,
    },
    /// Entanglement swapping between a state and an AME state
    Swap {
        /// Table file of the left state
        left: PathBuf,
        /// Table file of the AME state
        right: PathBuf,
        /// Pairs `l:r` of 1-based qudit indices
        #[arg(long, value_delimiter = ',', required = true)]
        pairs: Vec<String>,
    },
    /// Contract a pentagon network into its boundary code or state
    Network {
        #[command(flatten)]
        net: NetworkSource,
        /// Input family on the logical legs; `none` prints the boundary code
        #[arg(long, default_value = "none")]
        input: String,
        /// Print the canonical generator form
        #[arg(long)]
        canonical: bool,
    },
    /// Boundary entropies for B = {s_B, ..., N}
    EntropyScan {
        #[command(flatten)]
        net: NetworkSource,
        #[arg(long, value_delimiter = ',', default_value = "ame,ghz,singlet,product")]
        inputs: Vec<String>,
        #[arg(long, default_value_t = 2)]
        from: usize,
        /// Last s_B; defaults to the boundary size
        #[arg(long)]
        to: Option<usize>,
    },
    /// Spread of a single-qudit operator from a logical leg to the boundary
    Spread {
        #[command(flatten)]
        net: NetworkSource,
        /// Logical leg, 1-based
        #[arg(long)]
        slot: usize,
        /// Single-qudit Pauli, e.g. X or -Y
        #[arg(long = "op")]
        op: String,
    },
}

#[derive(Args, Debug, Clone)]
pub struct NetworkSource {
    /// Layers of the canonical pentagon network
    #[arg(long, default_value_t = 2)]
    pub layers: usize,
    /// JSON network description; overrides --layers
    #[arg(long)]
    pub network: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FileKind {
    Auto,
    Table,
    Adjacency,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) if !err.use_stderr() => {
            let _ = err.print();
            return ExitCode::SUCCESS;
        }
        Err(err) => {
            let text = err.to_string();
            let first = text.lines().next().unwrap_or("invalid arguments");
            eprintln!("{}", first.trim());
            return ExitCode::from(2);
        }
    };
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let msg = format!("{err:#}").replace('\n', " ");
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
