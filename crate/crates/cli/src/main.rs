//! `listpack` command-line interface.
//!
//! Every command writes single-line JSON records to stdout (or to `-o`);
//! human-readable notes go to stderr. Exit codes: 0 packing found or
//! all-pack, 1 no packing / witness / unmet precondition, 2 search budget
//! exceeded, 64 usage error, 65 unreadable or malformed input, 70 internal
//! error, 74 output error.

mod commands;
mod experiment;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::Failure;

#[derive(Parser, Debug)]
#[command(name = "listpack", version, about = "List and correspondence packing toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether an instance has a packing (exhaustive search).
    Solve {
        /// Instance file, or `-` for stdin.
        instance: String,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Build a packing with one of the constructive or randomized packers.
    Pack(PackArgs),
    /// Decide whether every k-list-assignment (or k-fold cover) packs.
    ChiStar {
        #[arg(value_enum)]
        kind: ChiKind,
        /// Graph file (`{"n", "edges"}`), or `-` for stdin.
        graph: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Emit one of the extremal instances.
    Gen {
        #[arg(value_enum)]
        family: Family,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 2)]
        b: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Permanent and transversal estimators.
    Matrix {
        #[command(subcommand)]
        command: MatrixCommand,
    },
    /// Run a JSON experiment configuration and write a JSON-lines report.
    Experiment {
        config: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct PackArgs {
    /// Instance file, or `-` for stdin.
    instance: String,
    #[arg(long, value_enum)]
    method: Method,
    /// Upper bound on the correspondence chromatic number (augment only);
    /// defaults to 1 + degeneracy.
    #[arg(long)]
    chi_c_bound: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Fractional colouring file (`{"a", "b", "assignment"}`); defaults to
    /// the 2-colouring of a bipartite graph.
    #[arg(long)]
    fc: Option<PathBuf>,
    /// Round budget (fractional) or resampling budget (bip-lll).
    #[arg(long)]
    max_rounds: Option<u64>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum MatrixCommand {
    /// Probability that a Bernoulli zero matrix has permanent zero.
    PermZero {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        /// Also report the exact probability (k <= 4).
        #[arg(long)]
        exact: bool,
    },
    /// Probability that a sum of random permutation matrices has no zero
    /// transversal.
    ZeroTransversal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        /// Exponent used for the reference bound `3k² exp(-n^(eps/3))`.
        #[arg(long, default_value_t = 0.2)]
        eps: f64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ChiKind {
    List,
    Corr,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Family {
    C4,
    KabCover,
    Shift,
    Kbb,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Method {
    Degenerate,
    Complete,
    BipOrdered,
    Augment,
    Fractional,
    BipLll,
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Solve { instance, budget } => commands::solve(&instance, budget),
        Command::Pack(args) => commands::pack(&args),
        Command::ChiStar { kind, graph, k, budget } => commands::chi_star(kind, &graph, k, budget),
        Command::Gen { family, d, b, output } => commands::gen(family, d, b, output.as_deref()),
        Command::Matrix { command } => commands::matrix(command),
        Command::Experiment { config, output } => experiment::run(&config, output.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { output::EX_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("listpack: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
