//! `msph`: batch front end for chain validation, admissibility search, tail-map
//! property suites and convergence experiments.
//!
//! Exit codes: 0 success, 1 invalid input data, 2 I/O or parse failure,
//! 3 not admissible (or no good subgraph found), 4 property or oracle failure.

mod commands;
mod source;

use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_NOT_ADMISSIBLE: i32 = 3;
pub const EXIT_PROPERTY: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "msph", version, about = "Markovian spherical averages of free-group actions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a chain and, optionally, an action.
    Validate {
        #[command(flatten)]
        chain: ChainArg,
        /// Action file, `builtin:parity` or `builtin:zmod:N`.
        #[arg(long)]
        action: Option<String>,
    },
    /// Decide admissibility up to a maximal order.
    Admissible {
        #[command(flatten)]
        chain: ChainArg,
        #[arg(long, default_value_t = 3)]
        k_max: usize,
        /// Write the certificate found to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a good subgraph only.
    Goodsub {
        #[command(flatten)]
        chain: ChainArg,
        /// Exact order to search; otherwise orders 1..=k-max are tried.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 3)]
        k_max: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the tail-map checks on randomly sampled words.
    Tailcheck {
        #[command(flatten)]
        chain: ChainArg,
        /// Certificate file; searched for when absent.
        #[arg(long)]
        cert: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        k_max: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Length of each sampled word.
        #[arg(long, default_value_t = 64)]
        word_len: usize,
        /// Occurrence index used by the swap maps; defaults to 2k + 2.
        #[arg(long)]
        occurrence: Option<usize>,
        /// Write the JSON report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the windowed L1 error series as CSV.
    Converge {
        #[command(flatten)]
        chain: ChainArg,
        #[arg(long)]
        action: String,
        /// Comma-separated values (`1,-1/2,0`) or `indicator:POINT`.
        #[arg(long = "f")]
        function: String,
        /// Window half-width; taken from the certificate order when absent.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 3)]
        k_max: usize,
        #[arg(long, default_value_t = 100)]
        n_max: usize,
        #[arg(long, default_value_t = 32)]
        exact_cap: usize,
        /// Cross-check the operator against the path sum first.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 8)]
        oracle_cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Replace the operator step by one that ignores the action.
        #[arg(long, hide = true)]
        fault_step: bool,
    },
}

#[derive(Debug, Args)]
pub struct ChainArg {
    /// Chain file, `builtin:uniform:R` or `builtin:surface`.
    #[arg(long)]
    pub chain: String,
}

/// A failure carrying its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn io(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_IO,
            message: message.into(),
        }
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

pub fn run(cli: Cli) -> i32 {
    let result = match cli.command {
        Command::Validate { chain, action } => commands::validate(&chain.chain, action.as_deref()),
        Command::Admissible { chain, k_max, out } => {
            commands::admissible(&chain.chain, k_max, out.as_deref())
        }
        Command::Goodsub {
            chain,
            k,
            k_max,
            out,
        } => commands::goodsub(&chain.chain, k, k_max, out.as_deref()),
        Command::Tailcheck {
            chain,
            cert,
            k_max,
            trials,
            seed,
            word_len,
            occurrence,
            out,
        } => commands::tailcheck(commands::TailcheckConfig {
            chain: &chain.chain,
            cert: cert.as_deref(),
            k_max,
            trials,
            seed,
            word_len,
            occurrence,
            out: out.as_deref(),
        }),
        Command::Converge {
            chain,
            action,
            function,
            k,
            k_max,
            n_max,
            exact_cap,
            oracle,
            oracle_cap,
            out,
            fault_step,
        } => commands::converge(commands::ConvergeConfig {
            chain: &chain.chain,
            action: &action,
            function: &function,
            k,
            k_max,
            n_max,
            exact_cap,
            oracle: oracle.then_some(oracle_cap),
            out: out.as_deref(),
            fault_step,
        }),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.code
        }
    }
}
