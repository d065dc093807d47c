//! `mubfunc`: evaluate, tabulate and verify the Gauss-sum multiplicative
//! functions from the command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input,
//! 3 bound exceeded.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "mubfunc",
    version,
    about = "Exact multiplicative functions from quadratic Gauss sums"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Output format (tables default to csv, everything else to text).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Seed for randomized verification.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Upper bound on n; overrides the default bounds.
    #[arg(long, global = true, env = "MUBFUNC_MAX_N")]
    pub max_n: Option<u64>,

    /// Tolerance for floating-point comparisons.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tolerance: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one function: phi, mu, jacobi, xi, h, h1, h2, hsharp, fsharp, s, gauss.
    Eval {
        name: String,
        /// `n`, or `j k` for jacobi, `m n` for gauss.
        #[arg(required = true, allow_negative_numbers = true)]
        args: Vec<String>,
        #[command(flatten)]
        fopts: FnOpts,
    },
    /// Tabulate a one-argument function over from..=to.
    Table {
        name: String,
        from: u64,
        to: u64,
        #[command(flatten)]
        fopts: FnOpts,
    },
    /// Run a property suite: core, xi, gauss, families, hsharp, mub, all.
    Verify { suite: String },
    /// Evaluate S(m, n).
    Gauss {
        #[arg(allow_negative_numbers = true)]
        m: i64,
        n: u64,
        #[arg(long, conflicts_with_all = ["direct", "both"])]
        closed: bool,
        #[arg(long, conflicts_with = "both")]
        direct: bool,
        /// Closed form and direct sum (the default).
        #[arg(long)]
        both: bool,
    },
    /// Weyl-Schwinger harness report for dimension n.
    Mub {
        n: usize,
        #[arg(long, value_enum, default_value_t = Report::Text)]
        report: Report,
    },
    /// Squarefree decomposition n = λν².
    Squarefree {
        n: u64,
        #[arg(long, value_enum, default_value_t = Via::Factor)]
        via: Via,
    },
}

#[derive(Debug, Clone, Args)]
pub struct FnOpts {
    /// GenParams JSON file for h1 / h2.
    #[arg(long)]
    pub params: Option<std::path::PathBuf>,

    /// Inner function: a builtin name or a JSON file (default sqrt).
    #[arg(long = "f")]
    pub f: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Report {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Via {
    Hsharp,
    Factor,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code_for(&e))
        }
    }
}
