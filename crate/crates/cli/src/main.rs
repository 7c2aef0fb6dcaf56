//! `abelian-psi`: sums, products and symmetric functions of element orders
//! of finite abelian groups, plus the verification sweeps.

mod commands;
mod render;

use std::io::Write;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};

use crate::render::Format;

/// Exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const USAGE: u8 = 1;
    pub const CAP: u8 = 2;
    pub const VIOLATION: u8 = 3;
    pub const COUNTEREXAMPLE: u8 = 4;
}

#[derive(Debug, Parser)]
#[command(name = "abelian-psi", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Emit JSON (all integers as decimal strings).
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,

    /// Emit CSV.
    #[arg(long, global = true)]
    pub csv: bool,

    /// Worker threads for sweeps; defaults to the number of CPUs.
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: Option<u16>,
}

impl Cli {
    fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else if self.csv {
            Format::Csv
        } else {
            Format::Table
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute invariants of one group, e.g. `Z4xZ3^2` or `[4,3,3]`.
    Compute(ComputeArgs),
    /// List every abelian group of order M with its product of element orders.
    Enumerate {
        m: u64,
    },
    /// Run a verification sweep.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Cross-check the formulas for one group against the brute-force oracles.
    Oracle {
        group: String,
    },
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("quantity").args(["psi", "psi_prime", "psi_k", "psi_all", "spectrum", "poly"])))]
pub struct ComputeArgs {
    pub group: String,

    /// Sum of element orders.
    #[arg(long)]
    pub psi: bool,

    /// Product of element orders, factored.
    #[arg(long)]
    pub psi_prime: bool,

    /// The K-th elementary symmetric function of the element orders.
    #[arg(long, value_name = "K")]
    pub psi_k: Option<u64>,

    /// All elementary symmetric functions psi_1..psi_n.
    #[arg(long)]
    pub psi_all: bool,

    /// Number of elements of each order.
    #[arg(long)]
    pub spectrum: bool,

    /// The order polynomial prod (X - o(x)), ascending coefficients.
    #[arg(long)]
    pub poly: bool,

    /// Expand psi' to a decimal integer (requires --digit-limit).
    #[arg(long, requires = "digit_limit")]
    pub materialize: bool,

    /// Largest number of decimal digits --materialize may produce.
    #[arg(long, value_name = "D", requires = "materialize")]
    pub digit_limit: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Strict increase of psi' along the lex order of partitions of N.
    TheoremC {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        n: u32,
    },
    /// No two groups of the same order share psi', for every order up to M.
    Injectivity {
        #[arg(long)]
        max_order: u64,
    },
    /// Groups of different orders sharing psi', up to order M.
    Collisions {
        #[arg(long)]
        max_order: u64,
    },
    /// Every psi_k separates groups of the same order, for orders up to M.
    ConjectureF {
        #[arg(long)]
        max_order: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE } else { exit::OK });
        }
    };
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(exit::USAGE);
        }
    }
    let (out, code) = match commands::run(&cli.command, cli.format()) {
        Ok(done) => (done.stdout, done.exit),
        Err(e) => {
            eprintln!("error: {e}");
            (String::new(), commands::exit_code(&e))
        }
    };
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return ExitCode::from(exit::USAGE);
    }
    ExitCode::from(code)
}
