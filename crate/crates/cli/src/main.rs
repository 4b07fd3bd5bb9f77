//! `curve-gb`: parameters, closed-form bases, Gröbner checks, oracle
//! comparison, sweeps, and normal forms for monomial curves over almost
//! arithmetic sequences.
//!
//! Exit status: 0 when every check holds, 1 when a check produced a
//! counterexample, 2 for invalid input, 3 for an internal contract violation.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use curve_gb::{BasisKind, Direction, Error};

#[derive(Parser, Debug)]
#[command(name = "curve-gb", version)]
#[command(about = "Groebner bases of monomial curves over almost arithmetic sequences")]
#[command(after_help = "EXAMPLES:
    curve-gb params --arith 7,8 --mn 6
    curve-gb check --arith 7,8 --mn 6 --kind omega --order asc
    curve-gb nf --arith 7,8 --mn 6 x1^5 --engine ladder --explain
    curve-gb sweep --family odd-shift --m0 5..25 --json")]
struct Cli {
    /// Print a key-sorted JSON report instead of text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct CurveArgs {
    /// Arithmetic part m0,m1,...,mp (comma separated)
    #[arg(long, value_delimiter = ',', required = true)]
    arith: Vec<i64>,
    /// Free generator mn
    #[arg(long, allow_hyphen_values = true)]
    mn: i64,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum KindArg {
    Omega,
    PatilSingh,
    Phi,
}

impl From<KindArg> for BasisKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Omega => BasisKind::Omega,
            KindArg::PatilSingh => BasisKind::PatilSingh,
            KindArg::Phi => BasisKind::Phi,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum OrderArg {
    Asc,
    Desc,
}

impl From<OrderArg> for Direction {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::Asc => Direction::Ascending,
            OrderArg::Desc => Direction::Descending,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum EngineArg {
    Ladder,
    Generic,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum FamilyArg {
    OddShift,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Semigroup parameters of the curve
    Params(CurveArgs),

    /// Print one of the closed-form generator sets
    Basis {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, value_enum, default_value = "phi")]
        kind: KindArg,
        #[arg(long, value_enum, default_value = "asc")]
        order: OrderArg,
    },

    /// Buchberger and minimality checks of a generator set
    Check {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, value_enum, default_value = "phi")]
        kind: KindArg,
        #[arg(long, value_enum, default_value = "asc")]
        order: OrderArg,
    },

    /// Compare a basis (reduced Phi, or a file) with the elimination oracle
    Compare {
        #[command(flatten)]
        curve: CurveArgs,
        /// File with one binomial `lead - tail` per line
        #[arg(long)]
        basis_file: Option<PathBuf>,
    },

    /// Audit a family or a bounded domain of inputs
    Sweep {
        /// Named family, audited over --m0
        #[arg(long, value_enum, conflicts_with = "all")]
        family: Option<FamilyArg>,
        /// Inclusive range `lo..hi` of m0 for --family
        #[arg(long, default_value = "5..25")]
        m0: String,
        /// Every valid input within the --max-* bounds
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 30)]
        max_m0: u64,
        #[arg(long, default_value_t = 4)]
        max_p: usize,
        #[arg(long, default_value_t = 60)]
        max_mn: u64,
        /// Bound on the largest arithmetic term mp
        #[arg(long, default_value_t = 60)]
        max_mp: u64,
    },

    /// Normal form of a monomial modulo Phi
    Nf {
        #[command(flatten)]
        curve: CurveArgs,
        /// Monomial such as `x0^2*x2^3`, or `1`
        monomial: String,
        #[arg(long, value_enum, default_value = "generic")]
        engine: EngineArg,
        /// Show the rule trace (ladder engine)
        #[arg(long)]
        explain: bool,
    },
}

fn exit_code_for(e: &Error) -> u8 {
    if e.is_input_error() {
        2
    } else {
        3
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.command) {
        Ok(outcome) => {
            if cli.json {
                println!("{}", outcome.report.to_json());
            } else {
                print!("{}", outcome.text);
            }
            ExitCode::from(outcome.status)
        }
        Err(e) => {
            eprintln!("error: {}: {e}", e.name());
            if cli.json {
                println!("{}", report::error_report(&e).to_json());
            }
            ExitCode::from(exit_code_for(&e))
        }
    }
}
