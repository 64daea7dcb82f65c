//! `smoothring` command-line tool.
//!
//! Exit codes: 0 success or verified, 1 falsified or witness found,
//! 2 usage or parse error, 3 any other failure.

mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "smoothring", version, about = "Exact calculus on commutative rings")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub report: Format,
    /// Shorten printed integers longer than this many digits.
    #[arg(long, global = true)]
    pub digits_limit: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Ring classification.
    #[command(subcommand)]
    Ring(RingCmd),
    /// Finite algebras given as JSON documents.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Smooth functions.
    #[command(subcommand)]
    Smooth(SmoothCmd),
    /// Divisibility witnesses.
    #[command(subcommand)]
    Witness(WitnessCmd),
}

#[derive(Subcommand, Debug)]
pub enum RingCmd {
    /// Semi-integral and proper checks, e.g. `ring check Z/6`.
    Check {
        ring: String,
        /// Largest modulus scanned element by element.
        #[arg(long, default_value_t = smoothring::rings::DEFAULT_SCAN_BOUND)]
        bound: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum AlgebraCmd {
    /// Characters, type-C ideals and optional enumerations; `-` reads stdin.
    Analyze {
        file: String,
        #[arg(long)]
        enumerate_type_c: bool,
        #[arg(long)]
        enumerate_type_d: bool,
        #[arg(long)]
        compat_graph: bool,
        #[arg(long)]
        smooth_pairs: bool,
    },
}

#[derive(clap::Args, Debug, Clone)]
pub struct ExprArgs {
    #[arg(long, default_value = "Z")]
    pub ring: String,
    /// Domain, e.g. `Z`, `Z\{0}`, `{5}`, `2Z`; defaults to the whole ring.
    #[arg(long)]
    pub omega: Option<String>,
    #[arg(long)]
    pub expr: String,
}

#[derive(Subcommand, Debug)]
pub enum SmoothCmd {
    Eval {
        #[command(flatten)]
        e: ExprArgs,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// k-th derivative at a point.
    Derive {
        #[command(flatten)]
        e: ExprArgs,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        #[arg(long, default_value_t = 1)]
        order: usize,
    },
    /// Taylor jet of the given order.
    Jet {
        #[command(flatten)]
        e: ExprArgs,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        #[arg(long, default_value_t = 2)]
        order: usize,
    },
    /// `y = y(l) + (x - l) cofactor`.
    Decompose {
        #[command(flatten)]
        e: ExprArgs,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    CheckAbsorbing {
        #[arg(long, default_value = "Z")]
        ring: String,
        #[arg(long)]
        omega: Option<String>,
        #[arg(long, default_value_t = 16)]
        bound: u64,
    },
    /// Search for a non-integral iterated divided difference.
    Obstruction {
        #[command(flatten)]
        e: ExprArgs,
        /// Divide every value by this integer first (values must be multiples).
        #[arg(long, allow_hyphen_values = true)]
        divisor: Option<String>,
        /// Integer window `lo..hi`, visited in the order 0, 1, -1, 2, -2, ...
        #[arg(long, default_value = "-5..5", allow_hyphen_values = true)]
        window: String,
        #[arg(long, default_value_t = 1)]
        order: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum WitnessCmd {
    /// Check the divisibility chain up to the given depth.
    Verify {
        #[arg(long, default_value_t = smoothring::witness::DEFAULT_DEPTH)]
        depth: usize,
        /// Permit depths above 3.
        #[arg(long)]
        allow_deep: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.render(cli.report));
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {}", e.error);
            ExitCode::from(e.code)
        }
    }
}
