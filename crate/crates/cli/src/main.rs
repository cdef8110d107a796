//! `zmclab`: construct, classify and verify ZMC germs near light-like points.
//!
//! Exit codes: 0 success, 1 a check failed, 2 bad configuration,
//! 3 solver error, 4 I/O error.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{CommonArgs, RunConfig};

#[derive(Debug)]
pub enum Failure {
    Check(String),
    Config(String),
    Solver(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Config(_) => 2,
            Failure::Solver(_) => 3,
            Failure::Io(_) => 4,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Check(m) => write!(f, "check failed: {m}"),
            Failure::Config(m) => write!(f, "config error: {m}"),
            Failure::Solver(m) => write!(f, "solver error: {m}"),
            Failure::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<zmclab::Error> for Failure {
    fn from(e: zmclab::Error) -> Self {
        Failure::Solver(e.to_string())
    }
}

#[derive(Parser)]
#[command(name = "zmclab", version, about = "Zero mean curvature germs at light-like points")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve for the germ of an initial curve and sample it.
    Construct {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Invariants, family and causal-type prediction of a germ.
    Classify {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Tables of the approximation functions a_k(y).
    Approx {
        #[command(flatten)]
        common: CommonArgs,
        /// Highest k.
        #[arg(long, default_value_t = 6)]
        k: usize,
    },
    /// Surface of a null curve, as OBJ mesh and causal CSV.
    Bjorling {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Light-like ruled surface over a space-like curve.
    Ruled {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Admissibility of a germ, or regression checks of the gallery.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// List the built-in examples or dump one of them.
    Gallery {
        #[command(flatten)]
        common: CommonArgs,
        name: Option<String>,
    },
    /// Sample a series file or config germ to CSV and OBJ.
    Export {
        #[command(flatten)]
        common: CommonArgs,
        /// Series JSON as written by `construct`.
        #[arg(long)]
        series: Option<PathBuf>,
    },
}

fn init_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("ZMCLAB_THREADS") else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Config(format!("ZMCLAB_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Config(e.to_string()))
}

fn run(cli: Cli) -> Result<(), Failure> {
    init_threads()?;
    match &cli.command {
        Command::Construct { common } => commands::construct(&RunConfig::resolve(common)?),
        Command::Classify { common } => commands::classify(&RunConfig::resolve(common)?),
        Command::Approx { common, k } => commands::approx(&RunConfig::resolve(common)?, *k),
        Command::Bjorling { common } => commands::bjorling(&RunConfig::resolve(common)?),
        Command::Ruled { common } => commands::ruled(&RunConfig::resolve(common)?),
        Command::Verify { common } => commands::verify(&RunConfig::resolve(common)?),
        Command::Gallery { common, name } => commands::gallery(&RunConfig::resolve(common)?, name.as_deref()),
        Command::Export { common, series } => commands::export(&RunConfig::resolve(common)?, series.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("zmclab: {f}");
            ExitCode::from(f.code())
        }
    }
}
