mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use detspace_core::{Config, Error};

use output::Context;

/// Exact algebra for subspaces of matrices over finite fields.
#[derive(Parser, Debug)]
#[command(name = "detspace", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed for every randomized path [env: DETSPACE_SEED]
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Largest affine domain q^d enumerated
    #[arg(long, global = true, default_value_t = Config::default().affine_cap, value_parser = positive)]
    pub affine_cap: u64,
    /// Largest projective domain enumerated
    #[arg(long, global = true, default_value_t = Config::default().projective_cap, value_parser = positive)]
    pub projective_cap: u64,
    /// Largest |GL(n,q)| scanned by group computations
    #[arg(long, global = true, default_value_t = Config::default().group_budget, value_parser = positive)]
    pub group_budget: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub output: Format,
    /// Worker threads (default: machine parallelism)
    #[arg(long, global = true, value_parser = positive_usize)]
    pub threads: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a named construction and write it as a subspace file
    Construct(commands::ConstructArgs),
    /// Determinantal polynomial det(x1 M1 + ... + xd Md)
    Detpoly(commands::InputArgs),
    /// Characteristic polynomial of one element of the subspace
    Charpoly(commands::CharpolyArgs),
    /// Zero count of the determinantal polynomial
    Census(commands::CensusArgs),
    /// Irreducibility and factorization verdicts
    Classify(commands::InputArgs),
    /// Singular elements and whether they form a subspace
    Singular(commands::InputArgs),
    /// Rank distribution and lower bounds on large-rank counts
    Rank(commands::InputArgs),
    /// Pfaffian of a skew subspace of even size
    Pfaffian(commands::InputArgs),
    /// Centralizer, and optionally normalizer, in GL(n,q)
    Group(commands::GroupArgs),
    /// Run one catalogue check, or the designated suite
    Verify(commands::VerifyArgs),
}

fn positive(s: &str) -> Result<u64, String> {
    match s.parse::<u64>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn positive_usize(s: &str) -> Result<usize, String> {
    positive(s).map(|v| v as usize)
}

/// Seed and where it came from: the flag wins over `DETSPACE_SEED`.
fn resolve_seed(flag: Option<u64>) -> Result<(u64, &'static str), String> {
    if let Some(s) = flag {
        return Ok((s, "flag"));
    }
    match std::env::var("DETSPACE_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map(|s| (s, "env DETSPACE_SEED"))
            .map_err(|_| format!("DETSPACE_SEED={v:?} is not an unsigned integer")),
        Err(_) => Ok((Config::default().seed, "default")),
    }
}

/// Exit codes: 0 success or pass, 1 verification failure, 2 usage, input or
/// cap errors.
fn main() -> ExitCode {
    let cli = Cli::parse();
    let (seed, seed_source) = match resolve_seed(cli.global.seed) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Some(t) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let cfg = Config {
        seed,
        affine_cap: cli.global.affine_cap,
        projective_cap: cli.global.projective_cap,
        group_budget: cli.global.group_budget,
        ..Config::default()
    };
    let ctx = Context {
        cfg,
        seed_source,
        format: cli.global.output,
    };
    match commands::run(&cli.command, &ctx) {
        Ok(outcome) => {
            print!("{}", outcome.rendered);
            ExitCode::from(if outcome.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Errors surfaced to the user; every variant maps to exit code 2.
#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(String),
    Usage(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) | CliError::Usage(e) => f.write_str(e),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}
