//! Command-line front end: load, verify, construct, search and reproduce.
//!
//! Everything runs through [`run`], which returns the rendered report and
//! the exit code, so the binary and the tests share one code path.

mod commands;
mod report;
pub mod reproduce;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use report::{Format, Report};

/// Stable exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const FAILED: u8 = 1;
    pub const PARSE: u8 = 2;
    pub const BUDGET: u8 = 3;
}

#[derive(Debug, Parser)]
#[command(name = "kuniform", version, about = "Build and verify k-uniform mixed states")]
pub struct Cli {
    /// Worker threads (results are identical for any value).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Report layout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a GF(4) generator matrix: commuting, independence, uniformity.
    VerifyGen {
        file: PathBuf,
        /// Uniformity to check (default: report the largest k).
        #[arg(long)]
        k: Option<usize>,
        /// Also build ρ densely and check every k-party reduction.
        #[arg(long)]
        quantum: bool,
    },
    /// Measure strength and minimal distance of an array.
    VerifyOa {
        file: PathBuf,
        #[arg(long)]
        strength: Option<usize>,
        /// Require minimal distance at least this value.
        #[arg(long)]
        md: Option<usize>,
        /// Require irredundancy at this strength.
        #[arg(long)]
        irredundant: Option<usize>,
    },
    /// Verify a difference scheme and the array `D ⊕ (d)` it expands to.
    VerifyDs { file: PathBuf },
    /// Build a mixture, report purity and uniformity, optionally export it.
    State(StateArgs),
    /// Rebuild every table cell and compare purities exactly.
    Reproduce {
        #[arg(long, value_enum)]
        table: reproduce::Table,
    },
    /// Backtracking search for schemes or partitions.
    #[command(subcommand)]
    Search(SearchCommand),
}

#[derive(Debug, clap::Args)]
pub struct StateArgs {
    /// Array file followed by partition file.
    #[arg(long, num_args = 2, value_names = ["OA", "PARTITION"], group = "source")]
    pub from_partition: Option<Vec<PathBuf>>,
    #[arg(long, group = "source")]
    pub from_scheme: Option<PathBuf>,
    #[arg(long, group = "source")]
    pub from_gen: Option<PathBuf>,
    /// A bundled pipeline.
    #[arg(long, value_enum, group = "source")]
    pub recipe: Option<Recipe>,
    /// Prefix length for the `golay` recipe.
    #[arg(long, default_value_t = 1)]
    pub prefix: usize,
    /// Require k-uniformity.
    #[arg(long)]
    pub check_k: Option<usize>,
    /// Largest reduced dimension the uniformity scan may build.
    #[arg(long, default_value_t = 1 << 13)]
    pub max_dim: u64,
    #[arg(long)]
    pub export: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Recipe {
    ComplementPair,
    EvenWeight,
    PrintedScheme,
    PrintedSchemeInner,
    Shift,
    Golay,
    Product,
}

#[derive(Debug, Subcommand)]
pub enum SearchCommand {
    /// Search a difference scheme `D_k(r, N, d)`.
    Ds {
        runs: usize,
        factors: usize,
        levels: usize,
        strength: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Search an orthogonal partition of an array.
    Partition {
        oa: PathBuf,
        #[arg(long)]
        blocks: usize,
        /// Blocks need minimal distance at least k + 1.
        #[arg(long)]
        k: usize,
        #[arg(long)]
        block_strength: Option<usize>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, clap::Args)]
pub struct BudgetArgs {
    /// Node limit.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Wall-clock limit in seconds.
    #[arg(long, default_value_t = 60)]
    pub seconds: u64,
}

/// Runs a parsed command line. Returns the report text and the exit code.
pub fn run(cli: &Cli) -> (String, u8) {
    let work = || commands::dispatch(cli);
    let outcome = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(work),
            Err(e) => Err(commands::CliError::usage(format!("thread pool: {e}"))),
        },
        None => work(),
    };
    match outcome {
        Ok((report, code)) => (report.render(cli.format), code),
        Err(e) => (format!("error: {}\n", e.message), e.code),
    }
}

/// Parses `args` (including the program name) and runs them.
pub fn run_args<I, T>(args: I) -> (String, u8)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { exit::PARSE } else { exit::OK };
            (e.to_string(), code)
        }
    }
}
