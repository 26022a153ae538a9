use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use turankit_core::Backend;

#[derive(Debug, Parser)]
#[command(
    name = "turankit",
    version,
    about = "Turán determinants, criteria and nonnegative representations for symmetric recurrences"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Table of P_n(x).
    Eval,
    /// Table of Δ_n(x) = P_n² - P_{n+1}P_{n-1}.
    Turan,
    /// Run every applicable sufficiency criterion.
    Criteria,
    /// Dump the derived coefficient table.
    Derived,
    /// Identity and representation residual suite.
    Verify,
    /// Grid minima, K_n estimates and limits at x = 1.
    Scan,
    /// List built-in families.
    Families,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Exact,
    Float,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Exact => Backend::Exact,
            BackendArg::Float => Backend::Float,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Sequence spec as inline JSON.
    #[arg(long, global = true, conflicts_with = "spec_file")]
    pub spec: Option<String>,

    /// Sequence spec read from a file.
    #[arg(long, global = true, value_name = "PATH")]
    pub spec_file: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value = "exact")]
    pub backend: BackendArg,

    /// Largest index (default depends on the command).
    #[arg(long, global = true, value_name = "N")]
    pub n_max: Option<usize>,

    /// Derived table depth.
    #[arg(long = "M", global = true, value_name = "M")]
    pub depth: Option<usize>,

    /// Derived table width (derived only; defaults to --n-max elsewhere).
    #[arg(long = "N", global = true, value_name = "N")]
    pub width: Option<usize>,

    /// Chebyshev grid size for scan.
    #[arg(long, global = true, default_value_t = 2001)]
    pub grid_points: usize,

    /// Use the grid j/DEN, -DEN <= j <= DEN, instead of Chebyshev nodes.
    #[arg(long, global = true, value_name = "DEN")]
    pub rational_grid: Option<usize>,

    /// Evaluation point, `p/q` or decimal; repeatable.
    #[arg(long = "x", global = true, value_name = "X", allow_hyphen_values = true)]
    pub x: Vec<String>,

    #[arg(long, global = true, value_enum, default_value = "csv")]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Exit 1 when any criterion fails.
    #[arg(long, global = true)]
    pub expect_pass: bool,

    /// Restrict `criteria` to these names; repeatable.
    #[arg(long, global = true, value_name = "NAME")]
    pub criterion: Vec<String>,

    /// First index of the per-index triple criterion.
    #[arg(long, global = true, default_value_t = 1)]
    pub start: usize,

    /// Comparison slack on the float backend.
    #[arg(long, global = true, default_value_t = 0.0)]
    pub tolerance: f64,

    /// Emit plot data for these n (comma separated) from `scan`.
    #[arg(long, global = true, value_delimiter = ',', value_name = "N,..")]
    pub plot_n: Vec<usize>,
}
