use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use roc_ties::io::InputMode;
use roc_ties::PathConvention;

#[derive(Debug, Parser)]
#[command(name = "roc-ties", version, about = "Tie-aware ROC curves and AUC")]
pub struct Cli {
    /// Worker threads for resampling and simulation (results do not depend on it).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// AUC under one or all tie conventions.
    Auc(AucArgs),
    /// ROC curve geometry under a path convention.
    Curve(CurveArgs),
    /// Full disclosure report: all conventions, diagnostics, intervals.
    Report(ReportArgs),
    /// Monte Carlo estimate of the strict and half-ties AUC.
    Simulate(SimulateArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// CSV input; `-` reads standard input.
    #[arg(long)]
    pub input: PathBuf,

    #[arg(long, value_enum, default_value_t = Mode::Rows)]
    pub mode: Mode,

    /// Write output here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BootArgs {
    /// Bootstrap replicates (at least 100).
    #[arg(long, requires = "seed")]
    pub boot: Option<u32>,

    #[arg(long)]
    pub seed: Option<u64>,

    /// Confidence level for intervals.
    #[arg(long, default_value_t = 0.95)]
    pub level: f64,

    /// Which bootstrap intervals to print.
    #[arg(long, value_enum, default_value_t = CiKind::All)]
    pub ci: CiKind,
}

#[derive(Debug, Args)]
pub struct AucArgs {
    #[command(flatten)]
    pub input: InputArgs,

    #[arg(long, value_enum, default_value_t = ConventionArg::HalfTies)]
    pub convention: ConventionArg,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    #[command(flatten)]
    pub boot: BootArgs,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[command(flatten)]
    pub input: InputArgs,

    #[arg(long, value_enum, default_value_t = PathArg::Linear)]
    pub path: PathArg,

    /// csv or json; text falls back to csv.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Also render an SVG: next to `--out` with an `.svg` extension, or to
    /// standard output in place of the CSV when no `--out` is given.
    #[arg(long)]
    pub svg: bool,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Conventions to bootstrap when `--boot` is set.
    #[arg(long, value_enum, default_value_t = ConventionArg::All)]
    pub convention: ConventionArg,

    /// Include curve geometry for this path convention.
    #[arg(long, value_enum)]
    pub path: Option<PathArg>,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    #[command(flatten)]
    pub boot: BootArgs,

    /// Tie mass above which HIGH_TIE_MASS is raised.
    #[arg(long, default_value_t = 0.1)]
    pub tie_mass_warning: f64,

    /// Distinct-value count at or below which DISCRETE_PREDICTOR is raised.
    #[arg(long, default_value_t = 10)]
    pub discrete_max: usize,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub input: InputArgs,

    #[arg(long, default_value_t = 1_000_000)]
    pub draws: u64,

    #[arg(long)]
    pub seed: u64,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Rows,
    Counts,
}

impl From<Mode> for InputMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Rows => InputMode::Rows,
            Mode::Counts => InputMode::Counts,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    Strict,
    #[value(name = "half_ties")]
    HalfTies,
    Optimistic,
    All,
}

impl ConventionArg {
    pub fn conventions(self) -> Vec<PathConvention> {
        match self {
            ConventionArg::Strict => vec![PathConvention::PessimisticStep],
            ConventionArg::HalfTies => vec![PathConvention::Linear],
            ConventionArg::Optimistic => vec![PathConvention::OptimisticStep],
            ConventionArg::All => PathConvention::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PathArg {
    Linear,
    Pessimistic,
    Optimistic,
}

impl From<PathArg> for PathConvention {
    fn from(p: PathArg) -> Self {
        match p {
            PathArg::Linear => PathConvention::Linear,
            PathArg::Pessimistic => PathConvention::PessimisticStep,
            PathArg::Optimistic => PathConvention::OptimisticStep,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CiKind {
    Normal,
    Percentile,
    Bc,
    All,
}

impl CiKind {
    pub fn keeps(self, key: &str) -> bool {
        match self {
            CiKind::All => true,
            CiKind::Normal => key == "ci_normal",
            CiKind::Percentile => key == "ci_percentile",
            CiKind::Bc => key == "ci_bc",
        }
    }
}
