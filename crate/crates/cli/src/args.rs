use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "perilap", version, about = "Fourier multipliers and periodic Poisson solves for the peridynamic Laplacian")]
#[command(args_override_self = true)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct Common {
    /// key=value file; keys match the long flag names, flags on the command line win
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Write the table here instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Omit the generation timestamp so identical configs give identical bytes
    #[arg(long, global = true)]
    pub no_timestamp: bool,
    #[arg(long, global = true)]
    pub rel_tol: Option<f64>,
    #[arg(long, global = true)]
    pub abs_tol: Option<f64>,
    #[arg(long, global = true)]
    pub max_terms: Option<usize>,
    #[arg(long, global = true)]
    pub cancellation_guard: Option<f64>,
    #[arg(long, global = true)]
    pub large_arg_threshold: Option<f64>,
    #[arg(long, global = true)]
    pub asymptotic_rel_tol: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// m(‖ν‖) at the given frequencies
    Multiplier(MultiplierArgs),
    /// Multiplier curves with asymptotes, limits or the quadrature oracle over a ν grid
    Sweep(SweepArgs),
    /// Solve L u = f on a periodic box and emit u on the grid
    Solve(SolveArgs),
    /// Poisson error against the local solution as δ → 0
    StudyDelta(StudyDeltaArgs),
    /// Poisson error against the local solution as β → n+2
    StudyBeta(StudyBetaArgs),
    /// Finite-β multipliers beside the β = −∞ limit
    Neginf(NeginfArgs),
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub delta: Option<f64>,
    /// Kernel exponent; `-inf` selects the limit operator
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    /// Use the classical Laplacian (β = n+2) instead of --beta
    #[arg(long, conflicts_with = "beta")]
    pub local: bool,
}

#[derive(Debug, Args)]
pub struct MultiplierArgs {
    #[command(flatten)]
    pub kernel: KernelArgs,
    /// Frequency norms, comma-separated
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    pub nu: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = 1.0)]
    pub nu_min: f64,
    /// Defaults to 318π
    #[arg(long)]
    pub nu_max: Option<f64>,
    #[arg(long, default_value_t = 1000)]
    pub count: usize,
    #[arg(long, value_enum, default_value_t = SpacingArg::Linear)]
    pub spacing: SpacingArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpacingArg {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// δ = 0.1; β below, at, one and three above n; n = 1, 2, 3
    Figure1,
    /// δ = 0.1; β ∈ {−100, −500, −inf}; n = 1, 2, 3
    Figure2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputArg {
    AsymptoteLarge,
    AsymptoteSmall,
    LimitNegInf,
    Oracle,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Parameter set and outputs of a stock figure; other kernel flags are then rejected
    #[arg(long, value_enum, conflicts_with_all = ["n", "delta", "beta"])]
    pub preset: Option<Preset>,
    /// Dimensions, comma-separated
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "0.1")]
    pub delta: Vec<f64>,
    /// Kernel exponents, comma-separated; `-inf` allowed
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub beta: Vec<String>,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Comparison columns, comma-separated
    #[arg(long, value_enum, value_delimiter = ',')]
    pub outputs: Vec<OutputArg>,
    #[arg(long, default_value_t = 1e-10)]
    pub oracle_tol: f64,
}

#[derive(Debug, Args)]
pub struct TorusArgs {
    /// Box side lengths, one value or one per axis
    #[arg(long = "l", value_delimiter = ',', default_value = "6.283185307179586")]
    pub lengths: Vec<f64>,
    /// Grid points per axis, one value or one per axis
    #[arg(long = "N", value_delimiter = ',')]
    pub grid: Vec<usize>,
    /// Right-hand side: sin1, gauss-meanzero, or a CSV file of samples
    #[arg(long, default_value = "sin1")]
    pub field: String,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub kernel: KernelArgs,
    #[command(flatten)]
    pub torus: TorusArgs,
}

#[derive(Debug, Args)]
pub struct StudyDeltaArgs {
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    /// Defaults to n
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    #[arg(long, value_delimiter = ',', default_value = "0.4,0.2,0.1,0.05")]
    pub deltas: Vec<f64>,
    #[command(flatten)]
    pub torus: TorusArgs,
}

#[derive(Debug, Args)]
pub struct StudyBetaArgs {
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long, default_value_t = 0.5)]
    pub delta: f64,
    /// Defaults to n+1, n+1.5, n+1.9, n+1.99
    #[arg(long, value_delimiter = ',')]
    pub betas: Vec<f64>,
    #[arg(long, default_value_t = 0.5)]
    pub epsilon: f64,
    #[command(flatten)]
    pub torus: TorusArgs,
}

#[derive(Debug, Args)]
pub struct NeginfArgs {
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value_t = 0.1)]
    pub delta: f64,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "-100,-500")]
    pub betas: Vec<f64>,
    #[command(flatten)]
    pub grid: GridArgs,
}
