use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "kprabhakar",
    version,
    about = "k-Prabhakar fractional calculus: special functions, operators, Green's function and Hartman-Wintner certificates",
    long_about = "Every command prints one JSON document on standard output and a short human summary on standard error.\n\n\
Exit codes: 0 ok, 1 usage/IO/parse error, 2 series or quadrature non-convergence, \
3 invalid or degenerate configuration, 4 spectral failure, 5 reduce-check failure, \
10 nonexistence certified by `hw`."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the k-Mittag-Leffler function E^γ_{k,ρ,β}(z).
    Ml(MlArgs),
    /// Evaluate the kernel ε(t), or with --jet the closed-form derivative.
    Kernel(KernelArgs),
    /// Evaluate the left-sided k-Prabhakar integral of f at x.
    Integral(IntegralArgs),
    /// Evaluate the k-Prabhakar derivative of f at x.
    Derivative(DerivativeArgs),
    /// Sample the Green's function on a grid and check its properties.
    Green(GreenArgs),
    /// Evaluate the Hartman-Wintner-type inequality for a potential q.
    Hw(HwArgs),
    /// Compute the critical constant potential λ*.
    Critical(CriticalArgs),
    /// Run the k = 1, ω = 0 golden-value suite.
    ReduceCheck,
}

#[derive(Debug, Args)]
pub struct MlArgs {
    #[arg(long, default_value_t = 1.0)]
    pub k: f64,
    #[arg(long, default_value_t = 1.0)]
    pub rho: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub gamma: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub z: f64,
    /// Relative tail tolerance of the series.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[arg(long, default_value_t = kprabhakar::kspecial::DEFAULT_MAX_TERMS)]
    pub max_terms: usize,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct ParamArgs {
    #[arg(long, default_value_t = 1.0)]
    pub k: f64,
    #[arg(long, default_value_t = 1.0)]
    pub rho: f64,
    #[arg(long)]
    pub beta: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub gamma: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub omega: f64,
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub t: f64,
    /// Replace β by β - shift·k.
    #[arg(long, default_value_t = 0, conflicts_with = "jet")]
    pub shift: u32,
    /// Order j of the derivative of t^{β/k-1} E(ω t^{ρ/k}) (no 1/k factor).
    #[arg(long)]
    pub jet: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    Jacobi,
    Graded,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct RuleArgs {
    /// Relative change under panel doubling accepted as converged.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = SchemeArg::Jacobi)]
    pub scheme: SchemeArg,
}

/// The integrand f: exactly one of the three sources.
#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("f").required(true).args(["f_const", "f_poly", "f_csv"])))]
pub struct FArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub f_const: Option<f64>,
    /// Coefficients "c0,c1,..." of f(t) = Σ c_i t^i.
    #[arg(long, allow_hyphen_values = true)]
    pub f_poly: Option<String>,
    /// Two-column CSV (t, f), linearly interpolated.
    #[arg(long)]
    pub f_csv: Option<PathBuf>,
}

/// The potential q: exactly one of the three sources.
#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("q").required(true).args(["q_const", "q_poly", "q_csv"])))]
pub struct QArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub q_const: Option<f64>,
    /// Coefficients "c0,c1,..." of q(t) = Σ c_i t^i.
    #[arg(long, allow_hyphen_values = true)]
    pub q_poly: Option<String>,
    /// Two-column CSV (t, q), linearly interpolated.
    #[arg(long)]
    pub q_csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct IntegralArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub x: f64,
    /// Base point of the operator.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub a: f64,
    #[command(flatten)]
    pub f: FArgs,
    #[command(flatten)]
    pub rule: RuleArgs,
}

#[derive(Debug, Args)]
pub struct DerivativeArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub x: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub a: f64,
    /// Right end of the domain; the stencil must stay inside [a, b].
    #[arg(long, allow_negative_numbers = true)]
    pub b: f64,
    /// Finite-difference step; defaults to (b - a)·1e-3.
    #[arg(long)]
    pub h: Option<f64>,
    #[command(flatten)]
    pub f: FArgs,
    #[command(flatten)]
    pub rule: RuleArgs,
}

#[derive(Debug, Args)]
pub struct GreenArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Number of intervals per axis; the grid has (n+1)² points.
    #[arg(long, default_value_t = 100)]
    pub grid: usize,
    /// CSV destination for the t,s,G rows.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also evaluate G at one point (requires --s).
    #[arg(long, requires = "s", allow_negative_numbers = true)]
    pub t: Option<f64>,
    #[arg(long, requires = "t", allow_negative_numbers = true)]
    pub s: Option<f64>,
}

#[derive(Debug, Args)]
pub struct HwArgs {
    #[arg(long)]
    pub config: PathBuf,
    #[command(flatten)]
    pub q: QArgs,
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct CriticalArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Number of Nyström nodes.
    #[arg(long, default_value_t = 128)]
    pub n: usize,
    /// Write the q ≡ 1 operator matrix as CSV.
    #[arg(long)]
    pub matrix_out: Option<PathBuf>,
}
