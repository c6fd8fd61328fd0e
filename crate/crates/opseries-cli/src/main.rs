//! `opseries`: command-line front end over the `opseries` crate. Evaluates
//! the generalized Fresnel symbol, the Airy function, its quartic analogue
//! and the half-line Pearcey integral at points (`eval`) or uniform grids
//! (`table`), and runs the cross-validation suites (`check`).
//!
//! Exit codes: 0 when every record converged (or every check passed); 1 when
//! a value was computed but flagged non-converged, or a check failed; 2 when
//! flags are invalid or an argument lies outside a function's domain.

mod checks;
mod eval;
mod record;

use clap::{Args, Parser, Subcommand, ValueEnum};
use record::OutputFormat;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "opseries",
    version,
    about = "Series and quadrature evaluation of generalized Airy and half-line Pearcey integrals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one function at one point.
    Eval(EvalArgs),
    /// Evaluate one function on a uniform grid, one record per point.
    Table(TableArgs),
    /// Run a named cross-validation suite and report pass/fail per check.
    Check(CheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FunctionId {
    /// Airy function of the first kind.
    Ai,
    /// Quartic-phase Airy analogue.
    Ai4,
    /// Half-line Pearcey integral P(x, y).
    PearceyHalfline,
    /// Generalized Fresnel symbol C(alpha, beta) in closed form.
    Csym,
}

impl FunctionId {
    pub fn token(self) -> &'static str {
        match self {
            FunctionId::Ai => "ai",
            FunctionId::Ai4 => "ai4",
            FunctionId::PearceyHalfline => "pearcey-halfline",
            FunctionId::Csym => "csym",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    /// Power-series route (for pearcey-halfline an alias of double-sum).
    Series,
    /// Heat-polynomial expansion (pearcey-halfline only).
    Hermite,
    /// Rearranged double power series (pearcey-halfline only).
    DoubleSum,
    /// Adaptive quadrature on the rotated contour (the oracle).
    Quadrature,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    /// Quartic series exactly as often quoted, with the cosine factor in
    /// both angular slots. Documented as inconsistent with the integral.
    Verbatim,
    /// Quartic series with the sine factor restored; matches the oracle.
    Corrected,
}

/// Flags shared by `eval` and `table` that select and tune the route.
#[derive(Debug, Clone, Copy, Args)]
pub struct PolicyArgs {
    /// Evaluation route.
    #[arg(long, value_enum, default_value_t = MethodArg::Series)]
    pub method: MethodArg,

    /// Quartic-series variant; applies only to ai4 (default corrected).
    #[arg(long, value_enum)]
    pub variant: Option<VariantArg>,

    /// Tolerance: relative truncation threshold for series routes (default
    /// 1e-12), absolute tolerance for the quadrature route (default 1e-10).
    #[arg(long)]
    pub tol: Option<f64>,

    /// Series term cap; default 500, or OPSERIES_MAX_TERMS when set.
    #[arg(long)]
    pub max_terms: Option<usize>,
}

#[derive(Args)]
struct EvalArgs {
    /// Function to evaluate.
    #[arg(long, value_enum)]
    function: FunctionId,

    /// Evaluation point; required for ai, ai4 and pearcey-halfline.
    #[arg(long, allow_negative_numbers = true)]
    x: Option<f64>,

    /// Second coordinate; required for pearcey-halfline.
    #[arg(long, allow_negative_numbers = true)]
    y: Option<f64>,

    /// Phase exponent (> 1); required for csym.
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,

    /// Monomial power (> -1); required for csym.
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,

    #[command(flatten)]
    policy: PolicyArgs,

    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
}

#[derive(Args)]
struct TableArgs {
    /// Function to evaluate; for csym the x axis is alpha, the y axis beta.
    #[arg(long, value_enum)]
    function: FunctionId,

    /// First grid point along x.
    #[arg(long, allow_negative_numbers = true)]
    x_min: f64,

    /// Last grid point along x.
    #[arg(long, allow_negative_numbers = true)]
    x_max: f64,

    /// Number of grid points along x (1 collapses the axis to x-min).
    #[arg(long)]
    x_steps: usize,

    /// First grid point along y (y axis needs all three y flags).
    #[arg(long, allow_negative_numbers = true)]
    y_min: Option<f64>,

    /// Last grid point along y.
    #[arg(long, allow_negative_numbers = true)]
    y_max: Option<f64>,

    /// Number of grid points along y.
    #[arg(long)]
    y_steps: Option<usize>,

    #[command(flatten)]
    policy: PolicyArgs,

    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Airy differential equation residual on the reference grid.
    Ode,
    /// Pearcey evolution-equation residual, analytic and finite-difference.
    Pde,
    /// Double-sum vs heat-polynomial Pearcey expansion agreement.
    DualExpansion,
    /// Fresnel symbol closed form vs rotated-contour quadrature.
    ClosedForm,
    /// Hermite recurrence and exponentiated-operator identities.
    Hermite,
    /// Every suite above plus the pinned-oracle fixture regression.
    All,
}

#[derive(Args)]
struct CheckArgs {
    /// Suite to run.
    #[arg(long, value_enum)]
    suite: Suite,

    /// Override the suite's primary residual tolerance.
    #[arg(long)]
    tol: Option<f64>,

    /// Alternate pinned-fixture file for the regression check (suite all).
    #[arg(long)]
    fixtures: Option<std::path::PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Eval(args) => eval::run_eval(&args),
        Command::Table(args) => eval::run_table(&args),
        Command::Check(args) => checks::run_check(&args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
