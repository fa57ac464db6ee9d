use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "kgs",
    version,
    about = "Least-energy solutions of Kirchhoff equations on weighted graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check graph invariants.
    Validate(ValidateArgs),
    /// Threshold constants λ₁, η₀ and the embedding constant.
    Spectra(SpectraArgs),
    /// Compute a ground state.
    Solve(SolveArgs),
    /// Solve over a parameter grid.
    Sweep(SweepArgs),
    /// Re-check a solution file.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Dirichlet,
    WholeGraph,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

fn finite(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("not a number: {s}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("not finite: {s}"))
    }
}

#[derive(Debug, Args)]
pub struct InputArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Defaults to dirichlet when the file flags boundary vertices, else
    /// whole-graph when it gives a potential.
    #[arg(long, value_enum)]
    pub kind: Option<KindArg>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    #[arg(long, value_parser = finite, allow_hyphen_values = true)]
    pub a: Option<f64>,
    #[arg(long, value_parser = finite, allow_hyphen_values = true)]
    pub b: Option<f64>,
    #[arg(long, value_parser = finite, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    #[arg(long, value_parser = finite, allow_hyphen_values = true)]
    pub eta: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    #[arg(long, default_value_t = 32)]
    pub starts: usize,
    #[arg(long, env = "KGS_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_parser = finite, default_value_t = 1e-10)]
    pub grad_tol: f64,
    #[arg(long, value_parser = finite, default_value_t = 1e-8)]
    pub residual_tol: f64,
    #[arg(long, default_value_t = 5000)]
    pub max_iters: usize,
    /// Skip the Newton polish.
    #[arg(long)]
    pub no_polish: bool,
    /// Solve even when |λ| ≥ aλ₁; bound checks are then marked not applicable.
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub io: InputArgs,
}

#[derive(Debug, Args)]
pub struct SpectraArgs {
    #[command(flatten)]
    pub io: InputArgs,
    #[command(flatten)]
    pub params: ParamArgs,
    /// L² embedding constant C; when given, D_Ω = C/μ_min(1 + μ(Ω)) is reported.
    #[arg(long, value_parser = finite)]
    pub embedding_c: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub io: InputArgs,
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub io: InputArgs,
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// e.g. "lambda=0:1:3,eta=2:10:5"; the first key varies slowest.
    #[arg(long)]
    pub grid: String,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub io: InputArgs,
    /// Parameters default to those recorded in the solution file.
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long)]
    pub solution: PathBuf,
    /// Defaults to the tolerance recorded in the solution file.
    #[arg(long, value_parser = finite)]
    pub residual_tol: Option<f64>,
}
