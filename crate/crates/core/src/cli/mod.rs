//! The `kgs` command line.
//!
//! Exit codes: 0 success, 1 failed checks or invalid graph, 2 parse or
//! configuration error, 3 no nontrivial solution, 4 parameters outside the
//! existence theory, 5 solver did not converge.

mod args;
mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::Parser;

pub use args::{Cli, Command, Format, KindArg};
pub use output::{ParamRecord, SolutionFile, SpectraReport, VerifyReport, VertexValue};

use crate::error::Error;
use crate::functional::EnergyParams;
use crate::graph::io::read_graph;
use crate::graph::{ViolationKind, WeightedGraph};
use crate::solver::{self, SolveOptions, SolveStatus};
use crate::space::ProblemKind;
use crate::spectral::{d_omega_explicit, SpectralConstants};
use crate::sweep::{sweep, ParamGrid};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NO_SOLUTION: i32 = 3;
pub const EXIT_OUT_OF_THEORY: i32 = 4;
pub const EXIT_NOT_CONVERGED: i32 = 5;

pub fn status_exit_code(status: SolveStatus) -> i32 {
    match status {
        SolveStatus::Solved => EXIT_OK,
        SolveStatus::NoNontrivialSolution => EXIT_NO_SOLUTION,
        SolveStatus::OutOfTheory => EXIT_OUT_OF_THEORY,
        SolveStatus::NotConverged => EXIT_NOT_CONVERGED,
    }
}

/// Failure carrying the exit code to report.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidGraph(_)
            | Error::Disconnected
            | Error::DegenerateForm
            | Error::Numerical(_)
            | Error::EmptyInterior => EXIT_FAILED,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Parses `args` and runs the command; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let outcome = match &cli.command {
        Command::Validate(a) => cmd_validate(a),
        Command::Spectra(a) => cmd_spectra(a),
        Command::Solve(a) => cmd_solve(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match outcome {
        Ok(code) => code,
        Err(f) => {
            eprintln!("kgs: {}", f.message);
            f.code
        }
    }
}

/// Writes through a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, contents: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn emit(out: Option<&Path>, contents: &str) -> Result<(), Failure> {
    match out {
        Some(p) => {
            write_atomic(p, contents.as_bytes()).map_err(|e| usage(format!("cannot write {}: {e}", p.display())))
        }
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("outputs always serialize");
    s.push('\n');
    s
}

fn require_json(format: Option<Format>) -> Result<(), Failure> {
    match format {
        None | Some(Format::Json) => Ok(()),
        Some(Format::Csv) => Err(usage("this command only writes json")),
    }
}

/// Loads the graph and rejects violations that matter for `kind` (or for
/// any kind when `kind` is `None`).
fn load_graph(path: &Path, kind: Option<KindArg>) -> Result<WeightedGraph, Failure> {
    let builder = read_graph(path)?;
    let report = builder.validate();
    let relevant: Vec<_> = report
        .violations
        .iter()
        .filter(|v| {
            !matches!(
                (kind, v.kind),
                (
                    Some(KindArg::WholeGraph),
                    ViolationKind::EmptyInterior | ViolationKind::BoundaryConsistency
                ) | (Some(KindArg::Dirichlet), ViolationKind::PotentialPositivity)
            )
        })
        .collect();
    if !relevant.is_empty() {
        let detail: Vec<String> = relevant.iter().map(|v| format!("{}: {}", v.kind, v.detail)).collect();
        return Err(Failure {
            code: EXIT_FAILED,
            message: format!("invalid graph: {}", detail.join("; ")),
        });
    }
    Ok(builder.build()?)
}

fn resolve_kind_arg(path: &Path, requested: Option<KindArg>) -> Result<KindArg, Failure> {
    if let Some(k) = requested {
        return Ok(k);
    }
    let builder = read_graph(path)?;
    let g = builder.build()?;
    if g.boundary_flags().is_some() {
        Ok(KindArg::Dirichlet)
    } else if g.potential().is_some() {
        Ok(KindArg::WholeGraph)
    } else {
        Err(usage(
            "cannot infer --kind: the graph has neither boundary flags nor a potential",
        ))
    }
}

fn problem_kind(g: &WeightedGraph, kind: KindArg) -> Result<ProblemKind, Failure> {
    Ok(match kind {
        KindArg::Dirichlet => ProblemKind::Dirichlet(g.marked_domain()?),
        KindArg::WholeGraph => {
            if g.potential().is_none() {
                return Err(Error::MissingPotential.into());
            }
            ProblemKind::WholeGraph
        }
    })
}

fn setup(io: &args::InputArgs) -> Result<(WeightedGraph, ProblemKind), Failure> {
    let kind_arg = resolve_kind_arg(&io.input, io.kind)?;
    let g = load_graph(&io.input, Some(kind_arg))?;
    let kind = problem_kind(&g, kind_arg)?;
    Ok((g, kind))
}

fn required(name: &str, v: Option<f64>) -> Result<f64, Failure> {
    v.ok_or_else(|| usage(format!("--{name} is required")))
}

fn solve_options(s: &args::SolverArgs) -> Result<SolveOptions, Failure> {
    let opts = SolveOptions {
        starts: s.starts,
        max_iters: s.max_iters,
        grad_tol: s.grad_tol,
        residual_tol: s.residual_tol,
        seed: s.seed,
        polish: !s.no_polish,
        force: s.force,
    };
    opts.validate()?;
    Ok(opts)
}

fn cmd_validate(a: &args::ValidateArgs) -> Outcome {
    require_json(a.io.format)?;
    let builder = read_graph(&a.io.input)?;
    let report = builder.validate();
    eprintln!(
        "{} vertices, {} edges, mu0 = {}, h0 = {}, connected = {}: {}",
        report.vertex_count,
        report.edge_count,
        report.mu0.map_or("-".into(), |v| v.to_string()),
        report.h0.map_or("-".into(), |v| v.to_string()),
        report.connected,
        report.summary()
    );
    emit(a.io.out.as_deref(), &to_json(&report))?;
    Ok(if report.is_ok() { EXIT_OK } else { EXIT_FAILED })
}

fn cmd_spectra(a: &args::SpectraArgs) -> Outcome {
    require_json(a.io.format)?;
    let (g, kind) = setup(&a.io)?;
    let (b, b_assumed) = match a.params.b {
        Some(b) if b >= 0.0 => (b, false),
        Some(b) => return Err(usage(format!("b must be >= 0, got {b}"))),
        None => (1.0, true),
    };
    let consts = SpectralConstants::compute(&g, &kind, b)?;
    let mut report = SpectraReport::new(&consts, b_assumed);
    if let (Some(av), Some(lambda), Some(eta)) = (a.params.a, a.params.lambda, a.params.eta) {
        let params = EnergyParams::new(av, b, lambda, eta, kind.clone())?;
        report.kappa = consts.kappa(&params).ok();
        if kind.is_whole_graph() {
            report.kappa_explicit = consts.whole_graph_radius(&params).ok();
        }
    }
    if let (Some(c), ProblemKind::Dirichlet(dom)) = (a.embedding_c, &kind) {
        report.d_omega = Some(d_omega_explicit(&g, dom, c));
    }
    eprintln!(
        "{}: lambda1 = {}, eta0 = {} (b = {}{}), d4_sharp = {}",
        report.kind,
        report.lambda1,
        report.eta0,
        report.b,
        if b_assumed { ", assumed" } else { "" },
        report.d4_sharp
    );
    emit(a.io.out.as_deref(), &to_json(&report))?;
    Ok(EXIT_OK)
}

fn cmd_solve(a: &args::SolveArgs) -> Outcome {
    let (g, kind) = setup(&a.io)?;
    let p = &a.params;
    let params = EnergyParams::new(
        required("a", p.a)?,
        required("b", p.b)?,
        required("lambda", p.lambda)?,
        required("eta", p.eta)?,
        kind,
    )?;
    let opts = solve_options(&a.solver)?;
    let result = solver::solve(&g, &params, &opts)?;
    let file = SolutionFile::new(&g, &params, &opts, &result);
    eprintln!(
        "{}: energy = {}, norm = {}, max residual = {:e}",
        result.status.as_str(),
        result.energy,
        result.norm,
        result.max_pointwise_residual
    );
    let text = match a.io.format {
        None | Some(Format::Json) => to_json(&file),
        Some(Format::Csv) => output::solution_csv(&file)?,
    };
    emit(a.io.out.as_deref(), &text)?;
    Ok(status_exit_code(result.status))
}

fn cmd_sweep(a: &args::SweepArgs) -> Outcome {
    let grid: ParamGrid = a.grid.parse()?;
    let (g, kind) = setup(&a.io)?;
    let keys: Vec<_> = grid.axes.iter().map(|x| x.key).collect();
    use crate::sweep::SweepKey;
    let pick = |name: &str, v: Option<f64>, key: SweepKey| -> Result<f64, Failure> {
        match v {
            Some(v) => Ok(v),
            None if keys.contains(&key) => Ok(0.0),
            None => Err(usage(format!("--{name} is required unless swept"))),
        }
    };
    let base = EnergyParams::new(
        required("a", a.params.a)?,
        pick("b", a.params.b, SweepKey::B)?,
        pick("lambda", a.params.lambda, SweepKey::Lambda)?,
        pick("eta", a.params.eta, SweepKey::Eta)?,
        kind,
    )?;
    let opts = solve_options(&a.solver)?;
    let rows = sweep(&g, &base, &grid, &opts)?;
    eprintln!("{} rows", rows.len());
    let text = match a.io.format {
        None | Some(Format::Csv) => output::sweep_csv(&rows)?,
        Some(Format::Json) => to_json(&rows),
    };
    emit(a.io.out.as_deref(), &text)?;
    Ok(EXIT_OK)
}

fn cmd_verify(a: &args::VerifyArgs) -> Outcome {
    require_json(a.io.format)?;
    let text = std::fs::read_to_string(&a.solution)
        .map_err(|e| usage(format!("cannot read {}: {e}", a.solution.display())))?;
    let file: SolutionFile = serde_json::from_str(&text).map_err(|e| usage(format!("bad solution file: {e}")))?;
    let kind_arg = match a.io.kind {
        Some(k) => k,
        None => match file.kind.as_str() {
            "dirichlet" => KindArg::Dirichlet,
            "whole-graph" => KindArg::WholeGraph,
            other => return Err(usage(format!("unknown kind {other:?} in solution file"))),
        },
    };
    let g = load_graph(&a.io.input, Some(kind_arg))?;
    let kind = problem_kind(&g, kind_arg)?;
    let u = file.function_on(&g).map_err(usage)?;
    let p = &a.params;
    let params = EnergyParams::new(
        p.a.unwrap_or(file.params.a),
        p.b.unwrap_or(file.params.b),
        p.lambda.unwrap_or(file.params.lambda),
        p.eta.unwrap_or(file.params.eta),
        kind,
    )?;
    let tol = a.residual_tol.unwrap_or(file.options.residual_tol);
    let consts = SpectralConstants::compute(&g, &params.kind, params.b)?;
    let bounds = solver::verify(&g, &params, &consts, &u, tol)?;
    let report = VerifyReport::new(&file, bounds);
    eprintln!("{}", report.summary());
    emit(a.io.out.as_deref(), &to_json(&report))?;
    Ok(if report.all_ok { EXIT_OK } else { EXIT_FAILED })
}
