//! Ground states by minimizing the reduced energy `F(u) = max_{s>0} I(su)`
//! over cone directions.
//!
//! At `w = s_u u` the derivative of `F` along `v` is `⟨I'(w), s_u v⟩`: the
//! `∂s` term drops out because `⟨I'(w), w⟩ = 0`. Each start descends along
//! the Sobolev gradient `Q⁻¹ M g` (`g` the pointwise residual at `w`) with an
//! Armijo backtracking search, then optionally polishes `w` with damped
//! Newton on the full residual.

use nalgebra::{Cholesky, DMatrix, DVector, Dyn};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functional::{EnergyParams, Functional};
use crate::graph::{GraphFunction, WeightedGraph};
use crate::nehari::{NehariContext, DEFAULT_MEMBERSHIP_TOL};
use crate::space::{ProblemKind, Space};
use crate::spectral::SpectralConstants;

const ARMIJO: f64 = 1e-4;
const MAX_HALVINGS: usize = 60;
const RESAMPLES: usize = 16;
const CONE_PROBES: usize = 1024;
const POLISH_ITERS: usize = 50;
const POLISH_ENERGY_TOL: f64 = 1e-6;
const LEVEL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub starts: usize,
    pub max_iters: usize,
    /// Descent stops when the max pointwise residual is below this.
    pub grad_tol: f64,
    /// A start counts as converged when its final max pointwise residual is
    /// below this.
    pub residual_tol: f64,
    pub seed: u64,
    pub polish: bool,
    /// Solve even when `|λ| ≥ aλ₁`.
    pub force: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            starts: 32,
            max_iters: 5000,
            grad_tol: 1e-10,
            residual_tol: 1e-8,
            seed: 0,
            polish: true,
            force: false,
        }
    }
}

impl SolveOptions {
    pub fn validate(&self) -> Result<()> {
        if self.starts == 0 {
            return Err(Error::InvalidParameter("starts must be >= 1".into()));
        }
        for (name, v) in [("grad_tol", self.grad_tol), ("residual_tol", self.residual_tol)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be finite and > 0, got {v}"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolveStatus {
    Solved,
    NoNontrivialSolution,
    OutOfTheory,
    NotConverged,
}

impl SolveStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveStatus::Solved => "Solved",
            SolveStatus::NoNontrivialSolution => "NoNontrivialSolution",
            SolveStatus::OutOfTheory => "OutOfTheory",
            SolveStatus::NotConverged => "NotConverged",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precheck {
    Proceed,
    NoNontrivialSolution,
    OutOfTheory,
}

/// Classifies the parameters against the thresholds. `η ≤ η₀` with
/// `λ < aλ₁` admits only the trivial solution; `|λ| ≥ aλ₁` is outside the
/// existence theory.
pub fn precheck(consts: &SpectralConstants, params: &EnergyParams) -> Precheck {
    let a_lambda1 = params.a * consts.lambda1;
    let eta0 = params.b / consts.d4_pow4;
    if params.lambda < a_lambda1 && params.eta <= eta0 * (1.0 + 1e-9) {
        Precheck::NoNontrivialSolution
    } else if params.lambda.abs() >= a_lambda1 * (1.0 - 1e-10) {
        Precheck::OutOfTheory
    } else {
        Precheck::Proceed
    }
}

/// Checks of a candidate solution against the existence theorems.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    /// Whether `|λ| < aλ₁` and `η > η₀`, i.e. whether the bounds apply.
    pub applicable: bool,
    pub lambda_in_range: bool,
    pub eta_above_threshold: bool,
    /// Radius used for the norm check: the sharp `κ` (Dirichlet) or the
    /// explicit `μ₀h₀²` radius (whole graph).
    pub kappa: Option<f64>,
    pub kappa_sharp: Option<f64>,
    pub norm: f64,
    pub norm_exceeds_kappa: Option<bool>,
    pub energy: f64,
    pub energy_lower_bound: Option<f64>,
    pub energy_exceeds_bound: Option<bool>,
    pub energy_positive: bool,
    pub nehari_residual: f64,
    pub nehari_ok: bool,
    /// Max over free vertices of `|⟨I'(u), e_x⟩| / μ(x)`.
    pub max_residual: f64,
    pub residual_ok: bool,
}

impl BoundReport {
    /// Residual checks pass, and so do the bounds when they apply.
    pub fn all_ok(&self) -> bool {
        let bounds = !self.applicable
            || (self.norm_exceeds_kappa == Some(true)
                && self.energy_exceeds_bound == Some(true)
                && self.energy_positive);
        bounds && self.nehari_ok && self.residual_ok
    }
}

/// Recomputes energy, both residuals and the bound checks for `u` from
/// scratch. Failed checks are reported, not returned as errors.
pub fn verify(
    graph: &WeightedGraph,
    params: &EnergyParams,
    consts: &SpectralConstants,
    u: &GraphFunction,
    residual_tol: f64,
) -> Result<BoundReport> {
    let f = Functional::new(graph, params)?;
    let space = f.space();
    space.check_admissible(u)?;
    let splits = f.splits(u)?;
    let norm = splits.norm_sq.sqrt();
    let energy = splits.energy();
    let nehari_residual = splits.nehari();
    let nehari_ok =
        !u.is_zero() && nehari_residual.abs() <= DEFAULT_MEMBERSHIP_TOL * (1.0 + splits.norm_sq * splits.norm_sq);

    let mu = graph.measure();
    let mut max_residual = 0.0_f64;
    for i in 0..space.dim() {
        let e = space.spike(i);
        let x = space.free()[i];
        max_residual = max_residual.max((f.d_energy(u, &e)? / mu[x]).abs());
    }

    let lambda_in_range = consts.lambda_in_range(params);
    let eta_above_threshold = consts.eta_above_threshold(params);
    let applicable = lambda_in_range && eta_above_threshold;
    let (mut kappa, mut kappa_sharp, mut lower) = (None, None, None);
    let (mut norm_ok, mut energy_ok) = (None, None);
    if applicable {
        let sharp = consts.kappa(params)?;
        let radius = match params.kind {
            ProblemKind::Dirichlet(_) => sharp,
            ProblemKind::WholeGraph => consts.whole_graph_radius(params)?,
        };
        let bound = 0.25 * (params.a - params.lambda.abs() / consts.lambda1) * radius * radius;
        // with b = 0 both inequalities can be attained
        if params.b > 0.0 {
            norm_ok = Some(norm > radius);
            energy_ok = Some(energy > bound);
        } else {
            norm_ok = Some(norm >= radius * (1.0 - 1e-9));
            energy_ok = Some(energy >= bound * (1.0 - 1e-9));
        }
        kappa = Some(radius);
        kappa_sharp = Some(sharp);
        lower = Some(bound);
    }
    Ok(BoundReport {
        applicable,
        lambda_in_range,
        eta_above_threshold,
        kappa,
        kappa_sharp,
        norm,
        norm_exceeds_kappa: norm_ok,
        energy,
        energy_lower_bound: lower,
        energy_exceeds_bound: energy_ok,
        energy_positive: energy > 0.0,
        nehari_residual,
        nehari_ok,
        max_residual,
        residual_ok: max_residual <= residual_tol,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StartReport {
    pub index: usize,
    /// "eigenvector", "spike", "random" or "probe".
    pub origin: String,
    pub skipped: bool,
    pub energy: Option<f64>,
    pub iterations: usize,
    pub max_residual: Option<f64>,
    pub polished: bool,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Diagnostics {
    pub starts: Vec<StartReport>,
    pub best_start: Option<usize>,
    /// Energies of converged starts, merged within `1e-8` relative.
    pub distinct_levels: Vec<f64>,
    /// Number of fallback cone probes used when every start missed the cone.
    pub cone_probes: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    pub status: SolveStatus,
    pub kind: String,
    pub u: GraphFunction,
    pub energy: f64,
    pub norm: f64,
    pub nehari_residual: f64,
    pub max_pointwise_residual: f64,
    pub bounds: BoundReport,
    pub constants: SpectralConstants,
    pub diagnostics: Diagnostics,
}

/// Computes the spectral constants, then solves.
pub fn solve(graph: &WeightedGraph, params: &EnergyParams, opts: &SolveOptions) -> Result<SolveResult> {
    let consts = SpectralConstants::compute(graph, &params.kind, params.b)?;
    solve_with_constants(graph, params, &consts, opts)
}

/// Solves with precomputed constants (only `λ₁`, `D⁴` and the stored
/// directions are used, so constants computed at another `b` are fine).
pub fn solve_with_constants(
    graph: &WeightedGraph,
    params: &EnergyParams,
    consts: &SpectralConstants,
    opts: &SolveOptions,
) -> Result<SolveResult> {
    opts.validate()?;
    if consts.kind != params.kind.label() {
        return Err(Error::InvalidParameter(format!(
            "constants are for {} but parameters are for {}",
            consts.kind,
            params.kind.label()
        )));
    }
    let consts = consts.with_b(params.b);
    match precheck(&consts, params) {
        Precheck::NoNontrivialSolution => {
            return trivial(graph, params, consts, SolveStatus::NoNontrivialSolution, opts)
        }
        Precheck::OutOfTheory if !opts.force => return trivial(graph, params, consts, SolveStatus::OutOfTheory, opts),
        _ => {}
    }

    let ctx = NehariContext::unchecked(graph, params)?;
    let space = ctx.functional().space();
    let reduced = Reduced::new(space, params)?;
    let d = space.dim();
    let mut diagnostics = Diagnostics::default();

    // start directions
    let ground = consts
        .ground_direction
        .as_ref()
        .map(|g| space.restrict(g))
        .transpose()?;
    let mut spikes: Vec<(usize, f64)> = (0..d)
        .filter_map(|i| {
            let mut e = DVector::zeros(d);
            e[i] = 1.0;
            reduced.eval(&e).map(|p| (i, p.f))
        })
        .collect();
    spikes.sort_by(|x, y| x.1.total_cmp(&y.1).then(x.0.cmp(&y.0)));
    let spike_slots = spikes
        .len()
        .min(opts.starts.saturating_sub(1) / 2)
        .max(if opts.starts > 1 && d > 0 { 1 } else { 0 });
    let spike_slots = spike_slots.min(spikes.len());

    // the η₀ maximizer lies in the cone whenever η > η₀; misses are pulled toward it
    let anchor = consts
        .eta0_direction
        .as_ref()
        .map(|g| space.restrict(g).map(|x| reduced.normalized(x)))
        .transpose()?;
    let outcomes: Vec<(String, Option<Outcome>)> = (0..opts.starts)
        .into_par_iter()
        .map(|slot| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            rng.set_stream(slot as u64);
            let draw = |rng: &mut ChaCha8Rng| DVector::from_fn(d, |_, _| StandardNormal.sample(rng));
            let (origin, first) = if slot == 0 && ground.is_some() {
                ("eigenvector", ground.clone().unwrap())
            } else if slot >= 1 && slot <= spike_slots {
                let mut e = DVector::zeros(d);
                e[spikes[slot - 1].0] = 1.0;
                ("spike", e)
            } else {
                ("random", draw(&mut rng))
            };
            let mut u = first;
            for k in 0..=RESAMPLES {
                if reduced.eval(&u).is_some() {
                    return (origin.to_owned(), Some(reduced.run(u, opts)));
                }
                let r = reduced.normalized(draw(&mut rng));
                u = match &anchor {
                    Some(a) => a + r * 0.5_f64.powi(k as i32),
                    None => r,
                };
            }
            (origin.to_owned(), None)
        })
        .collect();

    let mut outcomes: Vec<(String, Option<Outcome>)> = outcomes;
    if outcomes.iter().all(|o| o.1.is_none()) {
        let extra = consts.eta0_direction.as_ref().or(consts.ground_direction.as_ref());
        match ctx.find_cone_member(extra, CONE_PROBES, opts.seed)? {
            Some((k, u)) => {
                diagnostics.cone_probes = Some(k + 1);
                let coords = space.restrict(&u)?;
                if reduced.eval(&coords).is_some() {
                    outcomes.push(("probe".into(), Some(reduced.run(coords, opts))));
                }
            }
            None => {
                let mut r = trivial(graph, params, consts, SolveStatus::NoNontrivialSolution, opts)?;
                r.diagnostics.cone_probes = Some(CONE_PROBES);
                return Ok(r);
            }
        }
    }

    let mut best: Option<usize> = None;
    let mut best_any: Option<usize> = None;
    let mut levels = Vec::new();
    for (k, (origin, out)) in outcomes.iter().enumerate() {
        diagnostics.starts.push(StartReport {
            index: k,
            origin: origin.clone(),
            skipped: out.is_none(),
            energy: out.as_ref().map(|o| o.energy),
            iterations: out.as_ref().map_or(0, |o| o.iterations),
            max_residual: out.as_ref().map(|o| o.max_residual),
            polished: out.as_ref().is_some_and(|o| o.polished),
            converged: out.as_ref().is_some_and(|o| o.converged),
        });
        let Some(o) = out else { continue };
        if best_any.is_none_or(|b| o.energy < outcomes[b].1.as_ref().unwrap().energy) {
            best_any = Some(k);
        }
        if o.converged {
            levels.push(o.energy);
            if best.is_none_or(|b| o.energy < outcomes[b].1.as_ref().unwrap().energy) {
                best = Some(k);
            }
        }
    }
    levels.sort_by(f64::total_cmp);
    for e in levels {
        match diagnostics.distinct_levels.last() {
            Some(&last) if (e - last).abs() <= LEVEL_TOL * e.abs().max(last.abs()) => {}
            _ => diagnostics.distinct_levels.push(e),
        }
    }

    let (status, pick) = match (best, best_any) {
        (Some(b), _) => (SolveStatus::Solved, b),
        (None, Some(b)) => (SolveStatus::NotConverged, b),
        (None, None) => return Err(Error::Numerical("no start could be evaluated".into())),
    };
    diagnostics.best_start = Some(pick);
    let w = &outcomes[pick].1.as_ref().unwrap().w;
    let u = sign_normalize(space.embed(w));
    let bounds = verify(graph, params, &consts, &u, opts.residual_tol)?;
    let f = ctx.functional();
    let splits = f.splits(&u)?;
    let max_pointwise_residual = crate::numeric::max_abs(f.residual(&u)?.values());
    let mut status = status;
    if status == SolveStatus::Solved
        && !(bounds.nehari_ok && max_pointwise_residual <= opts.residual_tol && splits.energy() > 0.0)
    {
        status = SolveStatus::NotConverged;
    }
    Ok(SolveResult {
        status,
        kind: params.kind.label().to_owned(),
        energy: splits.energy(),
        norm: splits.norm_sq.sqrt(),
        nehari_residual: splits.nehari(),
        max_pointwise_residual,
        u,
        bounds,
        constants: consts,
        diagnostics,
    })
}

fn trivial(
    graph: &WeightedGraph,
    params: &EnergyParams,
    consts: SpectralConstants,
    status: SolveStatus,
    opts: &SolveOptions,
) -> Result<SolveResult> {
    let u = graph.zeros();
    let bounds = verify(graph, params, &consts, &u, opts.residual_tol)?;
    Ok(SolveResult {
        status,
        kind: params.kind.label().to_owned(),
        u,
        energy: 0.0,
        norm: 0.0,
        nehari_residual: 0.0,
        max_pointwise_residual: 0.0,
        bounds,
        constants: consts,
        diagnostics: Diagnostics::default(),
    })
}

/// Makes the value at the first vertex attaining `max |u|` (within `1e-9`
/// relative) positive.
pub fn sign_normalize(u: GraphFunction) -> GraphFunction {
    let max = crate::numeric::max_abs(u.values());
    let pivot = u.values().iter().position(|v| v.abs() >= max * (1.0 - 1e-9));
    match pivot {
        Some(i) if u[i] < 0.0 => u.scaled(-1.0),
        _ => u,
    }
}

struct Outcome {
    w: DVector<f64>,
    energy: f64,
    iterations: usize,
    max_residual: f64,
    polished: bool,
    converged: bool,
}

/// A direction evaluated on its fiber.
struct Point {
    /// `F(u)`
    f: f64,
    s: f64,
    w: DVector<f64>,
    /// `M g`, the residual at `w` in the coordinate pairing.
    mg: DVector<f64>,
    coupling: f64,
    max_residual: f64,
}

/// The reduced problem in free coordinates: `Q` the norm matrix, `M` the
/// mass vector.
struct Reduced {
    q: DMatrix<f64>,
    chol: Cholesky<f64, Dyn>,
    m: DVector<f64>,
    a: f64,
    b: f64,
    lambda: f64,
    eta: f64,
}

impl Reduced {
    fn new(space: &Space<'_>, p: &EnergyParams) -> Result<Self> {
        let q = space.form_matrix();
        let chol = Cholesky::new(q.clone()).ok_or(Error::DegenerateForm)?;
        Ok(Reduced {
            q,
            chol,
            m: space.mass(),
            a: p.a,
            b: p.b,
            lambda: p.lambda,
            eta: p.eta,
        })
    }

    fn splits(&self, x: &DVector<f64>, qx: &DVector<f64>) -> (f64, f64, f64) {
        let n = x.dot(qx);
        let mut l2 = 0.0;
        let mut l4 = 0.0;
        for (xi, mi) in x.iter().zip(self.m.iter()) {
            let x2 = xi * xi;
            l2 += mi * x2;
            l4 += mi * x2 * x2;
        }
        (n, l2, l4)
    }

    /// `M g` at `x`, and the max of `|g|`.
    fn residual(&self, x: &DVector<f64>, qx: &DVector<f64>, coupling: f64) -> (DVector<f64>, f64) {
        let mut mg = qx * coupling;
        let mut max = 0.0_f64;
        for i in 0..x.len() {
            let xi = x[i];
            mg[i] -= self.m[i] * (self.lambda * xi + self.eta * xi * xi * xi);
            max = max.max((mg[i] / self.m[i]).abs());
        }
        (mg, max)
    }

    /// `None` outside `{I_η < 0, I_λ > 0}`.
    fn eval(&self, u: &DVector<f64>) -> Option<Point> {
        let qu = &self.q * u;
        let (n, l2, l4) = self.splits(u, &qu);
        let i_lambda = self.a * n - self.lambda * l2;
        let i_eta = self.b * n * n - self.eta * l4;
        if !(i_eta < 0.0 && i_lambda > 0.0) || !i_lambda.is_finite() {
            return None;
        }
        let s = (-i_lambda / i_eta).sqrt();
        let w = u * s;
        let coupling = self.a + self.b * s * s * n;
        let (mg, max_residual) = self.residual(&w, &(qu * s), coupling);
        Some(Point {
            f: i_lambda * i_lambda / (-4.0 * i_eta),
            s,
            w,
            mg,
            coupling,
            max_residual,
        })
    }

    fn energy_at(&self, w: &DVector<f64>) -> f64 {
        let (n, l2, l4) = self.splits(w, &(&self.q * w));
        0.5 * (self.a * n - self.lambda * l2) + 0.25 * (self.b * n * n - self.eta * l4)
    }

    fn normalized(&self, u: DVector<f64>) -> DVector<f64> {
        let n = u.dot(&(&self.q * &u)).sqrt();
        u / n
    }

    fn run(&self, u0: DVector<f64>, opts: &SolveOptions) -> Outcome {
        let (point, iterations) = self.descend(u0, opts);
        let mut out = Outcome {
            energy: point.f,
            max_residual: point.max_residual,
            w: point.w,
            iterations,
            polished: false,
            converged: false,
        };
        if opts.polish && out.max_residual > 0.0 {
            if let Some((w, r)) = self.polish(&out.w, out.max_residual) {
                let e = self.energy_at(&w);
                if (e - out.energy).abs() <= POLISH_ENERGY_TOL * out.energy.abs() {
                    out.w = w;
                    out.energy = e;
                    out.max_residual = r;
                    out.polished = true;
                }
            }
        }
        out.converged = out.max_residual <= opts.residual_tol && out.energy > 0.0;
        out
    }

    fn descend(&self, u0: DVector<f64>, opts: &SolveOptions) -> (Point, usize) {
        let mut u = self.normalized(u0);
        let mut p = self.eval(&u).expect("start lies in the cone");
        for it in 0..opts.max_iters {
            if p.max_residual <= opts.grad_tol {
                return (p, it);
            }
            let dir = self.chol.solve(&p.mg) / (p.coupling * p.s);
            let slope = p.s * p.mg.dot(&dir);
            let floor = 4.0 * f64::EPSILON * p.f.abs();
            let mut alpha = 1.0;
            let mut next = None;
            for _ in 0..MAX_HALVINGS {
                let cand = self.normalized(&u - &dir * alpha);
                if let Some(c) = self.eval(&cand) {
                    let predicted = ARMIJO * alpha * slope;
                    let sufficient = c.f <= p.f - predicted;
                    // below rounding, settle for no increase and a smaller residual
                    let rounding = predicted < floor && c.f <= p.f + floor && c.max_residual < p.max_residual;
                    if sufficient || rounding {
                        next = Some((cand, c));
                        break;
                    }
                }
                alpha *= 0.5;
            }
            match next {
                Some((cand, c)) => {
                    u = cand;
                    p = c;
                }
                None => return (p, it),
            }
        }
        (p, opts.max_iters)
    }

    /// Damped Newton on `(a + b xᵀQx) Qx − λMx − ηMx³ = 0`.
    fn polish(&self, w0: &DVector<f64>, r0: f64) -> Option<(DVector<f64>, f64)> {
        let d = w0.len();
        let mut w = w0.clone();
        let mut r = r0;
        let mut moved = false;
        for _ in 0..POLISH_ITERS {
            let qw = &self.q * &w;
            let coupling = self.a + self.b * w.dot(&qw);
            let (mg, _) = self.residual(&w, &qw, coupling);
            let mut jac = &self.q * coupling + (&qw * qw.transpose()) * (2.0 * self.b);
            for i in 0..d {
                jac[(i, i)] -= self.m[i] * (self.lambda + 3.0 * self.eta * w[i] * w[i]);
            }
            let step = jac.lu().solve(&mg)?;
            let mut t = 1.0;
            let mut accepted = false;
            for _ in 0..30 {
                let cand = &w - &step * t;
                let qc = &self.q * &cand;
                let cc = self.a + self.b * cand.dot(&qc);
                let (_, rc) = self.residual(&cand, &qc, cc);
                if rc < r {
                    w = cand;
                    r = rc;
                    accepted = true;
                    break;
                }
                t *= 0.5;
            }
            if !accepted || r == 0.0 {
                break;
            }
            moved = true;
        }
        moved.then_some((w, r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families;

    fn star(a: f64, b: f64, lambda: f64, eta: f64) -> (WeightedGraph, EnergyParams) {
        let (g, dom) = families::star(2);
        (
            g,
            EnergyParams::new(a, b, lambda, eta, ProblemKind::Dirichlet(dom)).unwrap(),
        )
    }

    #[test]
    fn precheck_examples() {
        let (g, p) = star(1.0, 1.0, 0.0, 3.0);
        let c = SpectralConstants::compute(&g, &p.kind, 1.0).unwrap();
        assert_eq!(precheck(&c, &p), Precheck::NoNontrivialSolution);
        let p2 = p.with_scalars(1.0, 2.0, 8.0).unwrap();
        assert_eq!(precheck(&c, &p2), Precheck::OutOfTheory);
        let p3 = p.with_scalars(1.0, 0.0, 8.0).unwrap();
        assert_eq!(precheck(&c, &p3), Precheck::Proceed);
        let p4 = p.with_scalars(1.0, 0.0, 4.0).unwrap();
        assert_eq!(precheck(&c, &p4), Precheck::NoNontrivialSolution);
    }

    #[test]
    fn star_closed_form() {
        let (g, p) = star(1.0, 1.0, 0.0, 8.0);
        let r = solve(&g, &p, &SolveOptions::default()).unwrap();
        assert_eq!(r.status, SolveStatus::Solved);
        assert!((r.u[0] - 0.5_f64.sqrt()).abs() < 1e-12);
        assert!((r.energy - 0.25).abs() < 1e-12);
        assert!((r.norm * r.norm - 1.0).abs() < 1e-12);
        assert!(r.bounds.all_ok());
        assert!((r.bounds.kappa.unwrap().powi(2) - 0.5).abs() < 1e-12);
        assert!((r.bounds.energy_lower_bound.unwrap() - 0.125).abs() < 1e-12);

        let (g, p) = star(1.0, 0.0, 1.0, 1.0);
        let r = solve(&g, &p, &SolveOptions::default()).unwrap();
        assert_eq!(r.status, SolveStatus::Solved);
        assert!((r.u[0] - 1.0).abs() < 1e-12);
        assert!((r.energy - 0.25).abs() < 1e-12);
        assert!(r.bounds.all_ok(), "{:?}", r.bounds);
    }

    #[test]
    fn triangle_constant_solution() {
        let g = families::triangle_with_potential(1.0);
        let p = EnergyParams::new(1.0, 0.0, 0.0, 1.0, ProblemKind::WholeGraph).unwrap();
        let r = solve(&g, &p, &SolveOptions::default()).unwrap();
        assert_eq!(r.status, SolveStatus::Solved);
        for x in 0..3 {
            assert!((r.u[x] - 1.0).abs() < 1e-10, "{:?}", r.u);
        }
        assert!((r.energy - 0.75).abs() < 1e-10);
        assert!(r.bounds.all_ok());
    }

    #[test]
    fn refused_statuses() {
        let (g, p) = star(1.0, 1.0, 0.0, 3.0);
        let r = solve(&g, &p, &SolveOptions::default()).unwrap();
        assert_eq!(r.status, SolveStatus::NoNontrivialSolution);
        let (g, p) = star(1.0, 1.0, 5.0, 8.0);
        let r = solve(&g, &p, &SolveOptions::default()).unwrap();
        assert_eq!(r.status, SolveStatus::OutOfTheory);
        assert!(!r.bounds.applicable);
    }

    #[test]
    fn forced_run_marks_bounds_inapplicable() {
        let (g, p) = star(1.0, 1.0, -3.0, 8.0);
        let opts = SolveOptions {
            force: true,
            ..Default::default()
        };
        let r = solve(&g, &p, &opts).unwrap();
        assert_eq!(r.status, SolveStatus::Solved);
        assert!(!r.bounds.applicable);
        assert!(r.bounds.kappa.is_none());
        // t² = (2 + 3)/(8 − 4)
        assert!((r.u[0] * r.u[0] - 1.25).abs() < 1e-12);
    }

    #[test]
    fn sign_normalization() {
        let u = sign_normalize(GraphFunction::new(vec![0.5, -1.0, 1.0]));
        assert_eq!(u.values(), &[-0.5, 1.0, -1.0]);
    }

    #[test]
    fn tampered_solution_fails_verification() {
        let (g, p) = star(1.0, 1.0, 0.0, 8.0);
        let r = solve(&g, &p, &SolveOptions::default()).unwrap();
        let report = verify(&g, &p, &r.constants, &r.u.scaled(0.9), 1e-8).unwrap();
        assert!(!report.nehari_ok);
        assert!(!report.all_ok());
    }
}
