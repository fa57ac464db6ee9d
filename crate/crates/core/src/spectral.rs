//! Threshold constants of the existence theory.
//!
//! * `λ₁ = inf ‖u‖² / ∫u²`, the smallest eigenvalue of the pencil
//!   (norm form, μ-mass) on the admissible space, computed by a dense
//!   symmetric eigensolve of `M^{-1/2} Q M^{-1/2}`.
//! * `η₀ = inf b‖u‖⁴ / ∫u⁴ = b / D⁴` where `D⁴ = sup ∫u⁴ / ‖u‖⁴` is the
//!   sharp `L⁴` embedding constant. The supremum is a nonconvex problem on
//!   the unit sphere of the norm; it is solved by multistart projected
//!   gradient ascent in Cholesky coordinates `w = Rᵀu` (`Q = R Rᵀ`), where the
//!   sphere becomes the Euclidean unit sphere.

use nalgebra::{Cholesky, DMatrix, DVector, SymmetricEigen};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functional::EnergyParams;
use crate::graph::{Domain, GraphFunction, WeightedGraph};
use crate::space::{ProblemKind, Space};

/// Smallest generalized eigenvalue and its eigenvector, normalized to
/// `‖u‖ = 1` with nonnegative coordinate sum.
#[derive(Debug, Clone)]
pub struct EigenPair {
    pub value: f64,
    pub vector: GraphFunction,
}

pub fn principal_eigenpair(space: &Space<'_>) -> Result<EigenPair> {
    if !space.graph().is_connected() {
        return Err(Error::Disconnected);
    }
    let q = space.form_matrix();
    let m = space.mass();
    let inv_sqrt_m = m.map(|v| 1.0 / v.sqrt());
    let d = q.nrows();
    let a = DMatrix::from_fn(d, d, |i, j| inv_sqrt_m[i] * q[(i, j)] * inv_sqrt_m[j]);
    let eig = SymmetricEigen::new(a);
    let (imin, &value) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|x, y| x.1.total_cmp(y.1))
        .ok_or(Error::EmptyInterior)?;
    if !(value > 0.0) {
        return Err(Error::DegenerateForm);
    }
    let v = eig.eigenvectors.column(imin);
    let mut coords = DVector::from_iterator(d, v.iter().zip(inv_sqrt_m.iter()).map(|(a, b)| a * b));
    let norm = (coords.transpose() * &q * &coords)[(0, 0)].sqrt();
    let sign = if coords.sum() < 0.0 { -1.0 } else { 1.0 };
    coords *= sign / norm;
    Ok(EigenPair {
        value,
        vector: space.embed(&coords),
    })
}

/// `λ₁` of the Dirichlet problem on `dom`.
pub fn lambda1(graph: &WeightedGraph, dom: &Domain) -> Result<f64> {
    let kind = ProblemKind::Dirichlet(dom.clone());
    Ok(principal_eigenpair(&Space::new(graph, &kind)?)?.value)
}

/// `λ₁*` of the whole-graph problem.
pub fn lambda1_star(graph: &WeightedGraph) -> Result<f64> {
    let kind = ProblemKind::WholeGraph;
    Ok(principal_eigenpair(&Space::new(graph, &kind)?)?.value)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmbeddingOptions {
    pub starts: usize,
    pub max_iters: usize,
    /// Stop when the projected gradient norm falls below `grad_tol` times
    /// the radial component `w·∇f = 4f`.
    pub grad_tol: f64,
    pub seed: u64,
}

impl Default for EmbeddingOptions {
    fn default() -> Self {
        EmbeddingOptions {
            starts: 64,
            max_iters: 10_000,
            grad_tol: 1e-10,
            seed: 0,
        }
    }
}

/// Result of maximizing `∫u⁴ / ‖u‖⁴`.
#[derive(Debug, Clone)]
pub struct L4Embedding {
    /// `D⁴ = sup ∫u⁴ / ‖u‖⁴`.
    pub ratio: f64,
    /// Maximizer, `‖u‖ = 1`, sign-normalized like [`EigenPair`].
    pub maximizer: GraphFunction,
    pub best_start: usize,
    pub start_ratios: Vec<f64>,
    pub iterations: Vec<usize>,
}

struct SphereProblem {
    chol_l: DMatrix<f64>,
    mass: DVector<f64>,
}

impl SphereProblem {
    fn to_u(&self, w: &DVector<f64>) -> DVector<f64> {
        self.chol_l
            .tr_solve_lower_triangular(w)
            .expect("Cholesky factor is nonsingular")
    }

    fn value(&self, u: &DVector<f64>) -> f64 {
        u.iter().zip(self.mass.iter()).map(|(x, m)| m * x.powi(4)).sum()
    }

    fn gradient(&self, u: &DVector<f64>) -> DVector<f64> {
        let rhs = DVector::from_iterator(
            u.len(),
            u.iter().zip(self.mass.iter()).map(|(x, m)| 4.0 * m * x.powi(3)),
        );
        self.chol_l
            .solve_lower_triangular(&rhs)
            .expect("Cholesky factor is nonsingular")
    }

    /// Newton step on the sphere: solves the bordered system
    /// `[H − r I, w; wᵀ, 0] [ξ; ν] = [−g_t; 0]` with `H = 12 R⁻¹ diag(μu²) R⁻ᵀ`.
    fn newton_step(
        &self,
        w: &DVector<f64>,
        u: &DVector<f64>,
        radial: f64,
        tangent: &DVector<f64>,
    ) -> Option<DVector<f64>> {
        let d = w.len();
        let weights = DVector::from_iterator(d, u.iter().zip(self.mass.iter()).map(|(x, m)| 12.0 * m * x * x));
        let rinv = self.chol_l.clone().try_inverse()?;
        let h = rinv.clone() * DMatrix::from_diagonal(&weights) * rinv.transpose();
        let mut k = DMatrix::zeros(d + 1, d + 1);
        k.view_mut((0, 0), (d, d)).copy_from(&h);
        for i in 0..d {
            k[(i, i)] -= radial;
            k[(i, d)] = w[i];
            k[(d, i)] = w[i];
        }
        let mut rhs = DVector::zeros(d + 1);
        rhs.rows_mut(0, d).copy_from(&(-tangent));
        let sol = k.lu().solve(&rhs)?;
        let xi = sol.rows(0, d).into_owned();
        xi.iter().all(|v| v.is_finite()).then(|| (w + xi).normalize())
    }

    /// Ascent from `w0` on the unit sphere; returns (w, f, iterations).
    fn ascend(&self, w0: DVector<f64>, opts: &EmbeddingOptions) -> (DVector<f64>, f64, usize) {
        let mut w = w0.normalize();
        let mut u = self.to_u(&w);
        let mut f = self.value(&u);
        for it in 0..opts.max_iters {
            let g = self.gradient(&u);
            let radial = w.dot(&g);
            let tangent = &g - &w * radial;
            let gn2 = tangent.norm_squared();
            let rel = gn2.sqrt() / radial;
            if rel <= opts.grad_tol {
                return (w, f, it);
            }
            if rel < 1e-3 {
                if let Some(cand) = self.newton_step(&w, &u, radial, &tangent) {
                    let cu = self.to_u(&cand);
                    let cf = self.value(&cu);
                    let cg = self.gradient(&cu);
                    let cr = cand.dot(&cg);
                    let crel = (&cg - &cand * cr).norm() / cr;
                    if cf >= f - 4.0 * f64::EPSILON * f && crel < rel {
                        w = cand;
                        u = cu;
                        f = cf;
                        continue;
                    }
                }
            }
            // step 1/(w·g) is the normalized-gradient fixed point iteration
            let mut alpha = 1.0 / radial;
            let mut accepted = false;
            for _ in 0..60 {
                let cand = (&w + &tangent * alpha).normalize();
                let cu = self.to_u(&cand);
                let cf = self.value(&cu);
                if cf > f && cf >= f + 1e-4 * alpha * gn2 {
                    w = cand;
                    u = cu;
                    f = cf;
                    accepted = true;
                    break;
                }
                alpha *= 0.5;
            }
            if !accepted {
                return (w, f, it);
            }
        }
        (w, f, opts.max_iters)
    }
}

/// Sharp `L⁴` embedding constant of the admissible space, by multistart
/// ascent. Starts: the principal eigenvector, coordinate spikes, then seeded
/// random directions. The best ratio wins; ties go to the lowest start.
pub fn l4_embedding(space: &Space<'_>, opts: &EmbeddingOptions) -> Result<L4Embedding> {
    if opts.starts == 0 {
        return Err(Error::InvalidParameter("at least one start is required".into()));
    }
    let eig = principal_eigenpair(space)?;
    let q = space.form_matrix();
    let chol = Cholesky::new(q.clone()).ok_or(Error::DegenerateForm)?;
    let problem = SphereProblem {
        chol_l: chol.l(),
        mass: space.mass(),
    };
    let d = space.dim();

    let spike_budget = if d < opts.starts { d } else { opts.starts / 2 };
    let mut spike_order: Vec<usize> = (0..d).collect();
    // most concentrated spikes first: ∫e⁴/‖e‖⁴ = μ_i / Q_ii²
    spike_order.sort_by(|&i, &j| {
        let ri = problem.mass[i] / (q[(i, i)] * q[(i, i)]);
        let rj = problem.mass[j] / (q[(j, j)] * q[(j, j)]);
        rj.total_cmp(&ri).then(i.cmp(&j))
    });
    let lt = chol.l().transpose();
    let to_w = |u: &DVector<f64>| &lt * u;

    let results: Vec<(DVector<f64>, f64, usize)> = (0..opts.starts)
        .into_par_iter()
        .map(|k| {
            let u0 = if k == 0 {
                space.restrict(&eig.vector).expect("eigenvector is admissible")
            } else if k <= spike_budget {
                let mut e = DVector::zeros(d);
                e[spike_order[k - 1]] = 1.0;
                e
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
                rng.set_stream(k as u64);
                DVector::from_fn(d, |_, _| StandardNormal.sample(&mut rng))
            };
            problem.ascend(to_w(&u0), opts)
        })
        .collect();

    let mut best = 0;
    for (k, r) in results.iter().enumerate() {
        if r.1 > results[best].1 {
            best = k;
        }
    }
    let u = problem.to_u(&results[best].0);
    let sign = if u.sum() < 0.0 { -1.0 } else { 1.0 };
    let maximizer = space.embed(&(u * sign));
    let ratio = space.power_integral(&maximizer, 4)? / space.norm_sq(&maximizer)?.powi(2);
    Ok(L4Embedding {
        ratio,
        maximizer,
        best_start: best,
        start_ratios: results.iter().map(|r| r.1).collect(),
        iterations: results.iter().map(|r| r.2).collect(),
    })
}

/// `η₀ = inf b‖u‖⁴/∫u⁴` (or `η₀*` for the whole-graph kind).
pub fn eta0(graph: &WeightedGraph, kind: &ProblemKind, b: f64) -> Result<f64> {
    if !(b >= 0.0) {
        return Err(Error::InvalidParameter(format!("b must be >= 0, got {b}")));
    }
    if b == 0.0 {
        return Ok(0.0);
    }
    let space = Space::new(graph, kind)?;
    Ok(b / l4_embedding(&space, &EmbeddingOptions::default())?.ratio)
}

/// The embedding constant `D_Ω = C / μ_min,Ω · (1 + Σ_{x∈Ω} μ(x))` for a
/// user-supplied `L²` embedding constant `C`.
pub fn d_omega_explicit(graph: &WeightedGraph, dom: &Domain, c: f64) -> f64 {
    let mu = graph.measure();
    let min = dom.interior().iter().map(|&x| mu[x]).fold(f64::INFINITY, f64::min);
    let total: f64 = dom.interior().iter().map(|&x| mu[x]).sum();
    c / min * (1.0 + total)
}

/// Everything the existence theory needs about one graph and problem kind.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralConstants {
    pub kind: String,
    /// `λ₁` or `λ₁*`.
    pub lambda1: f64,
    /// `η₀` or `η₀*` at the stored `b`.
    pub eta0: f64,
    pub b: f64,
    /// `sup ‖u‖₄ / ‖u‖`.
    pub d4_sharp: f64,
    /// `d4_sharp⁴ = sup ∫u⁴ / ‖u‖⁴`.
    pub d4_pow4: f64,
    pub d_omega_explicit: Option<f64>,
    pub mu0: f64,
    pub h0: Option<f64>,
    /// Principal eigenvector, `‖·‖ = 1`.
    #[serde(skip)]
    pub ground_direction: Option<GraphFunction>,
    /// Minimizer of the `η₀` quotient, `‖·‖ = 1`.
    #[serde(skip)]
    pub eta0_direction: Option<GraphFunction>,
}

impl SpectralConstants {
    pub fn compute(graph: &WeightedGraph, kind: &ProblemKind, b: f64) -> Result<Self> {
        Self::compute_with(graph, kind, b, &EmbeddingOptions::default())
    }

    pub fn compute_with(graph: &WeightedGraph, kind: &ProblemKind, b: f64, opts: &EmbeddingOptions) -> Result<Self> {
        if !(b >= 0.0) || !b.is_finite() {
            return Err(Error::InvalidParameter(format!("b must be finite and >= 0, got {b}")));
        }
        let space = Space::new(graph, kind)?;
        let eig = principal_eigenpair(&space)?;
        let emb = l4_embedding(&space, opts)?;
        let h0 = match kind {
            ProblemKind::WholeGraph => graph.h0(),
            ProblemKind::Dirichlet(_) => None,
        };
        Ok(SpectralConstants {
            kind: kind.label().to_owned(),
            lambda1: eig.value,
            eta0: b / emb.ratio,
            b,
            d4_sharp: emb.ratio.powf(0.25),
            d4_pow4: emb.ratio,
            d_omega_explicit: None,
            mu0: graph.mu0(),
            h0,
            ground_direction: Some(eig.vector),
            eta0_direction: Some(emb.maximizer),
        })
    }

    /// Same constants at another `b` (`η₀` is linear in `b`).
    pub fn with_b(&self, b: f64) -> Self {
        SpectralConstants {
            eta0: b / self.d4_pow4,
            b,
            ..self.clone()
        }
    }

    /// `|λ| < a λ₁`.
    pub fn lambda_in_range(&self, params: &EnergyParams) -> bool {
        params.lambda.abs() < params.a * self.lambda1
    }

    /// `η > η₀` at the parameters' `b`.
    pub fn eta_above_threshold(&self, params: &EnergyParams) -> bool {
        params.eta > params.b / self.d4_pow4
    }

    fn check_range(&self, params: &EnergyParams) -> Result<()> {
        if !self.lambda_in_range(params) {
            return Err(Error::ParameterRange(format!(
                "|lambda| = {} >= a*lambda1 = {}",
                params.lambda.abs(),
                params.a * self.lambda1
            )));
        }
        if !self.eta_above_threshold(params) {
            return Err(Error::ParameterRange(format!(
                "eta = {} <= eta0 = {}",
                params.eta,
                params.b / self.d4_pow4
            )));
        }
        Ok(())
    }

    /// Nehari radius `κ = ((a − |λ|/λ₁) / (η D⁴))^{1/2}` with the sharp
    /// embedding constant: every Nehari-manifold member has `‖u‖ > κ`.
    pub fn kappa(&self, params: &EnergyParams) -> Result<f64> {
        self.check_range(params)?;
        Ok(((params.a - params.lambda.abs() / self.lambda1) / (params.eta * self.d4_pow4)).sqrt())
    }

    /// Whole-graph radius `((a − |λ|/λ₁*) μ₀ h₀² / η)^{1/2}` from the explicit
    /// embedding `∫u⁴ ≤ ‖u‖⁴_{W_h} / (μ₀ h₀²)`.
    pub fn whole_graph_radius(&self, params: &EnergyParams) -> Result<f64> {
        let h0 = self.h0.ok_or(Error::MissingPotential)?;
        self.check_range(params)?;
        Ok(((params.a - params.lambda.abs() / self.lambda1) * self.mu0 * h0 * h0 / params.eta).sqrt())
    }
}
