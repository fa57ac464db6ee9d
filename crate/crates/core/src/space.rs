//! The admissible function space of each problem kind.
//!
//! Dirichlet problems live on functions vanishing off the interior `Ω`,
//! with the gradient integrals taken over the closure `Ω ∪ ∂Ω` and the
//! power integrals over `Ω`. Whole-graph problems live on all functions on
//! `V` with the norm `‖u‖²_{W_h} = ∫_V (|∇u|² + h u²) dμ`. In both cases the
//! degrees of freedom are the "free" vertices (interior or all of `V`).

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::graph::{gamma, integrate, laplacian, Domain, GraphFunction, WeightedGraph};

#[derive(Debug, Clone, PartialEq)]
pub enum ProblemKind {
    Dirichlet(Domain),
    WholeGraph,
}

impl ProblemKind {
    pub fn label(&self) -> &'static str {
        match self {
            ProblemKind::Dirichlet(_) => "dirichlet",
            ProblemKind::WholeGraph => "whole-graph",
        }
    }

    pub fn is_whole_graph(&self) -> bool {
        matches!(self, ProblemKind::WholeGraph)
    }
}

#[derive(Debug, Clone)]
pub struct Space<'g> {
    graph: &'g WeightedGraph,
    kind: &'g ProblemKind,
    free: Vec<usize>,
    all: Vec<usize>,
}

impl<'g> Space<'g> {
    pub fn new(graph: &'g WeightedGraph, kind: &'g ProblemKind) -> Result<Self> {
        let all: Vec<usize> = (0..graph.len()).collect();
        let free = match kind {
            ProblemKind::Dirichlet(dom) => {
                if dom.graph_len() != graph.len() {
                    return Err(Error::LengthMismatch {
                        expected: graph.len(),
                        got: dom.graph_len(),
                    });
                }
                if dom.interior().is_empty() {
                    return Err(Error::EmptyInterior);
                }
                dom.interior().to_vec()
            }
            ProblemKind::WholeGraph => {
                let h0 = graph.h0().ok_or(Error::MissingPotential)?;
                if !(h0 > 0.0) {
                    return Err(Error::InvalidParameter(format!(
                        "potential must satisfy h >= h0 > 0, min h = {h0}"
                    )));
                }
                all.clone()
            }
        };
        Ok(Space { graph, kind, free, all })
    }

    pub fn graph(&self) -> &'g WeightedGraph {
        self.graph
    }

    pub fn kind(&self) -> &'g ProblemKind {
        self.kind
    }

    /// Vertices carrying degrees of freedom, sorted.
    pub fn free(&self) -> &[usize] {
        &self.free
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    /// Vertex set over which the gradient part of the norm is integrated.
    pub fn gradient_set(&self) -> &[usize] {
        match self.kind {
            ProblemKind::Dirichlet(dom) => dom.closure(),
            ProblemKind::WholeGraph => &self.all,
        }
    }

    pub fn check_admissible(&self, u: &GraphFunction) -> Result<()> {
        match self.kind {
            ProblemKind::Dirichlet(dom) => dom.check_admissible(u),
            ProblemKind::WholeGraph => u.check_len(self.graph.len()),
        }
    }

    /// Symmetric bilinear form whose diagonal is `‖u‖²`.
    pub fn form(&self, u: &GraphFunction, v: &GraphFunction) -> Result<f64> {
        self.check_admissible(u)?;
        self.check_admissible(v)?;
        let g = self.graph;
        let mut dens = gamma(g, u, v)?;
        if let (ProblemKind::WholeGraph, Some(h)) = (self.kind, g.potential()) {
            for (x, d) in dens.values_mut().iter_mut().enumerate() {
                *d += h[x] * u[x] * v[x];
            }
        }
        integrate(g, self.gradient_set(), &dens)
    }

    pub fn norm_sq(&self, u: &GraphFunction) -> Result<f64> {
        Ok(self.form(u, u)?.max(0.0))
    }

    /// `∫ |u|^p dμ` over the free vertices.
    pub fn power_integral(&self, u: &GraphFunction, p: i32) -> Result<f64> {
        self.check_admissible(u)?;
        integrate(self.graph, &self.free, &u.map(|v| v.abs().powi(p)))
    }

    /// `∫ u v dμ` over the free vertices.
    pub fn mass_pairing(&self, u: &GraphFunction, v: &GraphFunction) -> Result<f64> {
        self.check_admissible(u)?;
        self.check_admissible(v)?;
        let prod = GraphFunction::new(u.values().iter().zip(v.values()).map(|(a, b)| a * b).collect());
        integrate(self.graph, &self.free, &prod)
    }

    /// Pointwise operator representing [`Space::form`] in the μ-pairing:
    /// `−Δu` (Dirichlet, on Ω) or `−Δu + h u` (whole graph). Zero off the
    /// free set.
    pub fn operator(&self, u: &GraphFunction) -> Result<GraphFunction> {
        self.check_admissible(u)?;
        let lap = laplacian(self.graph, u)?;
        let mut out = vec![0.0; self.graph.len()];
        let h = match self.kind {
            ProblemKind::WholeGraph => self.graph.potential(),
            ProblemKind::Dirichlet(_) => None,
        };
        for &x in &self.free {
            out[x] = -lap[x] + h.map_or(0.0, |h| h[x] * u[x]);
        }
        Ok(GraphFunction::new(out))
    }

    pub fn restrict(&self, u: &GraphFunction) -> Result<DVector<f64>> {
        self.check_admissible(u)?;
        Ok(DVector::from_iterator(self.free.len(), self.free.iter().map(|&x| u[x])))
    }

    pub fn embed(&self, coords: &DVector<f64>) -> GraphFunction {
        let mut v = vec![0.0; self.graph.len()];
        for (&x, &c) in self.free.iter().zip(coords.iter()) {
            v[x] = c;
        }
        GraphFunction::new(v)
    }

    /// Matrix of the norm form in free coordinates. Assembled edge by edge:
    /// `Q_xx = Σ_{y∼x} ω_xy (+ μ_x h_x)`, `Q_xy = −ω_xy` for free `x, y`.
    pub fn form_matrix(&self) -> DMatrix<f64> {
        let n = self.graph.len();
        let mut pos = vec![usize::MAX; n];
        for (i, &x) in self.free.iter().enumerate() {
            pos[x] = i;
        }
        let d = self.free.len();
        let mut q = DMatrix::zeros(d, d);
        for e in self.graph.edges() {
            let (pa, pb) = (pos[e.a], pos[e.b]);
            if pa != usize::MAX {
                q[(pa, pa)] += e.weight;
            }
            if pb != usize::MAX {
                q[(pb, pb)] += e.weight;
            }
            if pa != usize::MAX && pb != usize::MAX {
                q[(pa, pb)] -= e.weight;
                q[(pb, pa)] -= e.weight;
            }
        }
        if let (ProblemKind::WholeGraph, Some(h)) = (self.kind, self.graph.potential()) {
            let mu = self.graph.measure();
            for (i, &x) in self.free.iter().enumerate() {
                q[(i, i)] += mu[x] * h[x];
            }
        }
        q
    }

    /// Vertex measure on the free vertices.
    pub fn mass(&self) -> DVector<f64> {
        let mu = self.graph.measure();
        DVector::from_iterator(self.free.len(), self.free.iter().map(|&x| mu[x]))
    }

    /// Unit coordinate function at the `i`-th free vertex.
    pub fn spike(&self, i: usize) -> GraphFunction {
        let mut v = vec![0.0; self.graph.len()];
        v[self.free[i]] = 1.0;
        GraphFunction::new(v)
    }
}
