//! Finite weighted graphs and the discrete calculus on them.
//!
//! A graph carries symmetric positive edge weights `ω`, a vertex measure
//! `μ`, and optionally a potential `h` (whole-graph problems) or a boundary
//! marking (Dirichlet problems). Vertex identifiers are mapped to dense
//! indices `0..n` at construction; every numeric quantity lives in a dense
//! vector indexed by those.

mod calculus;
pub mod families;
pub mod io;
mod validate;

use std::collections::HashMap;
use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use calculus::{boundary_of, gamma, grad_len, integrate, laplacian, norm_inf, norm_lgamma, norm_w012, norm_wh};
pub use validate::{validate, ValidationReport, Violation, ViolationKind};

/// External vertex identifier, as it appears in graph files.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexId {
    Int(i64),
    Str(String),
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexId::Int(i) => write!(f, "{i}"),
            VertexId::Str(s) => write!(f, "{s}"),
        }
    }
}

impl From<usize> for VertexId {
    fn from(i: usize) -> Self {
        VertexId::Int(i as i64)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId::Str(s.to_owned())
    }
}

/// An undirected edge, stored once with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub weight: f64,
}

/// Raw, possibly invalid graph description.
///
/// Entries are directed arcs so that asymmetric weight data can be
/// represented and reported by [`validate`]. [`GraphBuilder::build`] turns a
/// structurally sound description into a [`WeightedGraph`].
#[derive(Debug, Clone, Default)]
pub struct GraphBuilder {
    pub(crate) ids: Vec<VertexId>,
    pub(crate) index: HashMap<VertexId, usize>,
    pub(crate) measure: Vec<f64>,
    pub(crate) potential: Vec<Option<f64>>,
    pub(crate) boundary: Vec<Option<bool>>,
    pub(crate) arcs: Vec<(usize, usize, f64)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// `n` vertices with integer ids `0..n` and unit measure.
    pub fn with_vertices(n: usize) -> Self {
        let mut b = Self::new();
        for i in 0..n {
            b.add_vertex(i, 1.0).expect("fresh ids are unique");
        }
        b
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn add_vertex(&mut self, id: impl Into<VertexId>, mu: f64) -> Result<usize> {
        let id = id.into();
        if self.index.contains_key(&id) {
            return Err(Error::DuplicateVertex(id.to_string()));
        }
        let idx = self.ids.len();
        self.index.insert(id.clone(), idx);
        self.ids.push(id);
        self.measure.push(mu);
        self.potential.push(None);
        self.boundary.push(None);
        Ok(idx)
    }

    pub fn lookup(&self, id: &VertexId) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    fn check_index(&self, v: usize) -> Result<()> {
        if v < self.ids.len() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange(v))
        }
    }

    pub fn set_measure(&mut self, v: usize, mu: f64) -> Result<&mut Self> {
        self.check_index(v)?;
        self.measure[v] = mu;
        Ok(self)
    }

    pub fn set_potential(&mut self, v: usize, h: f64) -> Result<&mut Self> {
        self.check_index(v)?;
        self.potential[v] = Some(h);
        Ok(self)
    }

    pub fn set_boundary(&mut self, v: usize, flag: bool) -> Result<&mut Self> {
        self.check_index(v)?;
        self.boundary[v] = Some(flag);
        Ok(self)
    }

    /// Undirected edge: records both arcs with the same weight.
    pub fn add_edge(&mut self, a: usize, b: usize, w: f64) -> Result<&mut Self> {
        self.check_index(a)?;
        self.check_index(b)?;
        self.arcs.push((a, b, w));
        self.arcs.push((b, a, w));
        Ok(self)
    }

    /// Single directed weight entry `ω_ab`. Only useful for describing
    /// adjacency data that may turn out to be asymmetric.
    pub fn add_arc(&mut self, a: usize, b: usize, w: f64) -> Result<&mut Self> {
        self.check_index(a)?;
        self.check_index(b)?;
        self.arcs.push((a, b, w));
        Ok(self)
    }

    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }

    /// Builds the graph. Fails on violations of the weight, measure and
    /// potential-coverage invariants; connectivity, potential sign and
    /// boundary consistency are checked by the solvers that need them.
    pub fn build(&self) -> Result<WeightedGraph> {
        let report = self.validate();
        if report.has_structural_violation() {
            return Err(Error::InvalidGraph(report));
        }
        let n = self.ids.len();
        let mut seen: HashMap<(usize, usize), f64> = HashMap::new();
        for &(a, b, w) in &self.arcs {
            let key = (a.min(b), a.max(b));
            seen.entry(key).or_insert(w);
        }
        let mut edges: Vec<Edge> = seen.into_iter().map(|((a, b), weight)| Edge { a, b, weight }).collect();
        edges.sort_by_key(|e| (e.a, e.b));

        let potential = if self.potential.iter().all(Option::is_some) && n > 0 {
            Some(self.potential.iter().map(|h| h.unwrap()).collect())
        } else {
            None
        };
        let boundary_flags = if self.boundary.iter().any(Option::is_some) {
            Some(self.boundary.iter().map(|f| f.unwrap_or(false)).collect())
        } else {
            None
        };
        Ok(WeightedGraph::assemble(
            self.ids.clone(),
            self.index.clone(),
            self.measure.clone(),
            potential,
            boundary_flags,
            edges,
            report.connected,
        ))
    }
}

/// Immutable finite weighted graph.
#[derive(Debug, Clone)]
pub struct WeightedGraph {
    ids: Vec<VertexId>,
    index: HashMap<VertexId, usize>,
    measure: Vec<f64>,
    potential: Option<Vec<f64>>,
    boundary_flags: Option<Vec<bool>>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(usize, f64)>>,
    connected: bool,
}

impl WeightedGraph {
    fn assemble(
        ids: Vec<VertexId>,
        index: HashMap<VertexId, usize>,
        measure: Vec<f64>,
        potential: Option<Vec<f64>>,
        boundary_flags: Option<Vec<bool>>,
        edges: Vec<Edge>,
        connected: bool,
    ) -> Self {
        let mut adjacency = vec![Vec::new(); ids.len()];
        for e in &edges {
            adjacency[e.a].push((e.b, e.weight));
            adjacency[e.b].push((e.a, e.weight));
        }
        WeightedGraph {
            ids,
            index,
            measure,
            potential,
            boundary_flags,
            edges,
            adjacency,
            connected,
        }
    }

    /// Graph on vertices `0..n` from an undirected edge list.
    pub fn from_edges(n: usize, edges: &[(usize, usize, f64)], measure: Option<&[f64]>) -> Result<Self> {
        let mut b = GraphBuilder::with_vertices(n);
        if let Some(mu) = measure {
            if mu.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    got: mu.len(),
                });
            }
            for (i, &m) in mu.iter().enumerate() {
                b.set_measure(i, m)?;
            }
        }
        for &(x, y, w) in edges {
            b.add_edge(x, y, w)?;
        }
        b.build()
    }

    /// Same graph with a potential attached.
    pub fn with_potential(mut self, h: Vec<f64>) -> Result<Self> {
        if h.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: h.len(),
            });
        }
        self.potential = Some(h);
        Ok(self)
    }

    /// Same graph with a boundary marking attached.
    pub fn with_boundary_flags(mut self, flags: Vec<bool>) -> Result<Self> {
        if flags.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: flags.len(),
            });
        }
        self.boundary_flags = Some(flags);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn vertex_index(&self, id: &VertexId) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn measure(&self) -> &[f64] {
        &self.measure
    }

    pub fn potential(&self) -> Option<&[f64]> {
        self.potential.as_deref()
    }

    pub fn boundary_flags(&self) -> Option<&[bool]> {
        self.boundary_flags.as_deref()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Neighbors of `x` with the weight of the connecting edge.
    pub fn neighbors(&self, x: usize) -> &[(usize, f64)] {
        &self.adjacency[x]
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    /// `μ₀ = min μ`.
    pub fn mu0(&self) -> f64 {
        self.measure.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// `h₀ = min h`, if a potential is present.
    pub fn h0(&self) -> Option<f64> {
        self.potential
            .as_ref()
            .map(|h| h.iter().copied().fold(f64::INFINITY, f64::min))
    }

    /// Full validation report for this graph.
    pub fn validate(&self) -> ValidationReport {
        let mut b = GraphBuilder::new();
        for (i, id) in self.ids.iter().enumerate() {
            b.add_vertex(id.clone(), self.measure[i]).expect("ids are unique");
            if let Some(h) = &self.potential {
                b.potential[i] = Some(h[i]);
            }
            if let Some(f) = &self.boundary_flags {
                b.boundary[i] = Some(f[i]);
            }
        }
        for e in &self.edges {
            b.arcs.push((e.a, e.b, e.weight));
            b.arcs.push((e.b, e.a, e.weight));
        }
        validate(&b)
    }

    /// Dirichlet domain from the boundary marking: unflagged vertices form
    /// the interior and the boundary is recomputed from adjacency.
    pub fn marked_domain(&self) -> Result<Domain> {
        let flags = self.boundary_flags.as_ref().ok_or(Error::MissingBoundary)?;
        let interior: Vec<usize> = (0..self.len()).filter(|&x| !flags[x]).collect();
        boundary_of(self, &interior)
    }

    pub fn zeros(&self) -> GraphFunction {
        GraphFunction::zeros(self.len())
    }

    pub fn constant(&self, c: f64) -> GraphFunction {
        GraphFunction::new(vec![c; self.len()])
    }

    /// Wraps raw values after checking the length.
    pub fn function(&self, values: Vec<f64>) -> Result<GraphFunction> {
        let f = GraphFunction::new(values);
        f.check_len(self.len())?;
        Ok(f)
    }
}

/// `Ω` (interior), `∂Ω` and the closure `Ω ∪ ∂Ω` as sorted index lists.
#[derive(Debug, Clone, PartialEq)]
pub struct Domain {
    interior: Vec<usize>,
    boundary: Vec<usize>,
    closure: Vec<usize>,
    in_interior: Vec<bool>,
}

impl Domain {
    pub(crate) fn from_parts(n: usize, interior: Vec<usize>, boundary: Vec<usize>) -> Self {
        let mut in_interior = vec![false; n];
        for &x in &interior {
            in_interior[x] = true;
        }
        let mut closure: Vec<usize> = interior.iter().chain(boundary.iter()).copied().collect();
        closure.sort_unstable();
        Domain {
            interior,
            boundary,
            closure,
            in_interior,
        }
    }

    pub fn interior(&self) -> &[usize] {
        &self.interior
    }

    pub fn boundary(&self) -> &[usize] {
        &self.boundary
    }

    pub fn closure(&self) -> &[usize] {
        &self.closure
    }

    pub fn is_interior(&self, x: usize) -> bool {
        self.in_interior.get(x).copied().unwrap_or(false)
    }

    /// Number of vertices of the graph this domain was computed on.
    pub fn graph_len(&self) -> usize {
        self.in_interior.len()
    }

    /// Checks that `u` vanishes off the interior.
    pub fn check_admissible(&self, u: &GraphFunction) -> Result<()> {
        u.check_len(self.graph_len())?;
        for (x, &v) in u.values().iter().enumerate() {
            if !self.in_interior[x] && v != 0.0 {
                return Err(Error::NotAdmissible { vertex: x, value: v });
            }
        }
        Ok(())
    }

    /// Extends interior values by zero.
    pub fn extend(&self, interior_values: &[f64]) -> Result<GraphFunction> {
        if interior_values.len() != self.interior.len() {
            return Err(Error::LengthMismatch {
                expected: self.interior.len(),
                got: interior_values.len(),
            });
        }
        let mut v = vec![0.0; self.graph_len()];
        for (&x, &val) in self.interior.iter().zip(interior_values) {
            v[x] = val;
        }
        Ok(GraphFunction::new(v))
    }
}

/// A real value per vertex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GraphFunction(Vec<f64>);

impl GraphFunction {
    pub fn new(values: Vec<f64>) -> Self {
        GraphFunction(values)
    }

    pub fn zeros(n: usize) -> Self {
        GraphFunction(vec![0.0; n])
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }

    pub fn into_values(self) -> Vec<f64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0.0)
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if self.0.len() == n {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                expected: n,
                got: self.0.len(),
            })
        }
    }

    pub fn scaled(&self, t: f64) -> GraphFunction {
        GraphFunction(self.0.iter().map(|v| t * v).collect())
    }

    /// `self + t·other`.
    pub fn add_scaled(&self, t: f64, other: &GraphFunction) -> GraphFunction {
        GraphFunction(self.0.iter().zip(&other.0).map(|(x, y)| x + t * y).collect())
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> GraphFunction {
        GraphFunction(self.0.iter().map(|&v| f(v)).collect())
    }
}

impl Index<usize> for GraphFunction {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl From<Vec<f64>> for GraphFunction {
    fn from(v: Vec<f64>) -> Self {
        GraphFunction(v)
    }
}
