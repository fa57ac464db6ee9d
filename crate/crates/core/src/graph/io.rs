//! JSON graph files.
//!
//! ```json
//! { "vertices": [ { "id": "x", "mu": 1.0, "h": 2.0, "boundary": false } ],
//!   "edges":    [ { "a": "x", "b": "y", "w": 1.0 } ] }
//! ```
//!
//! `mu` defaults to 1. `h` must be given on every vertex or on none. An
//! edge listed twice, in either orientation, is rejected.

use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{GraphBuilder, VertexId, WeightedGraph};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VertexRecord {
    pub id: VertexId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary: Option<bool>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub a: VertexId,
    pub b: VertexId,
    pub w: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: Vec<VertexRecord>,
    pub edges: Vec<EdgeRecord>,
}

impl GraphFile {
    pub fn into_builder(self) -> Result<GraphBuilder> {
        let mut b = GraphBuilder::new();
        let with_h = self.vertices.iter().filter(|v| v.h.is_some()).count();
        if with_h != 0 && with_h != self.vertices.len() {
            return Err(Error::PartialPotential);
        }
        for v in &self.vertices {
            let idx = b.add_vertex(v.id.clone(), v.mu.unwrap_or(1.0))?;
            if let Some(h) = v.h {
                b.set_potential(idx, h)?;
            }
            if let Some(flag) = v.boundary {
                b.set_boundary(idx, flag)?;
            }
        }
        let mut seen = HashSet::new();
        for e in &self.edges {
            let a = b.lookup(&e.a)?;
            let c = b.lookup(&e.b)?;
            if a == c {
                return Err(Error::SelfLoop(e.a.to_string()));
            }
            if !seen.insert((a.min(c), a.max(c))) {
                return Err(Error::DuplicateEdge(e.a.to_string(), e.b.to_string()));
            }
            b.add_edge(a, c, e.w)?;
        }
        Ok(b)
    }

    pub fn from_graph(g: &WeightedGraph) -> Self {
        let vertices = (0..g.len())
            .map(|v| VertexRecord {
                id: g.ids()[v].clone(),
                mu: Some(g.measure()[v]),
                h: g.potential().map(|h| h[v]),
                boundary: g.boundary_flags().map(|f| f[v]),
            })
            .collect();
        let edges = g
            .edges()
            .iter()
            .map(|e| EdgeRecord {
                a: g.ids()[e.a].clone(),
                b: g.ids()[e.b].clone(),
                w: e.weight,
            })
            .collect();
        GraphFile { vertices, edges }
    }
}

pub fn parse_graph(text: &str) -> Result<GraphBuilder> {
    let file: GraphFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.into_builder()
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<GraphBuilder> {
    let text = std::fs::read_to_string(path)?;
    parse_graph(&text)
}

pub fn to_json(g: &WeightedGraph) -> String {
    serde_json::to_string_pretty(&GraphFile::from_graph(g)).expect("graph files always serialize")
}
