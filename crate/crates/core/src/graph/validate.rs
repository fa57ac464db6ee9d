use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::GraphBuilder;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ViolationKind {
    #[serde(rename = "weight symmetry")]
    WeightSymmetry,
    #[serde(rename = "weight positivity")]
    WeightPositivity,
    #[serde(rename = "measure positivity")]
    MeasurePositivity,
    #[serde(rename = "potential positivity")]
    PotentialPositivity,
    #[serde(rename = "potential coverage")]
    PotentialCoverage,
    #[serde(rename = "non-finite value")]
    NonFinite,
    #[serde(rename = "duplicate entry")]
    DuplicateEntry,
    #[serde(rename = "self loop")]
    SelfLoop,
    #[serde(rename = "connectivity")]
    Disconnected,
    #[serde(rename = "empty interior")]
    EmptyInterior,
    #[serde(rename = "boundary consistency")]
    BoundaryConsistency,
}

impl ViolationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationKind::WeightSymmetry => "weight symmetry",
            ViolationKind::WeightPositivity => "weight positivity",
            ViolationKind::MeasurePositivity => "measure positivity",
            ViolationKind::PotentialPositivity => "potential positivity",
            ViolationKind::PotentialCoverage => "potential coverage",
            ViolationKind::NonFinite => "non-finite value",
            ViolationKind::DuplicateEntry => "duplicate entry",
            ViolationKind::SelfLoop => "self loop",
            ViolationKind::Disconnected => "connectivity",
            ViolationKind::EmptyInterior => "empty interior",
            ViolationKind::BoundaryConsistency => "boundary consistency",
        }
    }

    /// Violations that make the data unusable even for the calculus
    /// operations.
    pub fn is_structural(self) -> bool {
        !matches!(
            self,
            ViolationKind::PotentialPositivity
                | ViolationKind::Disconnected
                | ViolationKind::EmptyInterior
                | ViolationKind::BoundaryConsistency
        )
    }
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub mu0: Option<f64>,
    pub h0: Option<f64>,
    pub connected: bool,
    pub components: usize,
    pub has_boundary_marking: bool,
    pub interior_count: usize,
    pub boundary_count: usize,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    pub fn has_structural_violation(&self) -> bool {
        self.violations.iter().any(|v| v.kind.is_structural())
    }

    pub fn summary(&self) -> String {
        if self.violations.is_empty() {
            return "no violations".into();
        }
        self.violations
            .iter()
            .map(|v| format!("{}: {}", v.kind, v.detail))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// Checks every graph invariant and collects the violations. Never fails.
pub fn validate(b: &GraphBuilder) -> ValidationReport {
    let n = b.ids.len();
    let name = |v: usize| b.ids[v].to_string();
    let mut violations = Vec::new();
    let mut push = |kind, detail: String| violations.push(Violation { kind, detail });

    for (v, &mu) in b.measure.iter().enumerate() {
        if !mu.is_finite() {
            push(ViolationKind::NonFinite, format!("mu({}) = {mu}", name(v)));
        } else if mu <= 0.0 {
            push(ViolationKind::MeasurePositivity, format!("mu({}) = {mu}", name(v)));
        }
    }

    let with_h = b.potential.iter().filter(|h| h.is_some()).count();
    let mut h0 = None;
    if with_h > 0 && with_h < n {
        push(
            ViolationKind::PotentialCoverage,
            format!("h given on {with_h} of {n} vertices"),
        );
    } else if with_h == n && n > 0 {
        let mut min_h = f64::INFINITY;
        for (v, h) in b.potential.iter().enumerate() {
            let h = h.unwrap();
            if !h.is_finite() {
                push(ViolationKind::NonFinite, format!("h({}) = {h}", name(v)));
            } else if h <= 0.0 {
                push(ViolationKind::PotentialPositivity, format!("h({}) = {h}", name(v)));
            }
            min_h = min_h.min(h);
        }
        h0 = Some(min_h);
    }

    // directed entries
    let mut arcs: HashMap<(usize, usize), f64> = HashMap::new();
    for &(a, c, w) in &b.arcs {
        if a == c {
            push(ViolationKind::SelfLoop, format!("at {}", name(a)));
            continue;
        }
        if !w.is_finite() {
            push(ViolationKind::NonFinite, format!("w({}, {}) = {w}", name(a), name(c)));
        } else if w <= 0.0 {
            // each undirected edge contributes two arcs; report once
            if a < c || !b.arcs.iter().any(|&(x, y, _)| x == c && y == a) {
                push(
                    ViolationKind::WeightPositivity,
                    format!("w({}, {}) = {w}", name(a), name(c)),
                );
            }
        }
        if let Some(prev) = arcs.insert((a, c), w) {
            push(
                ViolationKind::DuplicateEntry,
                format!("w({}, {}) given twice ({prev}, {w})", name(a), name(c)),
            );
        }
    }
    let mut pairs: Vec<(&(usize, usize), &f64)> = arcs.iter().collect();
    pairs.sort_by_key(|(k, _)| **k);
    let mut edge_count = 0;
    for (&(a, c), &w) in pairs {
        match arcs.get(&(c, a)) {
            Some(&back) => {
                if a < c {
                    edge_count += 1;
                    if back != w && !(back.is_nan() && w.is_nan()) {
                        push(
                            ViolationKind::WeightSymmetry,
                            format!("w({0}, {1}) = {w} but w({1}, {0}) = {back}", name(a), name(c)),
                        );
                    }
                }
            }
            None => {
                edge_count += 1;
                push(
                    ViolationKind::WeightSymmetry,
                    format!("w({}, {}) = {w} has no reverse entry", name(a), name(c)),
                );
            }
        }
    }

    // connectivity over the undirected support
    let mut adj = vec![Vec::new(); n];
    for &(a, c) in arcs.keys() {
        if a != c {
            adj[a].push(c);
            adj[c].push(a);
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut components = 0;
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = components;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if comp[y] == usize::MAX {
                    comp[y] = components;
                    queue.push_back(y);
                }
            }
        }
        components += 1;
    }
    let connected = components == 1;
    if !connected {
        push(
            ViolationKind::Disconnected,
            if n == 0 {
                "graph has no vertices".into()
            } else {
                format!("{components} connected components")
            },
        );
    }

    let has_boundary_marking = b.boundary.iter().any(Option::is_some);
    let flagged: Vec<bool> = b.boundary.iter().map(|f| f.unwrap_or(false)).collect();
    let boundary_count = flagged.iter().filter(|&&f| f).count();
    let interior_count = if has_boundary_marking { n - boundary_count } else { 0 };
    if has_boundary_marking {
        if interior_count == 0 {
            push(
                ViolationKind::EmptyInterior,
                "every vertex is flagged as boundary".into(),
            );
        }
        for v in (0..n).filter(|&v| flagged[v]) {
            if !adj[v].iter().any(|&y| !flagged[y]) {
                push(
                    ViolationKind::BoundaryConsistency,
                    format!("boundary vertex {} has no interior neighbor", name(v)),
                );
            }
        }
    }

    let mu0 = if n > 0 {
        Some(b.measure.iter().copied().fold(f64::INFINITY, f64::min))
    } else {
        None
    };

    ValidationReport {
        vertex_count: n,
        edge_count,
        mu0,
        h0,
        connected,
        components,
        has_boundary_marking,
        interior_count,
        boundary_count,
        violations,
    }
}
