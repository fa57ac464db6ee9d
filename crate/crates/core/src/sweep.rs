//! Parameter sweeps over `(λ, η, b)` grids.
//!
//! A grid spec is a comma-separated list of `key=lo:hi:n` with keys
//! `lambda`, `eta` and `b`, e.g. `lambda=0:1:3,eta=2:10:5`. The first key is
//! the outermost loop. `n = 1` means the single value `lo`.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functional::EnergyParams;
use crate::graph::WeightedGraph;
use crate::solver::{solve_with_constants, SolveOptions, SolveStatus};
use crate::spectral::SpectralConstants;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepKey {
    Lambda,
    Eta,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridAxis {
    pub key: SweepKey,
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl GridAxis {
    pub fn values(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.lo];
        }
        let step = (self.hi - self.lo) / (self.n - 1) as f64;
        (0..self.n)
            .map(|i| {
                if i + 1 == self.n {
                    self.hi
                } else {
                    self.lo + step * i as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ParamGrid {
    pub axes: Vec<GridAxis>,
}

impl FromStr for ParamGrid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| Error::Parse(format!("grid spec: {msg}"));
        let mut axes: Vec<GridAxis> = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, range) = part
                .split_once('=')
                .ok_or_else(|| bad(format!("expected key=lo:hi:n, got {part:?}")))?;
            let key = match key.trim() {
                "lambda" => SweepKey::Lambda,
                "eta" => SweepKey::Eta,
                "b" => SweepKey::B,
                other => return Err(bad(format!("unknown key {other:?}"))),
            };
            if axes.iter().any(|a| a.key == key) {
                return Err(bad(format!("key {key:?} given twice")));
            }
            let fields: Vec<&str> = range.split(':').collect();
            let [lo, hi, n] = fields[..] else {
                return Err(bad(format!("expected lo:hi:n, got {range:?}")));
            };
            let num = |t: &str| -> Result<f64> {
                let v: f64 = t.trim().parse().map_err(|_| bad(format!("not a number: {t:?}")))?;
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(bad(format!("not finite: {t:?}")))
                }
            };
            let n: usize = n.trim().parse().map_err(|_| bad(format!("bad point count {n:?}")))?;
            if n == 0 {
                return Err(bad("point count must be >= 1".into()));
            }
            axes.push(GridAxis {
                key,
                lo: num(lo)?,
                hi: num(hi)?,
                n,
            });
        }
        Ok(ParamGrid { axes })
    }
}

impl ParamGrid {
    /// Grid points as `(b, λ, η)`, first axis outermost. A grid without
    /// axes has no points.
    pub fn points(&self, base: &EnergyParams) -> Vec<(f64, f64, f64)> {
        if self.axes.is_empty() {
            return Vec::new();
        }
        let mut out = vec![(base.b, base.lambda, base.eta)];
        for axis in &self.axes {
            let vals = axis.values();
            out = out
                .into_iter()
                .flat_map(|p| {
                    vals.iter().map(move |&v| match axis.key {
                        SweepKey::B => (v, p.1, p.2),
                        SweepKey::Lambda => (p.0, v, p.2),
                        SweepKey::Eta => (p.0, p.1, v),
                    })
                })
                .collect();
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub lambda: f64,
    pub eta: f64,
    pub b: f64,
    /// Solve status, or `"Error"`.
    pub status: String,
    pub energy: Option<f64>,
    pub norm: Option<f64>,
    pub nehari_residual: Option<f64>,
    pub max_residual: Option<f64>,
    pub kappa: Option<f64>,
    pub bounds_ok: Option<bool>,
    pub error: Option<String>,
}

/// Solves at every grid point. The spectral constants are computed once;
/// `λ₁` and the embedding constant do not depend on `(b, λ, η)`.
pub fn sweep(
    graph: &WeightedGraph,
    base: &EnergyParams,
    grid: &ParamGrid,
    opts: &SolveOptions,
) -> Result<Vec<SweepRow>> {
    let points = grid.points(base);
    if points.is_empty() {
        return Ok(Vec::new());
    }
    let consts = SpectralConstants::compute(graph, &base.kind, 1.0)?;
    Ok(points
        .into_iter()
        .map(|(b, lambda, eta)| {
            let row = |status: String| SweepRow {
                lambda,
                eta,
                b,
                status,
                energy: None,
                norm: None,
                nehari_residual: None,
                max_residual: None,
                kappa: None,
                bounds_ok: None,
                error: None,
            };
            let outcome = base
                .with_scalars(b, lambda, eta)
                .and_then(|p| solve_with_constants(graph, &p, &consts, opts));
            match outcome {
                Ok(r) => {
                    let found = matches!(r.status, SolveStatus::Solved | SolveStatus::NotConverged);
                    SweepRow {
                        energy: Some(r.energy),
                        norm: Some(r.norm),
                        nehari_residual: Some(r.nehari_residual),
                        max_residual: Some(r.max_pointwise_residual),
                        kappa: r.bounds.kappa,
                        bounds_ok: found.then(|| r.bounds.all_ok()),
                        ..row(r.status.as_str().to_owned())
                    }
                }
                Err(e) => SweepRow {
                    error: Some(e.to_string()),
                    ..row("Error".into())
                },
            }
        })
        .collect())
}
