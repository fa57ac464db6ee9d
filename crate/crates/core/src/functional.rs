//! Kirchhoff energy functionals and their derivatives.
//!
//! With `‖·‖` the norm of the admissible space (see [`crate::space`]):
//!
//! ```text
//! I_λ(u) = a‖u‖² − λ∫u²        I_η(u) = b‖u‖⁴ − η∫u⁴
//! I(u)   = ½ I_λ(u) + ¼ I_η(u)
//! ⟨I'(u), v⟩ = (a + b‖u‖²)·B(u, v) − λ∫uv − η∫u³v
//! ```
//!
//! where `B` is the bilinear form of the norm. The same formulas give the
//! whole-graph functional `J` with the `W_h` norm and integrals over `V`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{GraphFunction, WeightedGraph};
use crate::space::{ProblemKind, Space};

/// The scalars `a, b, λ, η` and the problem kind.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyParams {
    pub a: f64,
    pub b: f64,
    pub lambda: f64,
    pub eta: f64,
    pub kind: ProblemKind,
}

impl EnergyParams {
    pub fn new(a: f64, b: f64, lambda: f64, eta: f64, kind: ProblemKind) -> Result<Self> {
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::InvalidParameter(format!("a must be finite and > 0, got {a}")));
        }
        if !(b >= 0.0) || !b.is_finite() {
            return Err(Error::InvalidParameter(format!("b must be finite and >= 0, got {b}")));
        }
        if !lambda.is_finite() || !eta.is_finite() {
            return Err(Error::InvalidParameter("lambda and eta must be finite".into()));
        }
        Ok(EnergyParams {
            a,
            b,
            lambda,
            eta,
            kind,
        })
    }

    pub fn with_scalars(&self, b: f64, lambda: f64, eta: f64) -> Result<Self> {
        EnergyParams::new(self.a, b, lambda, eta, self.kind.clone())
    }
}

/// The three integrals every energy evaluation is built from, plus the
/// resulting splits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Splits {
    /// `‖u‖²`
    pub norm_sq: f64,
    /// `∫ u² dμ`
    pub l2_sq: f64,
    /// `∫ u⁴ dμ`
    pub l4_pow4: f64,
    pub i_lambda: f64,
    pub i_eta: f64,
}

impl Splits {
    pub fn energy(&self) -> f64 {
        0.5 * self.i_lambda + 0.25 * self.i_eta
    }

    /// `⟨I'(u), u⟩ = I_λ(u) + I_η(u)`.
    pub fn nehari(&self) -> f64 {
        self.i_lambda + self.i_eta
    }
}

#[derive(Debug, Clone)]
pub struct Functional<'a> {
    space: Space<'a>,
    a: f64,
    b: f64,
    lambda: f64,
    eta: f64,
}

impl<'a> Functional<'a> {
    pub fn new(graph: &'a WeightedGraph, params: &'a EnergyParams) -> Result<Self> {
        Ok(Functional {
            space: Space::new(graph, &params.kind)?,
            a: params.a,
            b: params.b,
            lambda: params.lambda,
            eta: params.eta,
        })
    }

    pub fn space(&self) -> &Space<'a> {
        &self.space
    }

    pub fn kind(&self) -> &'a ProblemKind {
        self.space.kind()
    }

    pub fn scalars(&self) -> (f64, f64, f64, f64) {
        (self.a, self.b, self.lambda, self.eta)
    }

    pub fn splits(&self, u: &GraphFunction) -> Result<Splits> {
        let norm_sq = self.space.norm_sq(u)?;
        let l2_sq = self.space.power_integral(u, 2)?;
        let l4_pow4 = self.space.power_integral(u, 4)?;
        Ok(Splits {
            norm_sq,
            l2_sq,
            l4_pow4,
            i_lambda: self.a * norm_sq - self.lambda * l2_sq,
            i_eta: self.b * norm_sq * norm_sq - self.eta * l4_pow4,
        })
    }

    pub fn i_lambda(&self, u: &GraphFunction) -> Result<f64> {
        Ok(self.splits(u)?.i_lambda)
    }

    pub fn i_eta(&self, u: &GraphFunction) -> Result<f64> {
        Ok(self.splits(u)?.i_eta)
    }

    pub fn energy(&self, u: &GraphFunction) -> Result<f64> {
        Ok(self.splits(u)?.energy())
    }

    /// `⟨I'(u), v⟩`.
    pub fn d_energy(&self, u: &GraphFunction, v: &GraphFunction) -> Result<f64> {
        let norm_sq = self.space.norm_sq(u)?;
        let form = self.space.form(u, v)?;
        let uv = self.space.mass_pairing(u, v)?;
        let u3 = u.map(|x| x * x * x);
        let u3v = self.space.mass_pairing(&u3, v)?;
        Ok((self.a + self.b * norm_sq) * form - self.lambda * uv - self.eta * u3v)
    }

    /// Pointwise Euler–Lagrange residual, zero off the free vertices:
    /// `(a + b‖u‖²)·Lu − λu − η|u|²u` with `L = −Δ` (Dirichlet) or
    /// `L = −Δ + h` (whole graph).
    pub fn residual(&self, u: &GraphFunction) -> Result<GraphFunction> {
        let coupling = self.a + self.b * self.space.norm_sq(u)?;
        let lu = self.space.operator(u)?;
        let mut out = vec![0.0; u.len()];
        for &x in self.space.free() {
            let ux = u[x];
            out[x] = coupling * lu[x] - self.lambda * ux - self.eta * ux * ux * ux;
        }
        Ok(GraphFunction::new(out))
    }

    /// Representer `g` of `I'(u)` in the μ-weighted pairing:
    /// `⟨I'(u), v⟩ = Σ_x μ(x) g(x) v(x)` for every admissible `v`. By the
    /// discrete Green identity this is the pointwise residual.
    pub fn grad_vector(&self, u: &GraphFunction) -> Result<GraphFunction> {
        self.residual(u)
    }
}
