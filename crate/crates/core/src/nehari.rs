//! Nehari manifold `{u ≠ 0 : ⟨I'(u), u⟩ = 0}`, the cone `{I_η < 0}` and the
//! closed-form fiber map.
//!
//! Along a ray `s ↦ I(su) = ½s²I_λ(u) + ¼s⁴I_η(u)`. For `I_λ(u) > 0` and
//! `I_η(u) < 0` this has a single positive critical point
//! `s_u = √(−I_λ/I_η)`, a strict maximum, with value `I_λ²/(−4I_η)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::functional::{EnergyParams, Functional, Splits};
use crate::graph::{GraphFunction, WeightedGraph};
use crate::spectral::SpectralConstants;

pub const DEFAULT_MEMBERSHIP_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct NehariContext<'a> {
    functional: Functional<'a>,
    params: &'a EnergyParams,
    pub membership_tol: f64,
}

impl<'a> NehariContext<'a> {
    /// Context under the existence hypotheses `|λ| < aλ₁`, `η > η₀`.
    pub fn new(graph: &'a WeightedGraph, params: &'a EnergyParams, consts: &SpectralConstants) -> Result<Self> {
        if !consts.lambda_in_range(params) {
            return Err(Error::ParameterRange(format!(
                "|lambda| = {} >= a*lambda1 = {}",
                params.lambda.abs(),
                params.a * consts.lambda1
            )));
        }
        if !consts.eta_above_threshold(params) {
            return Err(Error::ParameterRange(format!(
                "eta = {} <= eta0 = {}",
                params.eta,
                params.b / consts.d4_pow4
            )));
        }
        Self::unchecked(graph, params)
    }

    /// Context without the parameter hypotheses; every operation still
    /// checks its own preconditions.
    pub fn unchecked(graph: &'a WeightedGraph, params: &'a EnergyParams) -> Result<Self> {
        Ok(NehariContext {
            functional: Functional::new(graph, params)?,
            params,
            membership_tol: DEFAULT_MEMBERSHIP_TOL,
        })
    }

    pub fn functional(&self) -> &Functional<'a> {
        &self.functional
    }

    pub fn params(&self) -> &'a EnergyParams {
        self.params
    }

    fn nonzero_splits(&self, u: &GraphFunction) -> Result<Splits> {
        self.functional.space().check_admissible(u)?;
        if u.is_zero() {
            return Err(Error::ZeroFunction);
        }
        self.functional.splits(u)
    }

    /// `⟨I'(u), u⟩ = I_λ(u) + I_η(u)`.
    pub fn nehari_residual(&self, u: &GraphFunction) -> Result<f64> {
        Ok(self.nonzero_splits(u)?.nehari())
    }

    /// `|⟨I'(u), u⟩| ≤ tol·(1 + ‖u‖⁴)`.
    pub fn on_manifold(&self, u: &GraphFunction) -> Result<bool> {
        let s = self.nonzero_splits(u)?;
        Ok(s.nehari().abs() <= self.membership_tol * (1.0 + s.norm_sq * s.norm_sq))
    }

    /// `u ≠ 0` and `I_η(u) < 0`.
    pub fn in_cone(&self, u: &GraphFunction) -> Result<bool> {
        self.functional.space().check_admissible(u)?;
        if u.is_zero() {
            return Ok(false);
        }
        Ok(self.functional.splits(u)?.i_eta < 0.0)
    }

    fn checked_splits(&self, u: &GraphFunction) -> Result<Splits> {
        let s = self.nonzero_splits(u)?;
        if !(s.i_eta < 0.0) {
            return Err(Error::NotInCone { i_eta: s.i_eta });
        }
        if !(s.i_lambda > 0.0) {
            return Err(Error::NonPositiveQuadratic { i_lambda: s.i_lambda });
        }
        Ok(s)
    }

    /// `s_u = √(−I_λ(u)/I_η(u))`.
    pub fn fiber_scale(&self, u: &GraphFunction) -> Result<f64> {
        let s = self.checked_splits(u)?;
        Ok((-s.i_lambda / s.i_eta).sqrt())
    }

    pub fn project(&self, u: &GraphFunction) -> Result<GraphFunction> {
        Ok(u.scaled(self.fiber_scale(u)?))
    }

    /// `max_{s>0} I(su) = I_λ(u)² / (−4 I_η(u))`.
    pub fn ground_map(&self, u: &GraphFunction) -> Result<f64> {
        let s = self.checked_splits(u)?;
        Ok(s.i_lambda * s.i_lambda / (-4.0 * s.i_eta))
    }

    /// `I(su)` from the splits of `u`.
    pub fn fiber_energy(&self, u: &GraphFunction, s: f64) -> Result<f64> {
        let sp = self.functional.splits(u)?;
        let s2 = s * s;
        Ok(0.5 * s2 * sp.i_lambda + 0.25 * s2 * s2 * sp.i_eta)
    }

    /// Second derivative of `s ↦ I(su)` at `s_u`: `I_λ + 3s_u²I_η = 2s_u²I_η`.
    pub fn fiber_curvature(&self, u: &GraphFunction) -> Result<f64> {
        let s = self.checked_splits(u)?;
        let su2 = -s.i_lambda / s.i_eta;
        Ok(2.0 * su2 * s.i_eta)
    }

    /// Probes up to `count` directions for a cone member: coordinate spikes
    /// on the free vertices, then `extra` (typically the principal
    /// eigenvector), then seeded Gaussian directions. Returns the first hit
    /// and its probe index.
    pub fn find_cone_member(
        &self,
        extra: Option<&GraphFunction>,
        count: usize,
        seed: u64,
    ) -> Result<Option<(usize, GraphFunction)>> {
        let space = self.functional.space();
        let d = space.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for k in 0..count {
            let u = if k < d {
                space.spike(k)
            } else if k == d && extra.is_some() {
                extra.unwrap().clone()
            } else {
                let coords = nalgebra::DVector::from_fn(d, |_, _| StandardNormal.sample(&mut rng));
                space.embed(&coords)
            };
            if self.in_cone(&u)? {
                return Ok(Some((k, u)));
            }
        }
        Ok(None)
    }
}
