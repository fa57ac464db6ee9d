//! Least-energy solutions of asymptotically cubic Kirchhoff equations on
//! finite weighted graphs.
//!
//! Two problems are supported:
//!
//! * Dirichlet: `−(a + b‖u‖²) Δu = λu + η|u|²u` on an interior set `Ω`,
//!   `u = 0` on its vertex boundary `∂Ω`;
//! * whole graph: `(a + b‖u‖²_{W_h}) (−Δu + h u) = λu + η|u|²u` on all of
//!   `V`, with a positive potential `h`.
//!
//! Ground states are computed by minimizing the reduced energy
//! `u ↦ max_{s>0} I(su)` over directions in the cone `{I_η < 0}`; the inner
//! maximum has a closed form because the energy is a quadratic plus a
//! quartic in the scale `s`.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` also rejects NaN

pub mod cli;
pub mod error;
pub mod functional;
pub mod graph;
pub mod nehari;
pub mod numeric;
pub mod solver;
pub mod space;
pub mod spectral;
pub mod sweep;

pub use error::{Error, Result};
