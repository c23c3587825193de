//! Shock polar computation and geometry analysis for steady compressible flow.
//!
//! Two flow models are supported:
//!
//! * **Full Euler** with a polytropic eos (closed-form polar) or a piecewise
//!   ideal-gas eos `e = e(T)` (temperature-parametrized chain), see
//!   [`polar_euler`] and [`eos_ideal`].
//! * **Full potential flow** with a piecewise gamma-law barotropic eos
//!   `h = h(V)` (volume-parametrized chain), see [`polar_potential`] and
//!   [`eos_barotropic`].
//!
//! On top of the polar chains, [`analysis`] locates critical and sonic
//! points, verifies the jump conditions pointwise, and decides whether a
//! sampled polar is strictly convex. [`scenarios`] packages reproducible
//! configurations, including piecewise equations of state whose polars are
//! *not* convex. The `shockpolar` binary exposes all of it on the command
//! line (CSV, SVG, and plain-text report output).

pub mod analysis;
pub mod cli;
pub mod curve;
pub mod eos_barotropic;
pub mod eos_ideal;
pub mod error;
pub mod numerics;
pub mod polar_euler;
pub mod polar_potential;
pub mod scenarios;

pub use curve::{ModelKind, PolarCurve, PolarPoint};
pub use error::{EosError, PolarError};
