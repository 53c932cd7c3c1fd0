//! Entanglement generated between field modes by a smooth two-dimensional
//! FRW expansion.
//!
//! The background is the tanh profile `C²(η) = 1 + ε(1 + tanh ρη)`, flat in
//! the far past and far future. A mode of momentum `k` and mass `m` that
//! starts in the vacuum ends up as a two-mode squeezed (bosons) or paired
//! (fermions) state of `k` and `−k`, entangled by an amount fixed entirely by
//! the Bogoliubov mixing ratio `x = |β/α|²`.
//!
//! - [`specfun`]: complex `ln Γ`, `ln sinh`, and `₂F₁` on `[0, 1)`.
//! - [`cosmology`]: scale factor and asymptotic frequencies.
//! - [`bogoliubov`]: closed-form bosonic coefficients.
//! - [`modesolver`]: ODE integration of the mode equations, the independent
//!   oracle and the only source of fermionic coefficients.
//! - [`entanglement`]: Schmidt spectra, entropies, and peak searches.
//! - [`pipeline`]: sweeps, figure grids, CSV output, and the verify suite.

// `!(x > 0.0)` is used on purpose so NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bogoliubov;
pub mod cosmology;
pub mod entanglement;
mod error;
pub mod modesolver;
pub mod pipeline;
pub mod specfun;

pub use bogoliubov::{
    canonical_boson_coefficients, mixing_ratio_x, paper_alpha_beta, BogoliubovCoefficients,
};
pub use cosmology::{ExpansionParams, Frequencies, ModeParams, Spin, Statistics};
pub use entanglement::{entropy_for_mode, EntropyResult, Method, SchmidtSpectrum};
pub use error::{Error, Result};
pub use modesolver::{IntegrationSettings, ModeState};
pub use specfun::ComplexVal;
