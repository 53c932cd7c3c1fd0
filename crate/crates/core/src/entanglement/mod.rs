//! Schmidt spectra and von Neumann entropies of the out-region state.
//!
//! The in-vacuum of the pair `(k, −k)` is a pure two-mode state whose Schmidt
//! weights depend only on `x = |β/α|²`: `(1 − x)xⁿ` for bosons and
//! `{1/(1+x), x/(1+x)}` for fermions. Entropies are in bits.

mod peak;

pub use peak::{find_k_opt_fermion, find_m_max, golden_section_max, Peak, M_SEARCH_FLOOR, SEARCH_TOL};

use serde::{Deserialize, Serialize};
use std::f64::consts::LN_2;

use crate::bogoliubov::mixing_ratio_x;
use crate::cosmology::{ExpansionParams, ModeParams, Statistics};
use crate::error::{Error, Result};
use crate::modesolver::{boson_coefficients_ode, fermion_coefficients_ode, IntegrationSettings};

/// Tail bound used to pick `n_max` for bosonic direct sums.
pub const DIRECT_SUM_TAIL: f64 = 1e-14;
pub const MAX_SCHMIDT_TERMS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtSpectrum {
    pub x: f64,
    pub statistics: Statistics,
    /// `|A_n|²`, leading weight first.
    pub probabilities: Vec<f64>,
    /// Weight not listed, `xⁿᵐᵃˣ` for bosons.
    pub truncation_tail: f64,
}

impl SchmidtSpectrum {
    /// Fermionic spectrum with more weight in the excited pair than in the
    /// vacuum (`x > 1`). Valid, but never expected from an expansion.
    pub fn is_inverted(&self) -> bool {
        self.statistics == Statistics::Fermion && self.x > 1.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntropyMethod {
    ClosedForm,
    DirectSum,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyResult {
    pub entropy_bits: f64,
    pub x: f64,
    pub method: EntropyMethod,
    pub statistics: Statistics,
}

/// How the mixing ratio of a mode is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Closed-form sinh ratio. Bosons only.
    Analytic,
    /// Mode integration and projection.
    Ode,
}

/// Smallest `n` with `xⁿ < DIRECT_SUM_TAIL`, capped at [`MAX_SCHMIDT_TERMS`].
pub fn default_n_max(x: f64) -> usize {
    if x <= 0.0 {
        return 1;
    }
    let n = (DIRECT_SUM_TAIL.ln() / x.ln()).floor() as usize + 1;
    n.clamp(1, MAX_SCHMIDT_TERMS)
}

pub fn schmidt_spectrum(x: f64, statistics: Statistics, n_max: usize) -> Result<SchmidtSpectrum> {
    if n_max == 0 {
        return Err(Error::Domain("n_max must be at least 1".into()));
    }
    match statistics {
        Statistics::Boson => {
            if !(0.0..1.0).contains(&x) {
                return Err(Error::Domain(format!("bosonic spectrum needs 0 <= x < 1, got {x}")));
            }
            if x == 0.0 {
                return Ok(SchmidtSpectrum {
                    x,
                    statistics,
                    probabilities: vec![1.0],
                    truncation_tail: 0.0,
                });
            }
            let mut probabilities = Vec::with_capacity(n_max);
            let mut power = 1.0;
            for _ in 0..n_max {
                probabilities.push((1.0 - x) * power);
                power *= x;
            }
            Ok(SchmidtSpectrum { x, statistics, probabilities, truncation_tail: power })
        }
        Statistics::Fermion => {
            if !(x.is_finite() && x >= 0.0) {
                return Err(Error::Domain(format!("fermionic spectrum needs x >= 0, got {x}")));
            }
            Ok(SchmidtSpectrum {
                x,
                statistics,
                probabilities: vec![1.0 / (1.0 + x), x / (1.0 + x)],
                truncation_tail: 0.0,
            })
        }
    }
}

/// Bosonic entropy `log₂(x^{x/(x−1)}/(1−x))`, evaluated as
/// `−log₂(1−x) − x/(1−x)·log₂x`.
pub fn entropy_boson_closed(x: f64) -> Result<EntropyResult> {
    if !(0.0..1.0).contains(&x) {
        return Err(Error::Domain(format!("bosonic entropy needs 0 <= x < 1, got {x}")));
    }
    let entropy_bits = if x == 0.0 {
        0.0
    } else {
        (-(-x).ln_1p() - x / (1.0 - x) * x.ln()) / LN_2
    };
    Ok(EntropyResult {
        entropy_bits,
        x,
        method: EntropyMethod::ClosedForm,
        statistics: Statistics::Boson,
    })
}

/// Fermionic entropy `log₂((1+x)/x^{x/(1+x)})`, which is the binary entropy
/// of `x/(1+x)`.
pub fn entropy_fermion_closed(x: f64) -> Result<EntropyResult> {
    if !(x.is_finite() && x >= 0.0) {
        return Err(Error::Domain(format!("fermionic entropy needs finite x >= 0, got {x}")));
    }
    let entropy_bits = if x == 0.0 {
        0.0
    } else {
        (x.ln_1p() - x / (1.0 + x) * x.ln()) / LN_2
    };
    Ok(EntropyResult {
        entropy_bits,
        x,
        method: EntropyMethod::ClosedForm,
        statistics: Statistics::Fermion,
    })
}

pub fn entropy_closed(x: f64, statistics: Statistics) -> Result<EntropyResult> {
    match statistics {
        Statistics::Boson => entropy_boson_closed(x),
        Statistics::Fermion => entropy_fermion_closed(x),
    }
}

/// `−Σ pₙ log₂ pₙ` over the listed weights. The tail is not corrected for.
pub fn entropy_direct(spectrum: &SchmidtSpectrum) -> EntropyResult {
    let entropy_bits = -spectrum
        .probabilities
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| p * p.log2())
        .sum::<f64>();
    EntropyResult {
        entropy_bits: entropy_bits.max(0.0),
        x: spectrum.x,
        method: EntropyMethod::DirectSum,
        statistics: spectrum.statistics,
    }
}

/// Mixing ratio of a mode by the requested route.
///
/// Flat expansions (`ρ = 0`) and the zero mode `m = k = 0` have no mixing and
/// are answered without integrating. Fermions have no closed form.
pub fn mixing_ratio(
    p: &ExpansionParams,
    mode: &ModeParams,
    method: Method,
    settings: Option<&IntegrationSettings>,
) -> Result<f64> {
    let statistics = mode.statistics();
    if statistics == Statistics::Fermion && method == Method::Analytic {
        return Err(Error::Precondition(
            "no closed-form fermionic coefficients; use the ODE method".into(),
        ));
    }
    if method == Method::Analytic {
        return Ok(mixing_ratio_x(p, mode));
    }
    if p.rho() == 0.0 || (mode.m() == 0.0 && mode.k() == 0.0) {
        return Ok(0.0);
    }
    let owned;
    let s = match settings {
        Some(s) => s,
        None => {
            owned = IntegrationSettings::for_expansion(p)?;
            &owned
        }
    };
    let coeffs = match statistics {
        Statistics::Boson => boson_coefficients_ode(p, mode, s)?,
        Statistics::Fermion => fermion_coefficients_ode(p, mode, s)?,
    };
    Ok(coeffs.mixing_ratio())
}

/// The route [`entropy_for_mode`] uses: closed form for bosons, integration
/// for fermions.
pub fn natural_method(statistics: Statistics) -> Method {
    match statistics {
        Statistics::Boson => Method::Analytic,
        Statistics::Fermion => Method::Ode,
    }
}

/// Entanglement entropy of the `(k, −k)` pair. Only the statistics of the
/// spin selects the code path, so spins 0 and 1 (and 1/2 and 3/2) give
/// identical results.
pub fn entropy_for_mode(
    p: &ExpansionParams,
    mode: &ModeParams,
    settings: Option<&IntegrationSettings>,
) -> Result<EntropyResult> {
    entropy_for_mode_with(p, mode, natural_method(mode.statistics()), settings)
}

pub fn entropy_for_mode_with(
    p: &ExpansionParams,
    mode: &ModeParams,
    method: Method,
    settings: Option<&IntegrationSettings>,
) -> Result<EntropyResult> {
    let x = mixing_ratio(p, mode, method, settings)?;
    entropy_closed(x, mode.statistics())
}
