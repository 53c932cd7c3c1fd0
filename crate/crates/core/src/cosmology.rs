//! The tanh-profile FRW background in conformal time.
//!
//! The conformal scale factor is `C(η) = (1 + ε(1 + tanh ρη))^{1/2}`, flat at
//! both ends: `C → 1` as `η → −∞` and `C → (1 + 2ε)^{1/2}` as `η → +∞`.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Total-volume parameter `ε` and rapidity `ρ` of the expansion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpansionParams {
    epsilon: f64,
    rho: f64,
}

impl ExpansionParams {
    pub fn new(epsilon: f64, rho: f64) -> Result<Self> {
        if !(epsilon.is_finite() && epsilon >= 0.0) {
            return Err(Error::Domain(format!("epsilon must be finite and >= 0, got {epsilon}")));
        }
        if !(rho.is_finite() && rho >= 0.0) {
            return Err(Error::Domain(format!("rho must be finite and >= 0, got {rho}")));
        }
        Ok(Self { epsilon, rho })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// No particle creation happens: `ε = 0` or `ρ = 0`.
    pub fn is_flat(&self) -> bool {
        self.epsilon == 0.0 || self.rho == 0.0
    }
}

/// Field statistics. Only this, not the spin magnitude, enters the entropy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistics {
    Boson,
    Fermion,
}

impl fmt::Display for Statistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Statistics::Boson => "boson",
            Statistics::Fermion => "fermion",
        })
    }
}

impl FromStr for Statistics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "boson" => Ok(Statistics::Boson),
            "fermion" => Ok(Statistics::Fermion),
            other => Err(Error::Config(format!("unknown statistics '{other}'"))),
        }
    }
}

/// Spin of the field. Labels are the ones used on the command line and in CSV.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Spin {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "half")]
    Half,
    #[serde(rename = "1")]
    One,
    #[serde(rename = "threehalf")]
    ThreeHalves,
}

impl Spin {
    pub const ALL: [Spin; 4] = [Spin::Zero, Spin::Half, Spin::One, Spin::ThreeHalves];

    pub fn statistics(self) -> Statistics {
        match self {
            Spin::Zero | Spin::One => Statistics::Boson,
            Spin::Half | Spin::ThreeHalves => Statistics::Fermion,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Spin::Zero => "0",
            Spin::Half => "half",
            Spin::One => "1",
            Spin::ThreeHalves => "threehalf",
        }
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Spin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "0" => Ok(Spin::Zero),
            "half" | "1/2" => Ok(Spin::Half),
            "1" => Ok(Spin::One),
            "threehalf" | "3/2" => Ok(Spin::ThreeHalves),
            other => Err(Error::Config(format!("unknown spin '{other}'"))),
        }
    }
}

/// One field mode: mass, momentum and spin. Only `k²` enters the dynamics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeParams {
    m: f64,
    k: f64,
    spin: Spin,
}

impl ModeParams {
    pub fn new(m: f64, k: f64, spin: Spin) -> Result<Self> {
        if !(m.is_finite() && m >= 0.0) {
            return Err(Error::Domain(format!("mass must be finite and >= 0, got {m}")));
        }
        if !k.is_finite() {
            return Err(Error::Domain(format!("momentum must be finite, got {k}")));
        }
        Ok(Self { m, k, spin })
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn spin(&self) -> Spin {
        self.spin
    }

    pub fn statistics(&self) -> Statistics {
        self.spin.statistics()
    }

    pub fn with_spin(self, spin: Spin) -> Self {
        Self { spin, ..self }
    }
}

/// Asymptotic mode frequencies, labelled by region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frequencies {
    /// `η → −∞`, where `C = 1`.
    pub omega_past: f64,
    /// `η → +∞`, where `C² = 1 + 2ε`.
    pub omega_future: f64,
}

impl Frequencies {
    /// `ω_future − ω_past`, without cancellation.
    pub fn difference(&self, p: &ExpansionParams, mode: &ModeParams) -> f64 {
        2.0 * p.epsilon * mode.m * mode.m / (self.omega_future + self.omega_past)
    }
}

pub fn scale_factor(p: &ExpansionParams, eta: f64) -> f64 {
    scale_factor_sq(p, eta).sqrt()
}

/// `C²(η)`, the quantity that actually enters the mode equations.
pub fn scale_factor_sq(p: &ExpansionParams, eta: f64) -> f64 {
    1.0 + p.epsilon * (1.0 + (p.rho * eta).tanh())
}

/// `dC/dη = ε ρ sech²(ρη) / (2C)`.
pub fn scale_factor_deriv(p: &ExpansionParams, eta: f64) -> f64 {
    let sech = 1.0 / (p.rho * eta).cosh();
    p.epsilon * p.rho * sech * sech / (2.0 * scale_factor(p, eta))
}

/// Scale factor in the far future, `(1 + 2ε)^{1/2}`.
pub fn scale_factor_future(p: &ExpansionParams) -> f64 {
    (1.0 + 2.0 * p.epsilon).sqrt()
}

/// Frequencies in the two flat regions. The `(1 + 2ε)` factor belongs to the
/// future region, where `C² → 1 + 2ε`.
pub fn frequencies(p: &ExpansionParams, mode: &ModeParams) -> Result<Frequencies> {
    if mode.m == 0.0 && mode.k == 0.0 {
        return Err(Error::DegenerateMode);
    }
    let k2 = mode.k * mode.k;
    let m2 = mode.m * mode.m;
    Ok(Frequencies {
        omega_past: (k2 + m2).sqrt(),
        omega_future: (k2 + m2 * (1.0 + 2.0 * p.epsilon)).sqrt(),
    })
}
