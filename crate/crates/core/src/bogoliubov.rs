//! Closed-form Bogoliubov coefficients for the bosonic modes.
//!
//! Three routes are exposed: the raw Γ-function ratios ([`paper_alpha_beta`]),
//! the same ratios rescaled and relabelled into a properly normalized pair
//! ([`canonical_boson_coefficients`]), and the overflow-safe sinh form of the
//! mixing ratio ([`mixing_ratio_x`]). The ODE extraction in
//! [`modesolver`](crate::modesolver) is the independent check on all three.

use std::f64::consts::PI;

use crate::cosmology::{frequencies, ExpansionParams, ModeParams, Statistics};
use crate::error::{Error, Result};
use crate::specfun::{log_gamma, log_sinh, ComplexVal};

/// Largest tolerated violation of `|α|² ∓ |β|² = 1`.
pub const NORMALIZATION_TOL: f64 = 1e-8;

/// A Bogoliubov pair `(α, β)` tagged with the statistics whose normalization
/// it satisfies: `|α|² − |β|² = 1` for bosons, `|α|² + |β|² = 1` for fermions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BogoliubovCoefficients {
    alpha: ComplexVal,
    beta: ComplexVal,
    statistics: Statistics,
}

impl BogoliubovCoefficients {
    pub fn new(alpha: ComplexVal, beta: ComplexVal, statistics: Statistics) -> Result<Self> {
        let coeffs = Self { alpha, beta, statistics };
        let defect = coeffs.normalization_defect();
        if !(defect.abs() <= NORMALIZATION_TOL) {
            return Err(Error::Normalization(format!(
                "{statistics} pair (α = {alpha}, β = {beta}) misses normalization by {defect:e}"
            )));
        }
        Ok(coeffs)
    }

    /// `(1, 0)`: no mixing.
    pub fn identity(statistics: Statistics) -> Self {
        Self {
            alpha: ComplexVal::new(1.0, 0.0),
            beta: ComplexVal::new(0.0, 0.0),
            statistics,
        }
    }

    pub fn alpha(&self) -> ComplexVal {
        self.alpha
    }

    pub fn beta(&self) -> ComplexVal {
        self.beta
    }

    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    /// `|α|² − |β|² − 1` (boson) or `|α|² + |β|² − 1` (fermion).
    pub fn normalization_defect(&self) -> f64 {
        let (a2, b2) = (self.alpha.norm_sqr(), self.beta.norm_sqr());
        match self.statistics {
            Statistics::Boson => a2 - b2 - 1.0,
            Statistics::Fermion => a2 + b2 - 1.0,
        }
    }

    /// `x = |β/α|²`.
    pub fn mixing_ratio(&self) -> f64 {
        self.beta.norm_sqr() / self.alpha.norm_sqr()
    }
}

/// The two Γ-function ratios exactly as they appear in the closed-form
/// result, with `ω_in` taken as the past frequency and `ω_out` the future one:
///
/// ```text
/// first  = Γ(1 + iω_in/ρ) Γ(−iω_out/ρ) / [Γ(1 + iδ) Γ(iδ)],  δ = (ω_in − ω_out)/2ρ
/// second = Γ(1 + iω_in/ρ) Γ( iω_out/ρ) / [Γ(1 + iσ) Γ(iσ)],  σ = (ω_in + ω_out)/2ρ
/// ```
///
/// No normalization or relabelling is applied. With these unit conventions
/// `|first|² − |second|² = −ω_past/ω_future`; see
/// [`canonical_boson_coefficients`] for the normalized pair.
pub fn paper_alpha_beta(
    p: &ExpansionParams,
    mode: &ModeParams,
) -> Result<(ComplexVal, ComplexVal)> {
    let (ln_first, ln_second) = log_paper_alpha_beta(p, mode)?;
    Ok((exp_checked(ln_first)?, exp_checked(ln_second)?))
}

fn log_paper_alpha_beta(p: &ExpansionParams, mode: &ModeParams) -> Result<(ComplexVal, ComplexVal)> {
    if p.rho() <= 0.0 {
        return Err(Error::Precondition("closed-form coefficients need rho > 0".into()));
    }
    if p.epsilon() == 0.0 || mode.m() == 0.0 {
        return Err(Error::Pole(
            "ω_past = ω_future puts Γ(0) in the denominator (m = 0 or ε = 0)".into(),
        ));
    }
    let f = frequencies(p, mode)?;
    let rho = p.rho();
    let i = ComplexVal::i();
    let w_in = f.omega_past / rho;
    let w_out = f.omega_future / rho;
    let delta = -f.difference(p, mode) / (2.0 * rho);
    let sigma = (f.omega_past + f.omega_future) / (2.0 * rho);

    let common = log_gamma(1.0 + i * w_in)?;
    let ln_first = common + log_gamma(-i * w_out)?
        - log_gamma(1.0 + i * delta)?
        - log_gamma(i * delta)?;
    let ln_second = common + log_gamma(i * w_out)?
        - log_gamma(1.0 + i * sigma)?
        - log_gamma(i * sigma)?;
    Ok((ln_first, ln_second))
}

fn exp_checked(ln: ComplexVal) -> Result<ComplexVal> {
    if ln.re > f64::MAX.ln() {
        return Err(Error::Overflow(format!("exp of log-magnitude {}", ln.re)));
    }
    Ok(ln.exp())
}

/// Normalized bosonic pair built from [`paper_alpha_beta`].
///
/// Both ratios are scaled by `√(ω_future/ω_past)` (the `1/√(2ω)` mode
/// normalization) and the larger-modulus member becomes `α`, which makes
/// `|α|² − |β|² = 1`. Flat or massless inputs return `(1, 0)`.
pub fn canonical_boson_coefficients(
    p: &ExpansionParams,
    mode: &ModeParams,
) -> Result<BogoliubovCoefficients> {
    if p.is_flat() || mode.m() == 0.0 {
        return Ok(BogoliubovCoefficients::identity(Statistics::Boson));
    }
    let (ln_first, ln_second) = match log_paper_alpha_beta(p, mode) {
        Ok(pair) => pair,
        // ω_future − ω_past below the pole resolution: mixing is ~(δ/σ)², nil.
        Err(Error::Pole(_)) => return Ok(BogoliubovCoefficients::identity(Statistics::Boson)),
        Err(e) => return Err(e),
    };
    let f = frequencies(p, mode)?;
    let ln_scale = 0.5 * (f.omega_future / f.omega_past).ln();
    let (big, small) = if ln_first.re >= ln_second.re {
        (ln_first, ln_second)
    } else {
        (ln_second, ln_first)
    };
    BogoliubovCoefficients::new(
        exp_checked(big + ln_scale)?,
        exp_checked(small + ln_scale)?,
        Statistics::Boson,
    )
}

/// Mixing ratio `x = |β/α|²` from the closed form
///
/// ```text
/// x = [sinh(π(ω_future − ω_past)/2ρ) / sinh(π(ω_future + ω_past)/2ρ)]²
/// ```
///
/// evaluated in log space. Returns 0 for `m = 0`, `ε = 0` or `ρ = 0`.
pub fn mixing_ratio_x(p: &ExpansionParams, mode: &ModeParams) -> f64 {
    if p.is_flat() || mode.m() == 0.0 {
        return 0.0;
    }
    let f = match frequencies(p, mode) {
        Ok(f) => f,
        Err(_) => return 0.0,
    };
    let scale = PI / (2.0 * p.rho());
    let lo = scale * f.difference(p, mode);
    let hi = scale * (f.omega_future + f.omega_past);
    match (log_sinh(lo), log_sinh(hi)) {
        (Ok(a), Ok(b)) => (2.0 * (a - b)).exp(),
        // lo underflowed to 0 or hi overflowed: both mean no mixing.
        _ => 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cosmology::Spin;

    fn ep(e: f64, r: f64) -> ExpansionParams {
        ExpansionParams::new(e, r).unwrap()
    }

    fn boson(m: f64, k: f64) -> ModeParams {
        ModeParams::new(m, k, Spin::One).unwrap()
    }

    /// sinh²(π/2)/sinh²(3π/2), evaluated directly.
    fn reference_x() -> f64 {
        ((PI / 2.0).sinh() / (1.5 * PI).sinh()).powi(2)
    }

    #[test]
    fn reference_ratio_magnitude() {
        let x = reference_x();
        assert!((x - 1.710e-3).abs() < 5e-7, "{x}");
    }

    #[test]
    fn raw_pair_modulus_ratio() {
        let (first, second) = paper_alpha_beta(&ep(1.5, 1.0), &boson(1.0, 0.0)).unwrap();
        let ratio = second.norm_sqr() / first.norm_sqr();
        let expected = ((1.5 * PI).sinh() / (PI / 2.0).sinh()).powi(2);
        assert!((ratio - expected).abs() < 1e-10 * expected);
    }

    #[test]
    fn raw_pair_unnormalized_wronskian() {
        let p = ep(2.0, 2.0);
        let mode = boson(1.0, 1.0);
        let f = frequencies(&p, &mode).unwrap();
        let (first, second) = paper_alpha_beta(&p, &mode).unwrap();
        let signed = first.norm_sqr() - second.norm_sqr() + f.omega_past / f.omega_future;
        assert!(signed.abs() < 1e-10, "{signed}");
    }

    #[test]
    fn raw_pair_poles() {
        assert!(matches!(paper_alpha_beta(&ep(2.0, 1.0), &boson(0.0, 1.0)), Err(Error::Pole(_))));
        assert!(matches!(paper_alpha_beta(&ep(0.0, 1.0), &boson(1.0, 1.0)), Err(Error::Pole(_))));
    }

    #[test]
    fn canonical_degenerate_cases() {
        let id = BogoliubovCoefficients::identity(Statistics::Boson);
        assert_eq!(canonical_boson_coefficients(&ep(0.0, 1.0), &boson(1.0, 0.3)).unwrap(), id);
        assert_eq!(canonical_boson_coefficients(&ep(3.0, 1.0), &boson(0.0, 2.0)).unwrap(), id);
        assert_eq!(canonical_boson_coefficients(&ep(3.0, 0.0), &boson(1.0, 2.0)).unwrap(), id);
        // Difference far below the Γ pole resolution.
        let c = canonical_boson_coefficients(&ep(1.0, 1.0), &boson(1e-9, 1.0)).unwrap();
        assert_eq!(c.mixing_ratio(), 0.0);
    }

    #[test]
    fn canonical_reference_point() {
        let c = canonical_boson_coefficients(&ep(1.5, 1.0), &boson(1.0, 0.0)).unwrap();
        assert!((c.mixing_ratio() - reference_x()).abs() < 1e-10 * reference_x());
        assert!(c.normalization_defect().abs() < 1e-10);
    }

    #[test]
    fn sinh_form() {
        assert_eq!(mixing_ratio_x(&ep(2.0, 2.0), &boson(0.0, 1.0)), 0.0);
        assert_eq!(mixing_ratio_x(&ep(0.0, 2.0), &boson(1.0, 1.0)), 0.0);
        assert_eq!(mixing_ratio_x(&ep(2.0, 0.0), &boson(1.0, 1.0)), 0.0);
        let x = mixing_ratio_x(&ep(1.5, 1.0), &boson(1.0, 0.0));
        assert!((x - reference_x()).abs() < 1e-13 * reference_x());
        let adiabatic = mixing_ratio_x(&ep(1.5, 1e-3), &boson(1.0, 0.0));
        assert!(adiabatic < 1e-100);
    }

    #[test]
    fn normalization_is_checked() {
        let one = ComplexVal::new(1.0, 0.0);
        assert!(BogoliubovCoefficients::new(one, one, Statistics::Boson).is_err());
        let h = ComplexVal::new(0.5f64.sqrt(), 0.0);
        assert!(BogoliubovCoefficients::new(h, h, Statistics::Fermion).is_ok());
    }
}
