//! Numerical mode integration: the independent oracle for the closed forms.
//!
//! The bosonic mode `Φ'' + (k² + C²m²)Φ = 0` and the two-component fermionic
//! system
//!
//! ```text
//! f' =  k g − i m C f
//! g' = −k f + i m C g
//! ```
//!
//! are integrated from `η = −T` (prepared as a positive-frequency past
//! solution) to `η = +T`, then projected onto the future plane waves. The
//! fermionic system is `i∂ψ = Hψ` with Hermitian `H = [[mC, ik], [−ik, −mC]]`,
//! so `|f|² + |g|²` is conserved. Eliminating `g` gives
//! `f'' + (k² + m²C² + imĊ) f = 0`; `g` obeys the same equation with the sign
//! of the `imĊ` term flipped.

mod dopri;

use crate::bogoliubov::BogoliubovCoefficients;
use crate::cosmology::{
    frequencies, scale_factor_future, scale_factor_sq, ExpansionParams, ModeParams, Statistics,
};
use crate::error::{Error, Result};
use crate::specfun::{hyp2f1_with_complement, ComplexVal};
use dopri::{Dopri5, StepControl};

/// Default bound on the residual `e^{−2ρT}` of the scale factor at `η = ±T`.
pub const DEFAULT_ASYMPTOTIC_TOL: f64 = 1e-12;
/// The drift of the conserved Wronskian and spinor norm is about six times
/// `rel_tol`, so this keeps both below 1e-10.
pub const DEFAULT_REL_TOL: f64 = 1e-12;
pub const DEFAULT_ABS_TOL: f64 = 1e-14;

/// Largest spinor-norm drift accepted before the fermionic pair is
/// renormalized.
pub const MAX_NORM_DRIFT: f64 = 1e-6;
pub const DEFAULT_MAX_STEPS: usize = 2_000_000;

/// Step sizes are clamped to `[H_MIN_RHO, H_MAX_RHO] / ρ`.
const H_MIN_RHO: f64 = 1e-8;
const H_MAX_RHO: f64 = 0.1;

/// Integration window `[−T, T]` and error control.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationSettings {
    t_span: f64,
    rel_tol: f64,
    abs_tol: f64,
    max_steps: usize,
}

impl IntegrationSettings {
    pub fn new(t_span: f64, rel_tol: f64, abs_tol: f64, max_steps: usize) -> Result<Self> {
        if !(t_span.is_finite() && t_span > 0.0) {
            return Err(Error::Precondition(format!("t_span must be finite and > 0, got {t_span}")));
        }
        for (name, tol) in [("rel_tol", rel_tol), ("abs_tol", abs_tol)] {
            if !(tol > 0.0 && tol <= 1e-3) {
                return Err(Error::Precondition(format!("{name} must lie in (0, 1e-3], got {tol}")));
            }
        }
        if max_steps == 0 {
            return Err(Error::Precondition("max_steps must be positive".into()));
        }
        Ok(Self { t_span, rel_tol, abs_tol, max_steps })
    }

    /// Default window `T = max(ln(1/tol)/(2ρ), 8/ρ)` with default tolerances.
    pub fn for_expansion(p: &ExpansionParams) -> Result<Self> {
        Self::new(
            default_t_span(p.rho())?,
            DEFAULT_REL_TOL,
            DEFAULT_ABS_TOL,
            DEFAULT_MAX_STEPS,
        )
    }

    pub fn t_span(&self) -> f64 {
        self.t_span
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn abs_tol(&self) -> f64 {
        self.abs_tol
    }

    pub fn max_steps(&self) -> usize {
        self.max_steps
    }

    pub fn with_t_span(self, t_span: f64) -> Result<Self> {
        Self::new(t_span, self.rel_tol, self.abs_tol, self.max_steps)
    }

    pub fn with_tolerances(self, rel_tol: f64, abs_tol: f64) -> Result<Self> {
        Self::new(self.t_span, rel_tol, abs_tol, self.max_steps)
    }
}

fn default_t_span(rho: f64) -> Result<f64> {
    if !(rho > 0.0) {
        return Err(Error::Precondition("mode integration needs rho > 0".into()));
    }
    let asymptotic = -DEFAULT_ASYMPTOTIC_TOL.ln() / (2.0 * rho);
    Ok(asymptotic.max(8.0 / rho))
}

/// A point on a mode trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModeState {
    /// `Φ(η)` and `Φ'(η)`.
    Boson { eta: f64, value: ComplexVal, derivative: ComplexVal },
    /// Upper and lower spinor components.
    Fermion { eta: f64, f: ComplexVal, g: ComplexVal },
}

impl ModeState {
    pub fn eta(&self) -> f64 {
        match *self {
            ModeState::Boson { eta, .. } | ModeState::Fermion { eta, .. } => eta,
        }
    }

    /// `W = Φ Φ*' − Φ* Φ'`; equals `i` for the normalized positive-frequency
    /// initial data. `None` for fermion states.
    pub fn wronskian(&self) -> Option<ComplexVal> {
        match *self {
            ModeState::Boson { value, derivative, .. } => {
                Some(value * derivative.conj() - value.conj() * derivative)
            }
            ModeState::Fermion { .. } => None,
        }
    }

    /// `|f|² + |g|²`. `None` for boson states.
    pub fn norm_sqr(&self) -> Option<f64> {
        match *self {
            ModeState::Fermion { f, g, .. } => Some(f.norm_sqr() + g.norm_sqr()),
            ModeState::Boson { .. } => None,
        }
    }
}

fn require_integrable(p: &ExpansionParams, mode: &ModeParams) -> Result<()> {
    if !(p.rho() > 0.0) {
        return Err(Error::Precondition("mode integration needs rho > 0".into()));
    }
    if mode.m() == 0.0 && mode.k() == 0.0 {
        return Err(Error::DegenerateMode);
    }
    Ok(())
}

fn step_control(p: &ExpansionParams, s: &IntegrationSettings) -> StepControl {
    StepControl {
        rel_tol: s.rel_tol,
        abs_tol: s.abs_tol,
        h_min: H_MIN_RHO / p.rho(),
        h_max: H_MAX_RHO / p.rho(),
        max_steps: s.max_steps,
    }
}

fn initial_step(p: &ExpansionParams, omega_max: f64) -> f64 {
    (0.05 / omega_max).min(H_MAX_RHO / p.rho())
}

fn c(re: f64, im: f64) -> ComplexVal {
    ComplexVal::new(re, im)
}

fn boson_rhs(p: ExpansionParams, k2: f64, m2: f64) -> impl Fn(f64, &[f64; 4]) -> [f64; 4] {
    move |eta, y| {
        let omega2 = k2 + m2 * scale_factor_sq(&p, eta);
        [y[2], y[3], -omega2 * y[0], -omega2 * y[1]]
    }
}

fn boson_state(eta: f64, y: &[f64; 4]) -> ModeState {
    ModeState::Boson { eta, value: c(y[0], y[1]), derivative: c(y[2], y[3]) }
}

/// Integrate the bosonic mode over `[−T, T]` and sample it at `etas`
/// (ascending, inside the window). The returned vector ends with the state
/// at `η = +T`.
pub fn integrate_boson_trajectory(
    p: &ExpansionParams,
    mode: &ModeParams,
    s: &IntegrationSettings,
    etas: &[f64],
) -> Result<Vec<ModeState>> {
    require_integrable(p, mode)?;
    let f = frequencies(p, mode)?;
    let t = s.t_span;
    let w = f.omega_past;
    // Φ = e^{−iωη}/√(2ω) at η = −T.
    let phi0 = c(0.0, w * t).exp() / (2.0 * w).sqrt();
    let dphi0 = c(0.0, -w) * phi0;
    let y0 = [phi0.re, phi0.im, dphi0.re, dphi0.im];

    let rhs = boson_rhs(*p, mode.k() * mode.k(), mode.m() * mode.m());
    let mut solver = Dopri5::new(-t, y0, initial_step(p, f.omega_future), step_control(p, s));
    sample(&mut solver, &rhs, etas, t, boson_state)
}

fn sample<const N: usize, F, S>(
    solver: &mut Dopri5<N>,
    rhs: &F,
    etas: &[f64],
    t: f64,
    to_state: S,
) -> Result<Vec<ModeState>>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
    S: Fn(f64, &[f64; N]) -> ModeState,
{
    let mut out = Vec::with_capacity(etas.len() + 1);
    for &eta in etas {
        if !(eta >= solver.t() && eta <= t) {
            return Err(Error::Precondition(format!(
                "sample point {eta} outside window or out of order"
            )));
        }
        solver.advance_to(rhs, eta)?;
        out.push(to_state(solver.t(), solver.y()));
    }
    solver.advance_to(rhs, t)?;
    out.push(to_state(solver.t(), solver.y()));
    Ok(out)
}

/// Bosonic mode at `η = +T`, started as `e^{−iω_past η}/√(2ω_past)` at `−T`.
pub fn integrate_boson_mode(
    p: &ExpansionParams,
    mode: &ModeParams,
    s: &IntegrationSettings,
) -> Result<ModeState> {
    let states = integrate_boson_trajectory(p, mode, s, &[])?;
    Ok(states[states.len() - 1])
}

/// Project a final bosonic state onto `u = e^{−iωη}/√(2ω)` and `u*`:
/// `Φ = αu + βu*`, `Φ' = αu' + βu*'`.
pub fn extract_bogoliubov_boson(
    final_state: &ModeState,
    omega_future: f64,
) -> Result<BogoliubovCoefficients> {
    let ModeState::Boson { eta, value, derivative } = *final_state else {
        return Err(Error::Precondition("boson extraction needs a boson state".into()));
    };
    assert!(omega_future > 0.0, "plane-wave basis is singular for omega = 0");
    let w = omega_future;
    let u = c(0.0, -w * eta).exp() / (2.0 * w).sqrt();
    let du = c(0.0, -w) * u;
    // W(u, u*) = i
    let i = ComplexVal::i();
    let alpha = (value * du.conj() - derivative * u.conj()) / i;
    let beta = (u * derivative - du * value) / i;
    BogoliubovCoefficients::new(alpha, beta, Statistics::Boson)
}

fn fermion_rhs(p: ExpansionParams, k: f64, m: f64) -> impl Fn(f64, &[f64; 4]) -> [f64; 4] {
    move |eta, y| {
        let mc = m * scale_factor_sq(&p, eta).sqrt();
        let [fr, fi, gr, gi] = *y;
        [k * gr + mc * fi, k * gi - mc * fr, -k * fr - mc * gi, -k * fi + mc * gr]
    }
}

fn fermion_state(eta: f64, y: &[f64; 4]) -> ModeState {
    ModeState::Fermion { eta, f: c(y[0], y[1]), g: c(y[2], y[3]) }
}

/// Unit eigenvectors of `H = [[a, ik], [−ik, −a]]` for eigenvalues `±ω`,
/// `ω = √(a² + k²)`, `a >= 0`.
fn spinor_basis(a: f64, k: f64, omega: f64) -> ([ComplexVal; 2], [ComplexVal; 2]) {
    let norm = ((a + omega).powi(2) + k * k).sqrt();
    let positive = [c((a + omega) / norm, 0.0), c(0.0, -k / norm)];
    let negative = [c(0.0, k / norm), c(-(a + omega) / norm, 0.0)];
    (positive, negative)
}

/// Fermionic trajectory; see [`integrate_boson_trajectory`] for sampling.
pub fn integrate_fermion_trajectory(
    p: &ExpansionParams,
    mode: &ModeParams,
    s: &IntegrationSettings,
    etas: &[f64],
) -> Result<Vec<ModeState>> {
    require_integrable(p, mode)?;
    let f = frequencies(p, mode)?;
    let t = s.t_span;
    let (positive, _) = spinor_basis(mode.m(), mode.k(), f.omega_past);
    let phase = c(0.0, f.omega_past * t).exp();
    let (f0, g0) = (positive[0] * phase, positive[1] * phase);
    let y0 = [f0.re, f0.im, g0.re, g0.im];

    let rhs = fermion_rhs(*p, mode.k(), mode.m());
    let mut solver = Dopri5::new(-t, y0, initial_step(p, f.omega_future), step_control(p, s));
    sample(&mut solver, &rhs, etas, t, fermion_state)
}

/// Fermionic spinor at `η = +T`, started in the normalized positive-frequency
/// past solution. At `k = 0` that is `(1, 0)`.
pub fn integrate_fermion_system(
    p: &ExpansionParams,
    mode: &ModeParams,
    s: &IntegrationSettings,
) -> Result<ModeState> {
    let states = integrate_fermion_trajectory(p, mode, s, &[])?;
    Ok(states[states.len() - 1])
}

/// Project a final spinor onto the future positive/negative-frequency
/// solutions built with `C(+∞)` and `ω_future`.
///
/// The pair is divided by the final spinor norm, which the exact evolution
/// keeps at 1; drifts above [`MAX_NORM_DRIFT`] are reported as errors.
pub fn extract_bogoliubov_fermion(
    final_state: &ModeState,
    p: &ExpansionParams,
    mode: &ModeParams,
) -> Result<BogoliubovCoefficients> {
    let ModeState::Fermion { eta, f, g } = *final_state else {
        return Err(Error::Precondition("fermion extraction needs a fermion state".into()));
    };
    let freqs = frequencies(p, mode)?;
    let w = freqs.omega_future;
    let (positive, negative) = spinor_basis(mode.m() * scale_factor_future(p), mode.k(), w);
    let norm_sqr = f.norm_sqr() + g.norm_sqr();
    if !((norm_sqr - 1.0).abs() <= MAX_NORM_DRIFT) {
        return Err(Error::Normalization(format!(
            "spinor norm drifted to {norm_sqr}; tighten the integration tolerances"
        )));
    }
    let norm = norm_sqr.sqrt();
    let project = |v: &[ComplexVal; 2]| (v[0].conj() * f + v[1].conj() * g) / norm;
    let alpha = project(&positive) * c(0.0, w * eta).exp();
    let beta = project(&negative) * c(0.0, -w * eta).exp();
    BogoliubovCoefficients::new(alpha, beta, Statistics::Fermion)
}

/// Bosonic coefficients by integration and projection.
pub fn boson_coefficients_ode(
    p: &ExpansionParams,
    mode: &ModeParams,
    s: &IntegrationSettings,
) -> Result<BogoliubovCoefficients> {
    let f = frequencies(p, mode)?;
    extract_bogoliubov_boson(&integrate_boson_mode(p, mode, s)?, f.omega_future)
}

/// Fermionic coefficients by integration and projection.
pub fn fermion_coefficients_ode(
    p: &ExpansionParams,
    mode: &ModeParams,
    s: &IntegrationSettings,
) -> Result<BogoliubovCoefficients> {
    extract_bogoliubov_fermion(&integrate_fermion_system(p, mode, s)?, p, mode)
}

fn softplus(x: f64) -> f64 {
    x.max(0.0) + (-x.abs()).exp().ln_1p()
}

/// Closed-form positive-frequency in-mode
///
/// ```text
/// Φ(η) = z^{−iω_p/2ρ} (1−z)^{−iω_f/2ρ} ₂F₁(1 + b, b; 1 − iω_p/ρ; z)
/// b = −i(ω_p + ω_f)/2ρ,  z = ½(1 + tanh ρη)
/// ```
///
/// with `ω_p`, `ω_f` the past and future frequencies. As `η → −∞` this tends
/// to the unit plane wave `e^{−iω_p η}`, the same solution (up to the
/// `1/√(2ω_p)` normalization) that the integrator starts from. It is the
/// complex conjugate of the `e^{+iωη}` form with the same hypergeometric
/// structure.
pub fn analytic_mode_function(p: &ExpansionParams, mode: &ModeParams, eta: f64) -> Result<ComplexVal> {
    if !(p.epsilon() > 0.0 && p.rho() > 0.0 && mode.m() > 0.0) {
        return Err(Error::Precondition(
            "analytic mode function needs epsilon > 0, rho > 0, m > 0".into(),
        ));
    }
    let f = frequencies(p, mode)?;
    let rho = p.rho();
    let x = 2.0 * rho * eta;
    // ln z = −ln(1 + e^{−2ρη}), ln(1−z) = −ln(1 + e^{2ρη})
    let ln_z = -softplus(-x);
    let ln_w = -softplus(x);
    let z = ln_z.exp();
    let w = ln_w.exp();

    let i = ComplexVal::i();
    let b = -i * (f.omega_past + f.omega_future) / (2.0 * rho);
    let cc = 1.0 - i * f.omega_past / rho;
    let hyp = if z < 1.0 {
        hyp2f1_with_complement(1.0 + b, b, cc, z, w)?
    } else {
        return Err(Error::Precondition(format!("eta = {eta} too far in the future for f64 z")));
    };
    let prefactor = (-i * (f.omega_past * ln_z + f.omega_future * ln_w) / (2.0 * rho)).exp();
    Ok(prefactor * hyp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bogoliubov::mixing_ratio_x;
    use crate::cosmology::Spin;
    use std::f64::consts::LN_10;

    fn ep(e: f64, r: f64) -> ExpansionParams {
        ExpansionParams::new(e, r).unwrap()
    }

    fn mode(m: f64, k: f64, spin: Spin) -> ModeParams {
        ModeParams::new(m, k, spin).unwrap()
    }

    #[test]
    fn default_window() {
        let s = IntegrationSettings::for_expansion(&ep(1.0, 2.0)).unwrap();
        assert!((s.t_span() - 12.0 * LN_10 / 4.0).abs() < 1e-12);
        assert!((-2.0 * 2.0 * s.t_span()).exp() <= 1.0001e-12);
        assert!(IntegrationSettings::for_expansion(&ep(1.0, 0.0)).is_err());
        assert!(IntegrationSettings::new(1.0, 1e-2, 1e-12, 10).is_err());
        assert!(IntegrationSettings::new(-1.0, 1e-8, 1e-12, 10).is_err());
    }

    #[test]
    fn free_evolution_limit() {
        let p = ep(1e-12, 1.0);
        let md = mode(1.0, 0.5, Spin::Zero);
        let s = IntegrationSettings::for_expansion(&p).unwrap();
        let ModeState::Boson { eta, value, .. } = integrate_boson_mode(&p, &md, &s).unwrap() else {
            panic!()
        };
        let w = 1.25f64.sqrt();
        let expected = c(0.0, -w * eta).exp() / (2.0 * w).sqrt();
        assert!((value - expected).norm() < 1e-8, "{value} vs {expected}");
        let coeffs = extract_bogoliubov_boson(&integrate_boson_mode(&p, &md, &s).unwrap(), w).unwrap();
        assert!((coeffs.alpha().norm() - 1.0).abs() < 1e-8);
        assert!(coeffs.beta().norm() < 1e-8);
    }

    #[test]
    fn massless_boson_is_pure_phase() {
        let p = ep(3.0, 1.0);
        let md = mode(0.0, 2.0, Spin::One);
        let s = IntegrationSettings::for_expansion(&p).unwrap();
        let ModeState::Boson { value, .. } = integrate_boson_mode(&p, &md, &s).unwrap() else {
            panic!()
        };
        assert!((value.norm() - 0.5).abs() < 1e-8);
    }

    #[test]
    fn boson_reference_point() {
        let p = ep(1.5, 1.0);
        let md = mode(1.0, 0.0, Spin::Zero);
        let s = IntegrationSettings::for_expansion(&p).unwrap();
        let coeffs = boson_coefficients_ode(&p, &md, &s).unwrap();
        assert!((coeffs.mixing_ratio() - mixing_ratio_x(&p, &md)).abs() < 1e-6);
        assert!(coeffs.normalization_defect().abs() < 1e-8);
    }

    #[test]
    fn fermion_decoupled_at_zero_momentum() {
        let p = ep(2.0, 2.0);
        let md = mode(1.0, 0.0, Spin::Half);
        let s = IntegrationSettings::for_expansion(&p).unwrap();
        let ModeState::Fermion { f, g, .. } = integrate_fermion_system(&p, &md, &s).unwrap() else {
            panic!()
        };
        assert!((f.norm() - 1.0).abs() < 1e-8);
        assert!(g.norm() < 1e-8);
        let coeffs = fermion_coefficients_ode(&p, &md, &s).unwrap();
        assert!(coeffs.beta().norm() < 1e-8);
    }

    #[test]
    fn massless_fermion_no_mixing() {
        let p = ep(2.0, 2.0);
        let md = mode(0.0, 1.0, Spin::Half);
        let s = IntegrationSettings::for_expansion(&p).unwrap();
        let coeffs = fermion_coefficients_ode(&p, &md, &s).unwrap();
        assert!(coeffs.beta().norm() < 1e-8);
    }

    #[test]
    fn fermion_norm_conserved() {
        let p = ep(2.0, 2.0);
        let md = mode(1.0, 1.0, Spin::ThreeHalves);
        let s = IntegrationSettings::for_expansion(&p).unwrap();
        let etas: Vec<f64> = (0..50).map(|j| -s.t_span() + j as f64 * 0.25).collect();
        for st in integrate_fermion_trajectory(&p, &md, &s, &etas).unwrap() {
            assert!((st.norm_sqr().unwrap() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn fermion_tolerance_refinement() {
        let p = ep(2.0, 2.0);
        let md = mode(1.0, 1.0, Spin::Half);
        let base = IntegrationSettings::for_expansion(&p).unwrap();
        let xs: Vec<f64> = [1e-8, 1e-10, 1e-12]
            .iter()
            .map(|&tol| {
                let s = base.with_tolerances(tol, tol * 1e-2).unwrap();
                fermion_coefficients_ode(&p, &md, &s).unwrap().mixing_ratio()
            })
            .collect();
        // six significant digits
        for x in &xs {
            assert!((x - xs[2]).abs() < 5e-7 * xs[2], "{xs:?}");
        }
    }

    #[test]
    fn boson_wronskian_along_trajectory() {
        let p = ep(2.0, 2.0);
        let md = mode(1.0, 1.0, Spin::Zero);
        let s = IntegrationSettings::for_expansion(&p).unwrap();
        let etas: Vec<f64> = (0..100).map(|j| -s.t_span() + j as f64 * 0.13).collect();
        for st in integrate_boson_trajectory(&p, &md, &s, &etas).unwrap() {
            let w = st.wronskian().unwrap();
            assert!((w - ComplexVal::i()).norm() < 1e-9, "{w}");
        }
    }

    #[test]
    fn analytic_mode_past_asymptotics() {
        let p = ep(1.0, 1.0);
        let md = mode(1.0, 0.5, Spin::Zero);
        let t = IntegrationSettings::for_expansion(&p).unwrap().t_span();
        let phi = analytic_mode_function(&p, &md, -t).unwrap();
        assert!((phi.norm() - 1.0).abs() < 1e-8);
        let h = 1e-5;
        let ahead = analytic_mode_function(&p, &md, -t + h).unwrap();
        let behind = analytic_mode_function(&p, &md, -t - h).unwrap();
        let velocity = -((ahead / behind).arg()) / (2.0 * h);
        assert!((velocity - 1.25f64.sqrt()).abs() < 1e-6, "{velocity}");
    }

    #[test]
    fn analytic_mode_continuous_at_midpoint() {
        let p = ep(1.0, 1.0);
        let md = mode(1.0, 0.5, Spin::Zero);
        let below = analytic_mode_function(&p, &md, -1e-9).unwrap();
        let at = analytic_mode_function(&p, &md, 0.0).unwrap();
        let above = analytic_mode_function(&p, &md, 1e-9).unwrap();
        assert!(at.re.is_finite() && at.im.is_finite());
        assert!((below - above).norm() < 1e-8 * at.norm());
    }

    #[test]
    fn wrong_state_kind_rejected() {
        let st = ModeState::Fermion { eta: 0.0, f: c(1.0, 0.0), g: c(0.0, 0.0) };
        assert!(extract_bogoliubov_boson(&st, 1.0).is_err());
        let st = ModeState::Boson { eta: 0.0, value: c(1.0, 0.0), derivative: c(0.0, 0.0) };
        assert!(extract_bogoliubov_fermion(&st, &ep(1.0, 1.0), &mode(1.0, 1.0, Spin::Half)).is_err());
    }
}
