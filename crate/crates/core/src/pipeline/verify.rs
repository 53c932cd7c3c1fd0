//! Self-check suite: special-function identities, dual-oracle agreement,
//! conservation laws, null results, and the qualitative shape of the three
//! figures. `Fast` runs only closed-form checks; `Full` adds every check that
//! needs the integrator.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::bogoliubov::{canonical_boson_coefficients, mixing_ratio_x};
use crate::cosmology::{scale_factor_sq, ExpansionParams, ModeParams, Spin, Statistics};
use crate::entanglement::{
    default_n_max, entropy_closed, entropy_direct, entropy_for_mode, find_k_opt_fermion,
    find_m_max, schmidt_spectrum,
};
use crate::error::{Error, Result};
use crate::modesolver::{
    analytic_mode_function, boson_coefficients_ode, fermion_coefficients_ode,
    integrate_boson_trajectory, integrate_fermion_system, IntegrationSettings, ModeState,
};
use crate::specfun::{hyp2f1, log_gamma, log_sinh, ComplexVal};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyLevel {
    Fast,
    Full,
}

impl fmt::Display for VerifyLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerifyLevel::Fast => "fast",
            VerifyLevel::Full => "full",
        })
    }
}

impl FromStr for VerifyLevel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(VerifyLevel::Fast),
            "full" => Ok(VerifyLevel::Full),
            other => Err(Error::Config(format!("unknown verify level '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub check: String,
    pub params: Value,
    pub expected: Value,
    pub actual: Value,
    pub tol: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    /// AND of every `pass` flag.
    pub overall: bool,
}

impl VerifyReport {
    fn from_checks(checks: Vec<Check>) -> Self {
        let overall = checks.iter().all(|c| c.pass);
        VerifyReport { checks, overall }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Replaceable pieces of the pipeline, so tests can confirm the suite
/// notices a broken implementation.
#[derive(Clone, Copy)]
pub struct VerifyHooks {
    /// Closed-form mixing ratio compared against the Γ-function route.
    pub mixing_ratio: fn(&ExpansionParams, &ModeParams) -> f64,
}

impl Default for VerifyHooks {
    fn default() -> Self {
        VerifyHooks { mixing_ratio: mixing_ratio_x }
    }
}

pub fn run_verify(level: VerifyLevel) -> VerifyReport {
    run_verify_with(level, &VerifyHooks::default())
}

pub fn run_verify_with(level: VerifyLevel, hooks: &VerifyHooks) -> VerifyReport {
    let mut checks = vec![
        lngamma_recurrence(),
        gamma_modulus(),
        hyp2f1_closed_forms(),
        hyp2f1_euler(),
        scale_factor_limits(),
        gamma_vs_sinh(hooks),
        canonical_normalization(),
        boson_null_results(),
        closed_vs_direct(),
        spin_equivalence(Statistics::Boson),
        fig1_entropy_decreasing_in_k(),
        fig1_m_max_order(),
        fig2_monotone(),
        fig3_peak_order(),
    ];
    if level == VerifyLevel::Full {
        checks.extend([
            gamma_vs_ode(),
            ode_normalization(Statistics::Boson),
            ode_normalization(Statistics::Fermion),
            fermion_null_results(),
            fermion_k_opt(),
            mode_function_vs_ode(),
            spin_equivalence(Statistics::Fermion),
            ode_convergence(),
        ]);
    }
    VerifyReport::from_checks(checks)
}

/// Check whose `actual` must not exceed `tol`. Errors count as failures.
fn bounded(name: &str, params: Value, expected: Value, actual: Result<f64>, tol: f64) -> Check {
    let (actual, pass) = match actual {
        Ok(v) => (json!(v), v <= tol),
        Err(e) => (json!(e.to_string()), false),
    };
    Check { check: name.into(), params, expected, actual, tol, pass }
}

/// Check whose `actual` is a gap that must be strictly positive.
fn positive_gap(name: &str, params: Value, actual: Result<f64>) -> Check {
    let (actual, pass) = match actual {
        Ok(v) => (json!(v), v > 0.0),
        Err(e) => (json!(e.to_string()), false),
    };
    Check { check: name.into(), params, expected: json!("> 0"), actual, tol: 0.0, pass }
}

fn max_of(values: impl IntoIterator<Item = Result<f64>>) -> Result<f64> {
    values.into_iter().try_fold(0.0f64, |acc, v| Ok(acc.max(v?)))
}

fn rel_diff(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

const GRID_M: [f64; 3] = [0.2, 1.0, 5.0];
const GRID_K: [f64; 4] = [0.0, 0.5, 2.0, 10.0];
const GRID_EPS: [f64; 3] = [0.5, 2.0, 8.0];
const GRID_RHO: [f64; 3] = [0.5, 2.0, 10.0];

/// The 108-point cross-validation grid.
pub fn reference_grid(spin: Spin) -> Vec<(ExpansionParams, ModeParams)> {
    let mut out = Vec::with_capacity(108);
    for &e in &GRID_EPS {
        for &r in &GRID_RHO {
            for &m in &GRID_M {
                for &k in &GRID_K {
                    let p = ExpansionParams::new(e, r).expect("grid values are valid");
                    out.push((p, ModeParams::new(m, k, spin).expect("grid values are valid")));
                }
            }
        }
    }
    out
}

fn grid_params() -> Value {
    json!({"m": GRID_M, "k": GRID_K, "epsilon": GRID_EPS, "rho": GRID_RHO})
}

fn ep(e: f64, r: f64) -> ExpansionParams {
    ExpansionParams::new(e, r).expect("literal parameters are valid")
}

fn md(m: f64, k: f64, spin: Spin) -> Result<ModeParams> {
    ModeParams::new(m, k, spin)
}

fn entropy(e: f64, r: f64, m: f64, k: f64, spin: Spin) -> Result<f64> {
    Ok(entropy_for_mode(&ep(e, r), &md(m, k, spin)?, None)?.entropy_bits)
}

fn lngamma_recurrence() -> Check {
    let mut worst = Ok(0.0f64);
    'outer: for i in 0..20 {
        for j in 0..20 {
            let z = ComplexVal::new(-19.75 + 2.0 * i as f64, -95.0 + 10.0 * j as f64);
            let d = log_gamma(z + 1.0).and_then(|up| {
                let here = log_gamma(z)?;
                let mut r = up - here - z.ln();
                r.im -= 2.0 * PI * (r.im / (2.0 * PI)).round();
                Ok(r.norm() / here.norm().max(1.0))
            });
            match d {
                Ok(d) => worst = worst.map(|w| w.max(d)),
                Err(e) => {
                    worst = Err(e);
                    break 'outer;
                }
            }
        }
    }
    bounded(
        "lngamma_recurrence",
        json!({"re": [-19.75, 18.25], "im": [-95, 95], "points": 400}),
        json!(0.0),
        worst,
        1e-12,
    )
}

fn gamma_modulus() -> Check {
    // |Γ(iy)|² = π / (y sinh πy)
    let ys = [0.1, 1.0, 10.0, 50.0];
    let worst = max_of(ys.iter().map(|&y| {
        let lhs = 2.0 * log_gamma(ComplexVal::new(0.0, y))?.re;
        let rhs = PI.ln() - y.ln() - log_sinh(PI * y)?;
        Ok((lhs - rhs).abs() / rhs.abs().max(1.0))
    }));
    bounded("gamma_modulus_identity", json!({"y": ys}), json!(0.0), worst, 1e-11)
}

fn hyp2f1_closed_forms() -> Check {
    // z ₂F₁(1, 1; 2; z) = −ln(1 − z) below ½; ₂F₁(a, b; b; z) = (1 − z)^{−a} across the range.
    let one = ComplexVal::new(1.0, 0.0);
    let (a, b) = (ComplexVal::new(0.3, 0.7), ComplexVal::new(1.2, -0.4));
    let log_z = [0.1, 0.3, 0.5];
    let pow_z = [0.2, 0.7, 0.9, 0.99];
    let log_cases = log_z.iter().map(|&z| {
        let f = hyp2f1(one, one, one * 2.0, z)?;
        let exact = -(-z).ln_1p() / z;
        Ok((f - exact).norm() / exact)
    });
    let pow_cases = pow_z.iter().map(|&z| {
        let f = hyp2f1(a, b, b, z)?;
        let exact = (-a * (-z).ln_1p()).exp();
        Ok((f - exact).norm() / exact.norm())
    });
    bounded(
        "hyp2f1_closed_forms",
        json!({"log": {"a": 1, "b": 1, "c": 2, "z": log_z}, "power": {"a": [0.3, 0.7], "b": [1.2, -0.4], "z": pow_z}}),
        json!(0.0),
        max_of(log_cases.chain(pow_cases)),
        1e-12,
    )
}

fn hyp2f1_euler() -> Check {
    // F(a, b; c; z) = (1 − z)^{c−a−b} F(c − a, c − b; c; z)
    let cases = [
        (ComplexVal::new(0.3, 1.2), ComplexVal::new(-0.4, 0.7), ComplexVal::new(1.1, -0.5)),
        (ComplexVal::new(1.0, -2.0), ComplexVal::new(0.0, -2.0), ComplexVal::new(1.0, -0.8)),
        (ComplexVal::new(-1.7, 0.2), ComplexVal::new(2.5, 0.0), ComplexVal::new(0.6, 3.0)),
    ];
    let zs = [0.2, 0.5, 0.7, 0.95];
    let worst = max_of(cases.iter().flat_map(|&(a, b, c)| {
        zs.iter().map(move |&z| {
            let lhs = hyp2f1(a, b, c, z)?;
            let rhs = ((c - a - b) * (-z).ln_1p()).exp() * hyp2f1(c - a, c - b, c, z)?;
            Ok((lhs - rhs).norm() / lhs.norm().max(1.0))
        })
    }));
    bounded("hyp2f1_euler_transform", json!({"cases": cases.len(), "z": zs}), json!(0.0), worst, 1e-9)
}

fn scale_factor_limits() -> Check {
    let worst = max_of([(0.5, 0.5), (2.0, 2.0), (8.0, 10.0)].iter().map(|&(e, r)| {
        let p = ep(e, r);
        let far = 40.0 / r;
        let past = (scale_factor_sq(&p, -far) - 1.0).abs();
        let future = (scale_factor_sq(&p, far) - (1.0 + 2.0 * e)).abs() / (1.0 + 2.0 * e);
        Ok(past.max(future))
    }));
    bounded(
        "scale_factor_asymptotes",
        json!({"epsilon_rho": [[0.5, 0.5], [2, 2], [8, 10]], "eta_rho": 40}),
        json!(0.0),
        worst,
        1e-12,
    )
}

fn gamma_vs_sinh(hooks: &VerifyHooks) -> Check {
    let worst = max_of(reference_grid(Spin::Zero).iter().map(|(p, mode)| {
        let gamma = canonical_boson_coefficients(p, mode)?.mixing_ratio();
        let sinh = (hooks.mixing_ratio)(p, mode);
        Ok(rel_diff(gamma, sinh))
    }));
    bounded("gamma_vs_sinh_mixing_ratio", grid_params(), json!(0.0), worst, 1e-10)
}

fn canonical_normalization() -> Check {
    let worst = max_of(
        reference_grid(Spin::Zero)
            .iter()
            .map(|(p, mode)| Ok(canonical_boson_coefficients(p, mode)?.normalization_defect())),
    );
    bounded("canonical_boson_normalization", grid_params(), json!(0.0), worst, 1e-8)
}

fn boson_null_results() -> Check {
    let worst = max_of([
        entropy(2.0, 2.0, 0.0, 0.5, Spin::One),
        entropy(2.0, 2.0, 0.0, 2.0, Spin::One),
        entropy(0.0, 2.0, 1.0, 0.5, Spin::One),
        entropy(2.0, 0.0, 1.0, 0.5, Spin::One),
    ]);
    bounded(
        "boson_null_entropy",
        json!({"cases": "m=0 at k in {0.5, 2}; epsilon=0; rho=0", "base": {"epsilon": 2, "rho": 2, "m": 1, "k": 0.5}}),
        json!(0.0),
        worst,
        1e-10,
    )
}

fn closed_vs_direct() -> Check {
    let boson = [0.01, 0.1, 0.5, 0.9, 0.99];
    let fermion = [0.1, 1.0 / 3.0, 1.0, 3.0];
    let cases = boson
        .iter()
        .map(|&x| (x, Statistics::Boson))
        .chain(fermion.iter().map(|&x| (x, Statistics::Fermion)));
    let worst = max_of(cases.map(|(x, stats)| {
        let closed = entropy_closed(x, stats)?.entropy_bits;
        let direct = entropy_direct(&schmidt_spectrum(x, stats, default_n_max(x))?).entropy_bits;
        Ok((closed - direct).abs())
    }));
    bounded(
        "closed_vs_direct_entropy",
        json!({"boson_x": boson, "fermion_x": fermion}),
        json!(0.0),
        worst,
        1e-12,
    )
}

/// Fixed pseudo-random points, uniform over a box of interesting parameters.
fn scattered_points(count: usize) -> Vec<[f64; 4]> {
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
    let mut next = move || {
        state = state.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1_442_695_040_888_963_407);
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    (0..count)
        .map(|_| [0.1 + 7.9 * next(), 0.2 + 9.8 * next(), 0.05 + 4.95 * next(), 5.0 * next()])
        .collect()
}

fn spin_equivalence(stats: Statistics) -> Check {
    let (a, b, name) = match stats {
        Statistics::Boson => (Spin::Zero, Spin::One, "spin_equivalence_boson"),
        Statistics::Fermion => (Spin::Half, Spin::ThreeHalves, "spin_equivalence_fermion"),
    };
    let mismatches = scattered_points(10).iter().try_fold(0.0, |n, &[e, r, m, k]| {
        let sa = entropy(e, r, m, k, a)?;
        let sb = entropy(e, r, m, k, b)?;
        Ok(if sa.to_bits() == sb.to_bits() { n } else { n + 1.0 })
    });
    bounded(
        name,
        json!({"points": 10, "spins": [a.label(), b.label()]}),
        json!("bit-identical"),
        mismatches,
        0.0,
    )
}

fn fig1_entropy_decreasing_in_k() -> Check {
    let ks: Vec<f64> = (0..=20).map(|i| 0.25 * i as f64).collect();
    let gap = ks
        .iter()
        .map(|&k| entropy(2.0, 2.0, 1.0, k, Spin::One))
        .collect::<Result<Vec<_>>>()
        .map(|s| s.windows(2).map(|w| w[0] - w[1]).fold(f64::INFINITY, f64::min));
    positive_gap(
        "fig1_entropy_decreasing_in_k",
        json!({"epsilon": 2, "rho": 2, "m": 1, "k": "0, 0.25, ..., 5", "actual": "min S(k_i) - S(k_i+1)"}),
        gap,
    )
}

fn fig1_m_max_order() -> Check {
    let p = ep(2.0, 2.0);
    let gap = find_m_max(1.0, &p, Statistics::Boson)
        .and_then(|hi| Ok(hi.location - find_m_max(0.1, &p, Statistics::Boson)?.location));
    positive_gap(
        "fig1_m_max_grows_with_k",
        json!({"epsilon": 2, "rho": 2, "actual": "m_max(k=1) - m_max(k=0.1)"}),
        gap,
    )
}

fn fig2_monotone() -> Check {
    let steps = [0.5, 1.0, 2.0, 4.0];
    let gap = (|| {
        let along_eps = steps
            .iter()
            .map(|&e| entropy(e, 2.0, 1.0, 0.1, Spin::One))
            .collect::<Result<Vec<_>>>()?;
        let along_rho = steps
            .iter()
            .map(|&r| entropy(2.0, r, 1.0, 0.1, Spin::One))
            .collect::<Result<Vec<_>>>()?;
        Ok(along_eps
            .windows(2)
            .chain(along_rho.windows(2))
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min))
    })();
    positive_gap(
        "fig2_entropy_increasing_in_epsilon_and_rho",
        json!({"m": 1, "k": 0.1, "epsilon_at_rho_2": steps, "rho_at_epsilon_2": steps}),
        gap,
    )
}

fn fig3_peak_order() -> Check {
    let eps = [1.0, 2.0, 4.0, 8.0];
    let gap = eps
        .iter()
        .map(|&e| find_m_max(0.1, &ep(e, 10.0), Statistics::Boson))
        .collect::<Result<Vec<_>>>()
        .map(|peaks| {
            peaks
                .windows(2)
                .map(|w| w[1].entropy_bits - w[0].entropy_bits)
                .fold(f64::INFINITY, f64::min)
        });
    positive_gap(
        "fig3_peak_entropy_increases_with_epsilon",
        json!({"k": 0.1, "rho": 10, "epsilon": eps}),
        gap,
    )
}

fn gamma_vs_ode() -> Check {
    let worst = max_of(
        reference_grid(Spin::Zero)
            .par_iter()
            .map(|(p, mode)| {
                let s = IntegrationSettings::for_expansion(p)?;
                let ode = boson_coefficients_ode(p, mode, &s)?.mixing_ratio();
                Ok((ode - canonical_boson_coefficients(p, mode)?.mixing_ratio()).abs())
            })
            .collect::<Vec<_>>(),
    );
    bounded("gamma_vs_ode_mixing_ratio", grid_params(), json!(0.0), worst, 1e-6)
}

fn ode_normalization(stats: Statistics) -> Check {
    let (spin, name) = match stats {
        Statistics::Boson => (Spin::Zero, "ode_boson_normalization"),
        Statistics::Fermion => (Spin::Half, "ode_fermion_normalization"),
    };
    let worst = max_of(
        reference_grid(spin)
            .par_iter()
            .map(|(p, mode)| {
                let s = IntegrationSettings::for_expansion(p)?;
                match stats {
                    Statistics::Boson => Ok(boson_coefficients_ode(p, mode, &s)?.normalization_defect()),
                    Statistics::Fermion => {
                        // Raw spinor norm before the extraction renormalizes.
                        let raw = integrate_fermion_system(p, mode, &s)?.norm_sqr().unwrap_or(f64::NAN);
                        let defect = fermion_coefficients_ode(p, mode, &s)?.normalization_defect();
                        Ok((raw - 1.0).abs().max(defect))
                    }
                }
            })
            .collect::<Vec<_>>(),
    );
    bounded(name, grid_params(), json!(0.0), worst, 1e-8)
}

fn fermion_null_results() -> Check {
    let worst = max_of([
        entropy(2.0, 2.0, 0.0, 0.5, Spin::Half),
        entropy(2.0, 2.0, 0.0, 2.0, Spin::Half),
        entropy(0.0, 1.0, 1.0, 0.5, Spin::Half),
        entropy(2.0, 2.0, 1.0, 0.0, Spin::Half),
    ]);
    bounded(
        "fermion_null_entropy",
        json!({"cases": "m=0 at k in {0.5, 2}; epsilon=0 at rho=1; k=0", "base": {"epsilon": 2, "rho": 2, "m": 1, "k": 0.5}}),
        json!(0.0),
        worst,
        1e-8,
    )
}

fn fermion_k_opt() -> Check {
    let p = ep(2.0, 2.0);
    // Margin by which the weakest of the three conditions holds.
    let margin = (|| {
        let peak = find_k_opt_fermion(1.0, &p)?;
        let s_far = entropy(2.0, 2.0, 1.0, 20.0 * peak.location, Spin::Half)?;
        let s_zero = entropy(2.0, 2.0, 1.0, 0.0, Spin::Half)?;
        Ok((peak.entropy_bits - 0.01)
            .min(0.05 * peak.entropy_bits - s_far)
            .min(1e-8 - s_zero)
            .min(peak.location))
    })();
    positive_gap(
        "fermion_k_opt",
        json!({"m": 1, "epsilon": 2, "rho": 2, "conditions": "k_opt > 0, S(k_opt) > 0.01, S(20 k_opt) < 0.05 S(k_opt), S(0) < 1e-8"}),
        margin,
    )
}

fn mode_function_vs_ode() -> Check {
    let p = ep(1.0, 1.0);
    let worst = (|| {
        let mode = md(1.0, 0.5, Spin::Zero)?;
        let s = IntegrationSettings::for_expansion(&p)?;
        let t = s.t_span();
        let etas: Vec<f64> = (0..200).map(|j| -t + 2.0 * t * j as f64 / 199.0).collect();
        let states = integrate_boson_trajectory(&p, &mode, &s, &etas)?;
        // The integrator carries the 1/√(2ω_past) normalization.
        let scale = (2.0 * (1.0f64 + 0.25).sqrt()).sqrt();
        max_of(etas.iter().zip(&states).map(|(&eta, st)| {
            let ModeState::Boson { value, .. } = *st else {
                return Err(Error::Precondition("boson trajectory expected".into()));
            };
            Ok((analytic_mode_function(&p, &mode, eta)? - value * scale).norm())
        }))
    })();
    bounded(
        "analytic_mode_function_vs_ode",
        json!({"m": 1, "k": 0.5, "epsilon": 1, "rho": 1, "points": 200}),
        json!(0.0),
        worst,
        1e-6,
    )
}

fn ode_convergence() -> Check {
    let cases = [(2.0, 2.0, 1.0, 0.5), (0.5, 0.5, 0.2, 2.0), (8.0, 10.0, 5.0, 10.0)];
    let worst = max_of(cases.iter().flat_map(|&(e, r, m, k)| {
        [Spin::Zero, Spin::Half].into_iter().map(move |spin| {
            let p = ep(e, r);
            let mode = md(m, k, spin)?;
            let base = IntegrationSettings::for_expansion(&p)?;
            let coarse = base.with_tolerances(2.0 * base.rel_tol(), 2.0 * base.abs_tol())?;
            let longer = base.with_t_span(1.25 * base.t_span())?;
            let beta_sq = |s: &IntegrationSettings| -> Result<f64> {
                let c = match spin.statistics() {
                    Statistics::Boson => boson_coefficients_ode(&p, &mode, s)?,
                    Statistics::Fermion => fermion_coefficients_ode(&p, &mode, s)?,
                };
                Ok(c.beta().norm_sqr())
            };
            let b0 = beta_sq(&base)?;
            // Tolerance halving must move |β|² by < 1e-8, a longer window by < 1e-7.
            let d_tol = (beta_sq(&coarse)? - b0).abs() / 1e-8;
            let d_t = (beta_sq(&longer)? - b0).abs() / 1e-7;
            Ok(d_tol.max(d_t))
        })
    }));
    bounded(
        "ode_convergence",
        json!({"cases": cases, "actual": "max(|d|beta|^2| / 1e-8 under tolerance halving, |d|beta|^2| / 1e-7 under T -> 1.25 T)"}),
        json!(0.0),
        worst,
        1.0,
    )
}
