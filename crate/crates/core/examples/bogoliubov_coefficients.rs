//! Bosonic Bogoliubov coefficients three ways: the raw Γ-function pair, the
//! normalized pair, and direct integration of the mode equation.

use frw_entanglement::modesolver::{boson_coefficients_ode, fermion_coefficients_ode};
use frw_entanglement::{
    canonical_boson_coefficients, mixing_ratio_x, paper_alpha_beta, ExpansionParams,
    IntegrationSettings, ModeParams, Spin,
};

fn main() -> frw_entanglement::Result<()> {
    let p = ExpansionParams::new(1.5, 1.0)?;
    let mode = ModeParams::new(1.0, 0.0, Spin::Zero)?;

    let (first, second) = paper_alpha_beta(&p, &mode)?;
    println!("raw pair:      {first:.6}  {second:.6}");
    println!("  |first|² - |second|² = {:.12}", first.norm_sqr() - second.norm_sqr());

    let canonical = canonical_boson_coefficients(&p, &mode)?;
    println!("canonical:     α = {:.12}  β = {:.12}", canonical.alpha(), canonical.beta());
    println!("  |α|² - |β|² - 1 = {:.2e}", canonical.normalization_defect());

    let settings = IntegrationSettings::for_expansion(&p)?;
    let ode = boson_coefficients_ode(&p, &mode, &settings)?;
    println!("integrated:    α = {:.12}  β = {:.12}", ode.alpha(), ode.beta());

    println!("x (Γ)    = {:.15e}", canonical.mixing_ratio());
    println!("x (sinh) = {:.15e}", mixing_ratio_x(&p, &mode));
    println!("x (ODE)  = {:.15e}", ode.mixing_ratio());

    let fermion = fermion_coefficients_ode(&p, &ModeParams::new(1.0, 1.0, Spin::Half)?, &settings)?;
    println!("fermion k=1: |α|² + |β|² = {:.15}, x = {:.6e}", fermion.alpha().norm_sqr() + fermion.beta().norm_sqr(), fermion.mixing_ratio());
    Ok(())
}
