//! The closed-form in-mode against the integrated mode across the window.

use frw_entanglement::modesolver::{analytic_mode_function, integrate_boson_trajectory};
use frw_entanglement::{ExpansionParams, IntegrationSettings, ModeParams, ModeState, Spin};

fn main() -> frw_entanglement::Result<()> {
    let p = ExpansionParams::new(1.0, 1.0)?;
    let mode = ModeParams::new(1.0, 0.5, Spin::Zero)?;
    let s = IntegrationSettings::for_expansion(&p)?;
    let t = s.t_span();
    let etas: Vec<f64> = (0..=12).map(|j| -t + 2.0 * t * j as f64 / 12.0).collect();
    let states = integrate_boson_trajectory(&p, &mode, &s, &etas)?;
    // The integrator starts from e^{-iωη}/√(2ω); the closed form from e^{-iωη}.
    let scale = (2.0 * 1.25f64.sqrt()).sqrt();

    println!("{:>8}  {:>24}  {:>10}", "eta", "closed form", "|diff|");
    for (eta, state) in etas.iter().zip(&states) {
        let ModeState::Boson { value, .. } = *state else { unreachable!() };
        let exact = analytic_mode_function(&p, &mode, *eta)?;
        println!("{eta:>8.3}  {exact:>24.10}  {:>10.2e}", (exact - scale * value).norm());
    }
    Ok(())
}
