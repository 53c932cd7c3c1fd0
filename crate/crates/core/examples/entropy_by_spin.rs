//! Entanglement entropy for each spin. Only the statistics matter.

use frw_entanglement::entanglement::{entropy_direct, schmidt_spectrum, default_n_max};
use frw_entanglement::{entropy_for_mode, ExpansionParams, ModeParams, Spin};

fn main() -> frw_entanglement::Result<()> {
    let p = ExpansionParams::new(2.0, 2.0)?;
    println!("{:>4}  {:>9}  {:>12}  {:>12}  {:>12}", "k", "spin", "x", "S (bits)", "direct sum");
    for k in [0.0, 0.5, 1.0, 2.0] {
        for spin in Spin::ALL {
            let r = entropy_for_mode(&p, &ModeParams::new(1.0, k, spin)?, None)?;
            let direct = entropy_direct(&schmidt_spectrum(r.x, r.statistics, default_n_max(r.x))?);
            println!(
                "{k:>4}  {:>9}  {:>12.6e}  {:>12.9}  {:>12.9}",
                spin.label(),
                r.x,
                r.entropy_bits,
                direct.entropy_bits
            );
        }
    }
    Ok(())
}
