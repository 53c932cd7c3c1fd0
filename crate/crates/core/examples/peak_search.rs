//! Mass that maximizes the bosonic entropy, and the fermionic momentum optimum.

use frw_entanglement::entanglement::{find_k_opt_fermion, find_m_max};
use frw_entanglement::{ExpansionParams, Statistics};

fn main() -> frw_entanglement::Result<()> {
    let p = ExpansionParams::new(2.0, 2.0)?;
    for k in [0.1, 0.5, 1.0, 2.0] {
        let peak = find_m_max(k, &p, Statistics::Boson)?;
        println!("boson   k = {k:<4} m_max = {:.6}  S = {:.6} bits", peak.location, peak.entropy_bits);
    }
    for eps in [1.0, 2.0, 4.0, 8.0] {
        let peak = find_m_max(0.1, &ExpansionParams::new(eps, 10.0)?, Statistics::Boson)?;
        println!("boson   eps = {eps:<3} rho = 10  m_max = {:.6}  S = {:.6} bits", peak.location, peak.entropy_bits);
    }
    let opt = find_k_opt_fermion(1.0, &p)?;
    println!("fermion m = 1  k_opt = {:.6}  S = {:.6} bits", opt.location, opt.entropy_bits);
    Ok(())
}
