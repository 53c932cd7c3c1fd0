//! Peak location in mass and momentum by golden-section search.
//!
//! The entropy curves are single-peaked in practice but nothing guarantees
//! it, so the bracket is found on a geometric grid and checked before the
//! search starts.

use super::{entropy_for_mode, Statistics};
use crate::cosmology::{ExpansionParams, ModeParams, Spin};
use crate::error::{Error, Result};

/// Lower end of the mass search interval.
pub const M_SEARCH_FLOOR: f64 = 1e-4;
/// Absolute tolerance on the located argument.
pub const SEARCH_TOL: f64 = 1e-6;

const K_SEARCH_START: f64 = 1e-3;
const MAX_DOUBLINGS: usize = 64;
/// Grid points past the first decrease that must keep decreasing.
const TAIL_CHECKS: usize = 3;

const INV_PHI: f64 = 0.618_033_988_749_894_8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    /// Maximizing mass or momentum.
    pub location: f64,
    pub entropy_bits: f64,
}

/// Maximize `f` on `[lo, hi]` to absolute tolerance `tol` in the argument.
pub fn golden_section_max<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(lo < hi) || !(tol > 0.0) {
        return Err(Error::Precondition(format!("bad golden-section interval [{lo}, {hi}]")));
    }
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    while b - a > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d)?;
        }
    }
    Ok(if fc >= fd { (c, fc) } else { (d, fd) })
}

/// Walk `start · 2^j` upward until the curve first decreases, then return a
/// bracket `[a, b]` around the grid maximum. `floor` is the left end used
/// when the maximum is the first grid point.
fn geometric_bracket<F>(f: &mut F, floor: f64, start: f64, what: &str) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut grid = vec![start];
    let mut values = vec![f(start)?];
    loop {
        if grid.len() > MAX_DOUBLINGS {
            return Err(Error::Bracketing(format!("{what}: entropy still rising at {}", grid[grid.len() - 1])));
        }
        let next = 2.0 * grid[grid.len() - 1];
        let value = f(next)?;
        grid.push(next);
        values.push(value);
        let n = values.len();
        if values[n - 1] < values[n - 2] {
            break;
        }
    }
    let top = values.len() - 2;
    if !(values[top] > 0.0) {
        return Err(Error::NoInteriorMaximum(format!("{what}: entropy vanishes on the search grid")));
    }
    let mut last = values[values.len() - 1];
    let mut at = grid[grid.len() - 1];
    for _ in 0..TAIL_CHECKS {
        at *= 2.0;
        let value = f(at)?;
        if value > last {
            return Err(Error::Bracketing(format!(
                "{what}: entropy rises again at {at} after peaking near {}",
                grid[top]
            )));
        }
        last = value;
    }
    let a = if top == 0 { floor } else { grid[top - 1] };
    Ok((a, grid[top + 1]))
}

fn spin_for(statistics: Statistics) -> Spin {
    match statistics {
        Statistics::Boson => Spin::One,
        Statistics::Fermion => Spin::Half,
    }
}

/// Mass that maximizes the entropy at fixed momentum.
pub fn find_m_max(k: f64, p: &ExpansionParams, statistics: Statistics) -> Result<Peak> {
    if !(p.epsilon() > 0.0 && p.rho() > 0.0) {
        return Err(Error::Precondition("m_max search needs epsilon > 0 and rho > 0".into()));
    }
    let spin = spin_for(statistics);
    let mut entropy = |m: f64| -> Result<f64> {
        let mode = ModeParams::new(m, k, spin)?;
        Ok(entropy_for_mode(p, &mode, None)?.entropy_bits)
    };
    let (a, b) = geometric_bracket(&mut entropy, M_SEARCH_FLOOR, M_SEARCH_FLOOR, "m_max")?;
    let (location, entropy_bits) = golden_section_max(&mut entropy, a, b, SEARCH_TOL)?;
    Ok(Peak { location, entropy_bits })
}

/// Momentum that maximizes the fermionic entropy at fixed mass.
pub fn find_k_opt_fermion(m: f64, p: &ExpansionParams) -> Result<Peak> {
    if !(m > 0.0) {
        return Err(Error::NoInteriorMaximum("massless fermions are never entangled".into()));
    }
    if !(p.epsilon() > 0.0 && p.rho() > 0.0) {
        return Err(Error::Precondition("k_opt search needs epsilon > 0 and rho > 0".into()));
    }
    let mut entropy = |k: f64| -> Result<f64> {
        let mode = ModeParams::new(m, k, Spin::Half)?;
        Ok(entropy_for_mode(p, &mode, None)?.entropy_bits)
    };
    let (a, b) = geometric_bracket(&mut entropy, 0.0, K_SEARCH_START, "k_opt")?;
    let (location, entropy_bits) = golden_section_max(&mut entropy, a, b, SEARCH_TOL)?;
    Ok(Peak { location, entropy_bits })
}
