//! Complex log-gamma, log-sinh and the Gauss hypergeometric function.

use frw_entanglement::specfun::{hyp2f1, log_gamma, log_sinh};
use frw_entanglement::ComplexVal;
use std::f64::consts::PI;

fn main() -> frw_entanglement::Result<()> {
    for z in [ComplexVal::new(0.5, 0.0), ComplexVal::new(0.0, 2.0), ComplexVal::new(-7.3, 0.4), ComplexVal::new(3.0, 1e4)] {
        println!("ln Γ({z}) = {}", log_gamma(z)?);
    }

    // |Γ(iy)|² = π / (y sinh πy), evaluated without overflow at large y.
    for y in [1.0, 50.0, 300.0] {
        let lhs = 2.0 * log_gamma(ComplexVal::new(0.0, y))?.re;
        let rhs = PI.ln() - f64::ln(y) - log_sinh(PI * y)?;
        println!("y = {y:>5}: ln|Γ(iy)|² = {lhs:.15}  closed form {rhs:.15}");
    }

    let one = ComplexVal::new(1.0, 0.0);
    for z in [0.1, 0.25, 0.5] {
        let f = hyp2f1(one, one, 2.0 * one, z)?;
        println!("2F1(1,1;2;{z}) = {:.15}  -ln(1-z)/z = {:.15}", f.re, -f64::ln_1p(-z) / z);
    }

    // Above z = 1/2 the series is replaced by the 1 - z connection formula.
    let (a, b) = (ComplexVal::new(0.3, 0.7), ComplexVal::new(1.2, -0.4));
    for z in [0.7, 0.9, 0.999] {
        let f = hyp2f1(a, b, b, z)?;
        let exact = (-a * f64::ln_1p(-z)).exp();
        println!("2F1(a,b;b;{z}) = {f:.15}  (1-z)^-a = {exact:.15}");
    }
    Ok(())
}
