use super::{finite, log_gamma, ComplexVal};
use crate::error::{Error, Result};

const MAX_TERMS: usize = 1_000_000;
const TERM_RTOL: f64 = 1e-16;
const QUIET_TERMS: usize = 3;
const INTEGER_EPS: f64 = 1e-14;

/// Gauss hypergeometric function `₂F₁(a, b; c; z)` for real `0 <= z < 1`.
///
/// The Gauss series is summed directly for `z <= 1/2`. Above that the
/// `z → 1 − z` connection formula is used, which needs `c − a − b` to be
/// non-integer. For the mode functions of the tanh expansion this difference
/// is `±iω/ρ`: purely imaginary and nonzero.
pub fn hyp2f1(a: ComplexVal, b: ComplexVal, c: ComplexVal, z: f64) -> Result<ComplexVal> {
    hyp2f1_with_complement(a, b, c, z, 1.0 - z)
}

/// [`hyp2f1`] with `1 − z` supplied by the caller, for arguments close to 1
/// where `1 − z` cannot be recovered from `z` to full relative precision.
pub(crate) fn hyp2f1_with_complement(
    a: ComplexVal,
    b: ComplexVal,
    c: ComplexVal,
    z: f64,
    w: f64,
) -> Result<ComplexVal> {
    if !(0.0..1.0).contains(&z) || !(w > 0.0 && w <= 1.0) {
        return Err(Error::Precondition(format!("hyp2f1 requires 0 <= z < 1, got {z}")));
    }
    if !(finite(a) && finite(b) && finite(c)) {
        return Err(Error::Precondition("hyp2f1 parameters must be finite".into()));
    }
    if is_non_positive_integer(c) {
        return Err(Error::Pole(format!("hyp2f1 with c = {c} a non-positive integer")));
    }
    if z == 0.0 {
        return Ok(ComplexVal::new(1.0, 0.0));
    }
    if z <= 0.5 {
        return gauss_series(a, b, c, z);
    }

    let s = c - a - b;
    if s.im.abs() < INTEGER_EPS && (s.re - s.re.round()).abs() < INTEGER_EPS {
        return Err(Error::Precondition(format!(
            "hyp2f1 connection formula needs non-integer c - a - b, got {s}"
        )));
    }
    let lg_c = log_gamma(c)?;

    // A coefficient with 1/Γ at a pole vanishes; its series is never needed.
    let first = match reciprocal_gamma_log(&[c - a, c - b])? {
        Some(lg_den) => {
            let coeff = (lg_c + log_gamma(s)? - lg_den).exp();
            coeff * gauss_series(a, b, 1.0 - s, w)?
        }
        None => ComplexVal::new(0.0, 0.0),
    };
    let second = match reciprocal_gamma_log(&[a, b])? {
        Some(lg_den) => {
            let coeff = (lg_c + log_gamma(-s)? - lg_den + s * w.ln()).exp();
            coeff * gauss_series(c - a, c - b, 1.0 + s, w)?
        }
        None => ComplexVal::new(0.0, 0.0),
    };

    let value = first + second;
    if finite(value) {
        Ok(value)
    } else {
        Err(Error::Overflow(format!("hyp2f1({a}, {b}; {c}; {z}) not representable")))
    }
}

/// Sum of `ln Γ` over `args`, or `None` when any argument is a pole.
fn reciprocal_gamma_log(args: &[ComplexVal]) -> Result<Option<ComplexVal>> {
    let mut total = ComplexVal::new(0.0, 0.0);
    for &x in args {
        if is_non_positive_integer(x) {
            return Ok(None);
        }
        total += log_gamma(x)?;
    }
    Ok(Some(total))
}

fn is_non_positive_integer(x: ComplexVal) -> bool {
    let n = x.re.round();
    n <= 0.0 && (x - n).norm() < INTEGER_EPS
}

fn gauss_series(a: ComplexVal, b: ComplexVal, c: ComplexVal, z: f64) -> Result<ComplexVal> {
    let mut term = ComplexVal::new(1.0, 0.0);
    let mut sum = term;
    let mut quiet = 0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        sum += term;
        if !finite(sum) {
            return Err(Error::NonConvergence { terms: n + 1 });
        }
        if term.norm() <= TERM_RTOL * sum.norm() {
            quiet += 1;
            if quiet == QUIET_TERMS {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergence { terms: MAX_TERMS })
}
