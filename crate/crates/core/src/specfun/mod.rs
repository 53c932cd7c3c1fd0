//! Complex special functions used by the closed-form coefficients and the
//! analytic mode functions.
//!
//! Everything here is a pure function of its arguments. Results are always
//! finite; anything else is reported through [`Error`](crate::Error).

mod gamma;
mod hypergeometric;

pub use gamma::{log_gamma, log_sinh};
pub use hypergeometric::hyp2f1;
pub(crate) use hypergeometric::hyp2f1_with_complement;

/// Complex scalar used throughout the crate.
pub type ComplexVal = num_complex::Complex64;

pub(crate) fn finite(z: ComplexVal) -> bool {
    z.re.is_finite() && z.im.is_finite()
}
