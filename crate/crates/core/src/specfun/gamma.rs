use std::f64::consts::{FRAC_PI_2, LN_2, PI};

use super::{finite, ComplexVal};
use crate::error::{Error, Result};

/// Lanczos parameter for the 15-term coefficient set below.
const LANCZOS_G: f64 = 607.0 / 128.0;

/// Godfrey's coefficients for `g = 607/128`.
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 15] = [
    0.999_999_999_999_997_091_82,
    57.156_235_665_862_923_517,
    -59.597_960_355_475_491_248,
    14.136_097_974_741_747_174,
    -0.491_913_816_097_620_199_78,
    0.339_946_499_848_118_886_99e-4,
    0.465_236_289_270_485_756_65e-4,
    -0.983_744_753_048_795_646_77e-4,
    0.158_088_703_224_912_488_84e-3,
    -0.210_264_441_724_104_883_19e-3,
    0.217_439_618_115_212_643_20e-3,
    -0.164_318_106_536_763_890_22e-3,
    0.844_182_239_838_527_432_93e-4,
    -0.261_908_384_015_814_086_70e-4,
    0.368_991_826_595_316_227_04e-5,
];

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Distance from a non-positive integer below which `log_gamma` reports a pole.
const POLE_EPS: f64 = 1e-14;

/// Principal branch of `ln Γ(z)`.
///
/// Uses the Lanczos approximation on `Re z >= 1/2` and the reflection formula
/// elsewhere. The reflection uses a form of `ln sin(πz)` that is analytic in
/// the upper half-plane, so the result is continuous away from the negative
/// real axis and no branch bookkeeping is needed.
pub fn log_gamma(z: ComplexVal) -> Result<ComplexVal> {
    if !finite(z) {
        return Err(Error::Domain(format!("log_gamma of non-finite argument {z}")));
    }
    let nearest = z.re.round();
    if nearest <= 0.0 && (z - nearest).norm() < POLE_EPS {
        return Err(Error::Pole(format!("log_gamma at non-positive integer {nearest}")));
    }

    let value = if z.re >= 0.5 {
        lanczos_log_gamma(z)
    } else if z.im >= 0.0 {
        reflected(z)
    } else {
        reflected(z.conj()).conj()
    };

    if finite(value) {
        Ok(value)
    } else {
        Err(Error::Overflow(format!("log_gamma({z}) is not representable")))
    }
}

fn lanczos_log_gamma(z: ComplexVal) -> ComplexVal {
    let sum = LANCZOS_COEFFS[1..]
        .iter()
        .enumerate()
        .rev()
        .fold(ComplexVal::new(LANCZOS_COEFFS[0], 0.0), |acc, (i, &c)| {
            acc + c / (z + (i + 1) as f64)
        });
    let t = z + LANCZOS_G + 0.5;
    (z + 0.5) * t.ln() - t + HALF_LN_2PI + sum.ln() - z.ln()
}

/// `ln Γ(z) = ln π − ln sin(πz) − ln Γ(1 − z)` for `Im z >= 0`, `Re z < 1/2`.
fn reflected(z: ComplexVal) -> ComplexVal {
    ComplexVal::new(PI.ln(), 0.0) - log_sin_pi_upper(z) - lanczos_log_gamma(1.0 - z)
}

/// `ln sin(πz)` continued analytically through the closed upper half-plane:
/// `sin(πz) = (i/2) e^{-iπz} (1 − e^{2iπz})` with `|e^{2iπz}| <= 1`.
fn log_sin_pi_upper(z: ComplexVal) -> ComplexVal {
    // e^{2iπz} is 1-periodic in Re z; reduce first to keep the phase accurate.
    let frac = z.re - z.re.round();
    let radius = (-2.0 * PI * z.im).exp();
    let (s, c) = (2.0 * PI * frac).sin_cos();
    let one_minus_w = ComplexVal::new(1.0 - radius * c, -radius * s);
    ComplexVal::new(-LN_2 + PI * z.im, FRAC_PI_2 - PI * z.re) + one_minus_w.ln()
}

/// `ln(sinh y)` for `y > 0`, without overflow for large `y`.
pub fn log_sinh(y: f64) -> Result<f64> {
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::Domain(format!("log_sinh requires finite y > 0, got {y}")));
    }
    Ok(y + (-(-2.0 * y).exp_m1()).ln() - LN_2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> ComplexVal {
        ComplexVal::new(re, im)
    }

    #[test]
    fn integer_values() {
        assert!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-15);
        assert!(log_gamma(c(2.0, 0.0)).unwrap().norm() < 1e-15);
        let v = log_gamma(c(5.0, 0.0)).unwrap();
        assert!((v.re - 24f64.ln()).abs() < 1e-13 * 24f64.ln());
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn half_integer() {
        let v = log_gamma(c(0.5, 0.0)).unwrap();
        assert!((v.re - 0.5 * PI.ln()).abs() < 1e-14);
    }

    #[test]
    fn imaginary_axis_modulus() {
        // |Γ(iy)|² = π / (y sinh πy)
        let y = 2.0;
        let v = log_gamma(c(0.0, y)).unwrap();
        let expected = PI / (y * (PI * y).sinh());
        assert!(((2.0 * v.re).exp() - expected).abs() < 1e-12 * expected);
    }

    #[test]
    fn negative_real_axis() {
        // Γ(-1/2) = -2√π; the principal branch approached from above has Im = -π.
        let v = log_gamma(c(-0.5, 0.0)).unwrap();
        assert!((v.re - (2.0 * PI.sqrt()).ln()).abs() < 1e-14);
        assert!((v.im + PI).abs() < 1e-14);
    }

    #[test]
    fn poles() {
        for n in [0.0, -1.0, -7.0, -50.0] {
            assert!(matches!(log_gamma(c(n, 0.0)), Err(Error::Pole(_))));
        }
        assert!(matches!(log_gamma(c(-3.0 + 1e-15, 0.0)), Err(Error::Pole(_))));
        assert!(log_gamma(c(-3.0 + 1e-10, 0.0)).is_ok());
    }

    #[test]
    fn non_finite_rejected() {
        assert!(log_gamma(c(f64::NAN, 0.0)).is_err());
        assert!(log_gamma(c(1.0, f64::INFINITY)).is_err());
    }

    #[test]
    fn conjugate_symmetry() {
        for &(re, im) in &[(0.3, 2.0), (-4.7, 0.2), (12.0, -30.0), (-20.5, 100.0)] {
            let a = log_gamma(c(re, im)).unwrap();
            let b = log_gamma(c(re, -im)).unwrap();
            assert!((a - b.conj()).norm() < 1e-12 * a.norm().max(1.0));
        }
    }

    #[test]
    fn log_sinh_values() {
        assert!((log_sinh(LN_2).unwrap() - 0.75f64.ln()).abs() < 1e-15);
        assert!((log_sinh(1000.0).unwrap() - (1000.0 - LN_2)).abs() < 1e-15 * 1000.0);
        assert!((log_sinh(1e6).unwrap() - (1e6 - LN_2)).abs() <= 1e-9);
        let sinh_series: f64 = (0..10)
            .map(|n| {
                let p = 2 * n + 1;
                0.1f64.powi(p) / (1..=p).map(f64::from).product::<f64>()
            })
            .sum();
        assert!((log_sinh(0.1).unwrap() - sinh_series.ln()).abs() < 1e-15);
        assert!(matches!(log_sinh(0.0), Err(Error::Domain(_))));
        assert!(matches!(log_sinh(-1.0), Err(Error::Domain(_))));
    }
}
