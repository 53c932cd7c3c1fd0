//! Dormand-Prince 5(4) with local extrapolation and FSAL.

use crate::error::{Error, Result};

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

// 5th-order weights minus embedded 4th-order weights.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const SAFETY: f64 = 0.9;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 5.0;

#[derive(Debug, Clone, Copy)]
pub(crate) struct StepControl {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub h_min: f64,
    pub h_max: f64,
    pub max_steps: usize,
}

/// Adaptive integrator state for an `N`-dimensional real system.
pub(crate) struct Dopri5<const N: usize> {
    t: f64,
    y: [f64; N],
    h: f64,
    steps: usize,
    control: StepControl,
    k1: Option<[f64; N]>,
}

fn axpy<const N: usize>(y: &[f64; N], h: f64, terms: &[(f64, &[f64; N])]) -> [f64; N] {
    let mut out = *y;
    for (i, o) in out.iter_mut().enumerate() {
        let incr: f64 = terms.iter().map(|(c, k)| c * k[i]).sum();
        *o += h * incr;
    }
    out
}

impl<const N: usize> Dopri5<N> {
    pub fn new(t0: f64, y0: [f64; N], h0: f64, control: StepControl) -> Self {
        Self {
            t: t0,
            y: y0,
            h: h0.clamp(control.h_min, control.h_max),
            steps: 0,
            control,
            k1: None,
        }
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn y(&self) -> &[f64; N] {
        &self.y
    }

    /// Integrate forward until `t == t_end` exactly.
    pub fn advance_to<F>(&mut self, rhs: &F, t_end: f64) -> Result<()>
    where
        F: Fn(f64, &[f64; N]) -> [f64; N],
    {
        let StepControl { rel_tol, abs_tol, h_min, h_max, max_steps } = self.control;
        while self.t < t_end {
            if self.steps >= max_steps {
                return Err(Error::StepLimit(max_steps));
            }
            self.steps += 1;

            let remaining = t_end - self.t;
            let clipped = self.h >= remaining;
            let h = if clipped { remaining } else { self.h };
            let (t, y) = (self.t, self.y);

            let k1 = self.k1.unwrap_or_else(|| rhs(t, &y));
            let k2 = rhs(t + C2 * h, &axpy(&y, h, &[(A21, &k1)]));
            let k3 = rhs(t + C3 * h, &axpy(&y, h, &[(A31, &k1), (A32, &k2)]));
            let k4 = rhs(t + C4 * h, &axpy(&y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
            let k5 = rhs(
                t + C5 * h,
                &axpy(&y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
            );
            let k6 = rhs(
                t + h,
                &axpy(&y, h, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]),
            );
            let y_new = axpy(
                &y,
                h,
                &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)],
            );
            let k7 = rhs(t + h, &y_new);

            let mut acc = 0.0;
            for i in 0..N {
                let e = h
                    * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i]
                        + E7 * k7[i]);
                let scale = abs_tol + rel_tol * y[i].abs().max(y_new[i].abs());
                acc += (e / scale).powi(2);
            }
            let err = (acc / N as f64).sqrt();
            if !err.is_finite() {
                return Err(Error::ToleranceFailure { eta: t });
            }

            let factor = if err == 0.0 {
                MAX_FACTOR
            } else {
                (SAFETY * err.powf(-0.2)).clamp(MIN_FACTOR, MAX_FACTOR)
            };

            if err <= 1.0 {
                self.t = if clipped { t_end } else { t + h };
                self.y = y_new;
                self.k1 = Some(k7);
                if !clipped {
                    self.h = (h * factor).clamp(h_min, h_max);
                }
            } else {
                self.k1 = Some(k1);
                if h <= h_min * (1.0 + 1e-12) {
                    return Err(Error::ToleranceFailure { eta: t });
                }
                self.h = (h * factor.min(1.0)).max(h_min);
            }
        }
        Ok(())
    }
}
