use serde::{Deserialize, Serialize};

use super::OneDimError;
use crate::cx::C64;

/// Escape rate of the critical orbit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GreenEstimate {
    pub value: f64,
    pub iterations: usize,
    /// Bound on the truncation error of `value`.
    pub error: f64,
}

pub const GREEN_BAILOUT: f64 = 1e8;
pub const GREEN_ITERATIONS: usize = 1000;

/// `h(a) = lim 2^{−n} log|gⁿ(a)|`, the escape rate of the critical value.
///
/// Normalised so that `h(a) − log|a| → 0` as `|a| → ∞`. Zero when the orbit
/// stays below the bailout for the whole budget.
pub fn critical_green_h(a: C64) -> GreenEstimate {
    critical_green_h_with(a, GREEN_BAILOUT, GREEN_ITERATIONS)
}

pub fn critical_green_h_with(a: C64, bailout: f64, budget: usize) -> GreenEstimate {
    let mut w = a;
    let mut n = 0;
    while w.norm() <= bailout {
        if n == budget {
            return GreenEstimate {
                value: 0.0,
                iterations: n,
                error: 0.0,
            };
        }
        w = w * w + a;
        n += 1;
    }
    // a few extra squarings shrink the neglected tail log|1 + a/w²|
    let mut scale = 0.5f64.powi(n as i32);
    let mut log_w = w.norm().ln();
    for _ in 0..3 {
        let next = w * w + a;
        if !next.norm().is_finite() {
            break;
        }
        w = next;
        log_w = w.norm().ln();
        scale *= 0.5;
        n += 1;
    }
    let tail = a.norm() / w.norm_sqr();
    GreenEstimate {
        value: scale * log_w,
        iterations: n,
        error: scale * 2.0 * tail,
    }
}

/// Circulation of `d^c h` around `|a| = radius`, normalised so the
/// circulation of `d^c log|a|` is `2π`.
pub fn theta_loop_integral(radius: f64, samples: usize) -> Result<f64, OneDimError> {
    if radius <= 2.0 {
        return Err(OneDimError::RadiusTooSmall(radius));
    }
    theta_loop_integral_with(radius, samples, |a| critical_green_h(a).value)
}

/// The same integral for an arbitrary potential `h`: the outward normal
/// derivative by centred differences, integrated by the trapezoid rule.
pub fn theta_loop_integral_with(
    radius: f64,
    samples: usize,
    h: impl Fn(C64) -> f64,
) -> Result<f64, OneDimError> {
    let samples = samples.max(4);
    let delta = 1e-5 * radius;
    let dtheta = std::f64::consts::TAU / samples as f64;
    let mut total = 0.0;
    for k in 0..samples {
        let dir = C64::from_polar(1.0, k as f64 * dtheta);
        let outer = dir * (radius + delta);
        let inner = dir * (radius - delta);
        let (ho, hi) = (h(outer), h(inner));
        if !ho.is_finite() || !hi.is_finite() {
            return Err(OneDimError::NonFinite(dir * radius));
        }
        total += (ho - hi) / (2.0 * delta) * radius * dtheta;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cx::{c, real};
    use std::f64::consts::TAU;

    #[test]
    fn large_parameter_matches_log_modulus() {
        let h = critical_green_h(real(1000.0));
        assert!((h.value - 1000f64.ln()).abs() < 1e-3);
        // exact first correction: ½·log(1 + 1/a)
        assert!((h.value - 1000f64.ln() - 0.5 * (1.0 + 1e-3f64).ln()).abs() < 1e-6);
    }

    #[test]
    fn bounded_orbit_gives_zero() {
        assert_eq!(critical_green_h(real(0.0)).value, 0.0);
        assert!(critical_green_h(real(-3.0)).value > 0.0);
    }

    #[test]
    fn theta_of_log_modulus_and_constant() {
        let t = theta_loop_integral_with(3.0, 512, |a| a.norm().ln()).unwrap();
        assert!((t - TAU).abs() < 1e-6);
        let z = theta_loop_integral_with(3.0, 512, |_| 1.5).unwrap();
        assert_eq!(z, 0.0);
    }

    #[test]
    fn theta_rejects_small_radius_and_nan() {
        assert!(theta_loop_integral(1.5, 64).is_err());
        assert!(theta_loop_integral_with(3.0, 64, |_| f64::NAN).is_err());
    }

    #[test]
    fn h_is_conjugation_symmetric() {
        for &a in &[c(-2.5, 0.7), c(0.4, 0.6), c(3.0, -4.0)] {
            assert_eq!(critical_green_h(a).value, critical_green_h(a.conj()).value);
        }
    }
}
