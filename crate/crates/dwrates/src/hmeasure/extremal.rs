//! Extremal-length rules used to estimate harmonic measure.

use super::HmError;
use crate::quad::adaptive_simpson;
use std::f64::consts::PI;

/// Extremal distance between the vertical sides of an `a x b` rectangle:
/// `a / b`.
pub fn extremal_rectangle(a: f64, b: f64) -> Result<f64, HmError> {
    if !(a > 0.0 && b > 0.0) {
        return Err(HmError::Domain(format!("rectangle sides must be positive, got {a} x {b}")));
    }
    Ok(a / b)
}

/// Serial rule: concatenated rectangle modules sum to a lower bound for the
/// extremal distance across the whole chain.
pub fn serial_lower_bound(pieces: &[(f64, f64)]) -> Result<f64, HmError> {
    let mut sum = 0.0;
    for &(a, b) in pieces {
        if a < 0.0 || b <= 0.0 {
            return Err(HmError::Domain(format!("invalid serial piece ({a}, {b})")));
        }
        sum += a / b;
    }
    Ok(sum)
}

/// Beurling estimate: `omega <= (8/pi) exp(-pi * lambda_ext)`.
pub fn beurling_upper(lambda_ext: f64) -> Result<f64, HmError> {
    if lambda_ext < 0.0 {
        return Err(HmError::Domain(format!(
            "extremal distance must be nonnegative, got {lambda_ext}"
        )));
    }
    Ok(8.0 / PI * (-PI * lambda_ext).exp())
}

/// Module of the strip `{x0 < Re < x1, 0 < Im < theta(Re)}` across its
/// vertical sides: `int_{x0}^{x1} ds / theta(s)` by adaptive quadrature
/// (absolute tolerance 1e-9).
pub fn strip_module(theta: &dyn Fn(f64) -> f64, x0: f64, x1: f64) -> Result<f64, HmError> {
    if !(x1 > x0) {
        return Err(HmError::Domain(format!("empty interval [{x0}, {x1}]")));
    }
    // Positivity sampled up front so the failure is a clean error rather
    // than a wild quadrature value.
    for k in 0..=256 {
        let s = x0 + (x1 - x0) * k as f64 / 256.0;
        if !(theta(s) > 0.0) {
            return Err(HmError::Domain(format!("theta({s}) = {} is not positive", theta(s))));
        }
    }
    Ok(adaptive_simpson(&|s| 1.0 / theta(s), x0, x1, 1e-9, 40))
}
