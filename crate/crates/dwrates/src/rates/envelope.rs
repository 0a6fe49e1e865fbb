//! Envelope evaluators for the two constructed-domain examples whose orbits
//! have no closed-form Riemann map; only their bound envelopes are
//! reproducible at desk scale.

use super::RateError;
use crate::hmeasure::strip_module;
use std::f64::consts::PI;

/// Value of a forward-orbit envelope together with the extremal-length
/// certificate residual `|strip_module - (f(t) - f(x0)) / pi|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeValue {
    pub value: f64,
    pub extremal_certificate: f64,
}

fn check_f_shape(f: &dyn Fn(f64) -> f64, hi: f64) -> Result<(), RateError> {
    let n = 64;
    let h = hi / n as f64;
    let mut prev = f(0.0);
    let mut prev_diff = None;
    for k in 1..=n {
        let v = f(k as f64 * h);
        let diff = v - prev;
        if diff <= 0.0 {
            return Err(RateError::Shape(format!("f not increasing near {}", k as f64 * h)));
        }
        if let Some(pd) = prev_diff {
            if diff > pd + 1e-9 * (1.0 + pd) {
                return Err(RateError::Shape(format!("f not concave near {}", k as f64 * h)));
            }
        }
        prev_diff = Some(diff);
        prev = v;
    }
    // Sublinearity f(t)/t -> 0: over four doublings the ratio must both
    // decrease monotonically and lose at least ten percent overall.
    let base = hi.max(8.0);
    let first = f(base) / base;
    let mut prev_ratio = first;
    for k in 1..=4 {
        let s = base * (2f64).powi(k);
        let ratio = f(s) / s;
        if ratio >= prev_ratio {
            return Err(RateError::Shape(format!("f(t)/t not decaying at t = {s}")));
        }
        prev_ratio = ratio;
    }
    if prev_ratio > 0.9 * first {
        return Err(RateError::Shape("f(t)/t decays too slowly to vanish".into()));
    }
    Ok(())
}

/// Forward lower-bound sharpness envelope
/// `16 exp(f(Re h(0))) exp(-f(t))` for an increasing concave `f` with
/// `f(t)/t -> 0`. The extremal-length step is certified by comparing
/// `strip_module` with `theta = pi / f'` against `(f(t) - f(x0)) / pi`.
pub fn envelope_forward_lower(
    f: &dyn Fn(f64) -> f64,
    re_h0: f64,
    t: f64,
) -> Result<EnvelopeValue, RateError> {
    if !(t > 0.0) {
        return Err(RateError::Param(format!("t must be positive, got {t}")));
    }
    if !(re_h0 >= 0.0 && re_h0 < t) {
        return Err(RateError::Param(format!("need 0 <= Re h(0) < t, got {re_h0}")));
    }
    check_f_shape(f, t)?;
    let value = 16.0 * (f(re_h0) - f(t)).exp();
    let fprime = |s: f64| {
        let h = 1e-5 * (1.0 + s.abs());
        (f(s + h) - f(s - h)) / (2.0 * h)
    };
    let theta = |s: f64| PI / fprime(s);
    let module = strip_module(&theta, re_h0, t)?;
    let extremal_certificate = (module - (f(t) - f(re_h0)) / PI).abs();
    Ok(EnvelopeValue {
        value,
        extremal_certificate,
    })
}

/// Non-regular backward-orbit envelope
/// `2 K (1+|z|)/(1-|z|) sqrt(theta(Re h(z) - t) / t)` for an increasing
/// positive profile `theta`.
pub fn envelope_nonregular(
    theta: &dyn Fn(f64) -> f64,
    big_k: f64,
    z_abs: f64,
    re_hz: f64,
    t: f64,
) -> Result<f64, RateError> {
    if !(t > 0.0) {
        return Err(RateError::Param(format!("t must be positive, got {t}")));
    }
    if !(big_k > 0.0) {
        return Err(RateError::Param(format!("K must be positive, got {big_k}")));
    }
    if !(0.0..1.0).contains(&z_abs) {
        return Err(RateError::Param(format!("|z| must lie in [0, 1), got {z_abs}")));
    }
    // theta increasing and positive, sampled over the traversed range.
    let mut prev = f64::NEG_INFINITY;
    for k in 0..=64 {
        let s = re_hz - t + t * k as f64 / 64.0;
        let v = theta(s);
        if !(v > 0.0) {
            return Err(RateError::Shape(format!("theta({s}) = {v} is not positive")));
        }
        if v < prev - 1e-12 * (1.0 + prev.abs()) {
            return Err(RateError::Shape(format!("theta not increasing near {s}")));
        }
        prev = v;
    }
    Ok(2.0 * big_k * (1.0 + z_abs) / (1.0 - z_abs) * (theta(re_hz - t) / t).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forward_envelope_sqrt_profile() {
        // f = sqrt(1+t), Re h(0) = 0, t = 99: 16 e^{1} e^{-10}.
        let f = |s: f64| (1.0 + s).sqrt();
        let ev = envelope_forward_lower(&f, 0.0, 99.0).unwrap();
        let want = 16.0 * (1.0f64 - 10.0).exp();
        assert!((ev.value - want).abs() < 1e-12 * want);
        assert!(ev.extremal_certificate < 1e-8, "cert {}", ev.extremal_certificate);
    }

    #[test]
    fn forward_envelope_rejects_bad_shapes() {
        assert!(matches!(
            envelope_forward_lower(&|s| s * s, 0.0, 10.0),
            Err(RateError::Shape(_))
        ));
        assert!(matches!(
            envelope_forward_lower(&|s| -s, 0.0, 10.0),
            Err(RateError::Shape(_))
        ));
        // Linear growth fails the f(t)/t -> 0 check.
        assert!(matches!(
            envelope_forward_lower(&|s| 2.0 * s + 1.0, 0.0, 10.0),
            Err(RateError::Shape(_))
        ));
    }

    #[test]
    fn nonregular_envelope_constant_profile() {
        let c = 0.7;
        let v = envelope_nonregular(&|_| c, 1.0, 0.0, 0.0, 25.0).unwrap();
        assert!((v - 2.0 * (c / 25.0).sqrt()).abs() < 1e-14);
        assert!(matches!(
            envelope_nonregular(&|s| -s, 1.0, 0.0, 0.0, 25.0),
            Err(RateError::Shape(_))
        ));
    }

    #[test]
    fn strip_module_consistency_with_antiderivative() {
        let f = |s: f64| (1.0 + s).sqrt();
        for t in [3.0, 20.0, 120.0] {
            let ev = envelope_forward_lower(&f, 0.0, t).unwrap();
            assert!(ev.extremal_certificate < 1e-8, "t={t}: {}", ev.extremal_certificate);
        }
    }
}
