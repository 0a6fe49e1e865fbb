//! Bound evaluators with the explicit proof-level constants.
//!
//! All evaluators consume the normalized Koenigs values `h~ = h - shift`;
//! quantities of the form `Im h(z) - alpha` are shift-invariant, so they are
//! computed with the catalog `h` and the catalog petal level directly.

use super::RateError;
use crate::geom::{hyp_dist_disk, Cx};
use crate::semigroups::{
    lift_elliptic, Classification, Kind, Petal, PetalType, SemigroupModel,
};
use std::collections::BTreeMap;
use std::f64::consts::{E, PI, SQRT_2};

/// Constants ledger attached to bound evaluations.
pub type Constants = BTreeMap<String, f64>;

fn require_nonelliptic(m: &SemigroupModel, what: &str) -> Result<(), RateError> {
    if m.is_elliptic() {
        Err(RateError::Type(format!("{what} needs a non-elliptic semigroup, got {}", m.id())))
    } else {
        Ok(())
    }
}

fn is_boundary_fixed_point(m: &SemigroupModel, z: Cx) -> bool {
    if z.norm() < 1.0 - 1e-12 {
        return false;
    }
    if (z - m.tau()).norm() < 1e-12 {
        return true;
    }
    m.petals()
        .iter()
        .any(|p| p.ptype == PetalType::Hyperbolic && (z - p.sigma).norm() < 1e-12)
}

/// Case (a) coefficient `4 sqrt(2) pi (|h~'(0)|^{1/2} + |h~(z)|^{1/2})`.
fn upper_coeff_zero_step(m: &SemigroupModel, z: Cx) -> Result<f64, RateError> {
    let hz = m.koenigs_normalized(z)?;
    Ok(4.0 * SQRT_2 * PI * (m.dh0().norm().sqrt() + hz.norm().sqrt()))
}

/// Case (b) coefficient `8 max(|h~(0)|, |h~(z)|)`.
fn upper_coeff_positive_step(m: &SemigroupModel, z: Cx) -> Result<f64, RateError> {
    let hz = m.koenigs_normalized(z)?;
    let h0 = m.h0() - m.shift();
    Ok(8.0 * h0.norm().max(hz.norm()))
}

/// Forward upper bound for `|phi_t(z) - tau|` by semigroup type:
/// `C_a / sqrt(t)` (parabolic, zero step), `C_b / t` (positive step),
/// `16 e^{-lambda Re h~(z)} e^{-lambda t}` (hyperbolic). Boundary fixed
/// points carry `h = infinity` and return an infinite (trivially valid)
/// bound.
pub fn forward_upper(m: &SemigroupModel, z: Cx, t: f64) -> Result<f64, RateError> {
    require_nonelliptic(m, "forward_upper")?;
    if !(t > 0.0) {
        return Err(RateError::Param(format!("t must be positive, got {t}")));
    }
    if is_boundary_fixed_point(m, z) {
        return Ok(f64::INFINITY);
    }
    match m.classification() {
        Classification::ParabolicZero => Ok(upper_coeff_zero_step(m, z)? / t.sqrt()),
        Classification::ParabolicPositive => Ok(upper_coeff_positive_step(m, z)? / t),
        Classification::Hyperbolic => {
            let lambda = m.lambda();
            let re_hz = m.koenigs_normalized(z)?.re;
            Ok((16f64.ln() - lambda * (re_hz + t)).exp())
        }
        Classification::Elliptic => unreachable!(),
    }
}

/// Smallest `T >= 0` with cross-section width at `Re h(z) + T` at least
/// `pi / (lambda + eps)`, in closed form per catalog geometry.
fn lower_threshold_time(m: &SemigroupModel, z: Cx, eps: f64) -> Result<f64, RateError> {
    let lambda = m.lambda();
    let target = PI / (lambda + eps);
    let h = m.koenigs(z)?;
    // Walk the cross-section width forward until it clears the target.
    if m.domain().cross_section_width(h.re, h.im) >= target {
        return Ok(0.0);
    }
    // Catalog cross-sections are step functions that only widen across
    // Re w = 0, so the first admissible time is the distance to that line.
    if m.domain().cross_section_width(1e-9, h.im) >= target {
        return Ok((-h.re).max(0.0));
    }
    Err(RateError::Geometry(format!(
        "no cross-section of width {target} reachable from Re h = {}",
        h.re
    )))
}

/// Forward lower bound `c(z, eps) e^{-(lambda+eps) t}` with
/// `c = (1-|z|) e^{-2 c_{z,eps}} min(sinh(lambda+eps), 1/(1+|z|))` and
/// `c_{z,eps} = 4 (T + 1 + pi/(lambda+eps)) / min(4, (1-|z|) |h'(z)|)`.
///
/// The derivation produces `sinh(lambda+eps)` where the displayed constant
/// says `sinh(lambda)` (vacuous for parabolic entries); both are recorded.
pub fn forward_lower(
    m: &SemigroupModel,
    z: Cx,
    eps: f64,
    t: f64,
) -> Result<(f64, Constants), RateError> {
    require_nonelliptic(m, "forward_lower")?;
    if !(eps > 0.0) {
        return Err(RateError::Epsilon(format!("eps must be positive, got {eps}")));
    }
    if !(t >= 0.0) {
        return Err(RateError::Param(format!("t must be nonnegative, got {t}")));
    }
    let lambda = m.lambda();
    let cap_t = lower_threshold_time(m, z, eps)?;
    let (_, dh) = m.koenigs_d(z)?;
    let denom = 4f64.min((1.0 - z.norm()) * dh.norm());
    let c_zeps = 4.0 * (cap_t + 1.0 + PI / (lambda + eps)) / denom;
    let sinh_shifted = (lambda + eps).sinh();
    let tail = sinh_shifted.min(1.0 / (1.0 + z.norm()));
    let log_c = (1.0 - z.norm()).ln() - 2.0 * c_zeps + tail.ln();
    let bound = (log_c - (lambda + eps) * t).exp();
    let mut constants = Constants::new();
    constants.insert("T".into(), cap_t);
    constants.insert("c_z_eps".into(), c_zeps);
    constants.insert("c".into(), log_c.exp());
    constants.insert("log_c".into(), log_c);
    constants.insert("lambda".into(), lambda);
    constants.insert("epsilon".into(), eps);
    constants.insert("sinh_lambda".into(), lambda.sinh());
    constants.insert("sinh_lambda_eps".into(), sinh_shifted);
    Ok((bound, constants))
}

fn check_petal_matches(m: &SemigroupModel, z: Cx, petal: &Petal) -> Result<(), RateError> {
    let actual = m
        .petal_for(z)
        .map_err(|e| RateError::Petal(e.to_string()))?;
    if actual != petal {
        return Err(RateError::Petal(format!(
            "{z} lies in the petal landing at {}, not the requested one",
            actual.sigma
        )));
    }
    Ok(())
}

/// Lower coefficient shared by the parabolic-petal cases:
/// `|z - tau| min(1, |Im h(z) - alpha|) / (2 (1 + |z|))`.
fn lower_coeff_parabolic(m: &SemigroupModel, z: Cx, petal: &Petal) -> Result<f64, RateError> {
    let h = m.koenigs(z)?;
    let gap = (h.im - petal.alpha).abs();
    Ok((z - m.tau()).norm() * gap.min(1.0) / (2.0 * (1.0 + z.norm())))
}

/// First `t >= 0` at which the petal gap width on `{Re w = Re h(z) - t}`
/// drops to `-pi/(nu+eps)`, by bisection on the monotone predicate.
fn gap_time(m: &SemigroupModel, re_hz: f64, target: f64) -> Result<f64, RateError> {
    let ok = |t: f64| m.domain().petal_gap_width(re_hz - t) <= target;
    if ok(0.0) {
        return Ok(0.0);
    }
    let mut lo = 0.0f64;
    let mut hi = 1e6;
    if !ok(hi) {
        return Err(RateError::Geometry(format!(
            "petal gap never reaches {target} within t <= 1e6"
        )));
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

fn backward_upper_hyperbolic(
    m: &SemigroupModel,
    z: Cx,
    petal: &Petal,
    eps: f64,
    t: f64,
) -> Result<(f64, f64), RateError> {
    let nu = petal.nu.expect("hyperbolic petal has nu");
    if !(eps > 0.0 && eps < -nu) {
        return Err(RateError::Epsilon(format!("eps must lie in (0, {}), got {eps}", -nu)));
    }
    let h = m.koenigs(z)?;
    let t_gap = gap_time(m, h.re, -PI / (nu + eps))?;
    let t_ze = t_gap.max((h - m.h0()).norm());
    let bound = (16f64.ln() + (nu + eps) * (t - t_ze)).exp();
    Ok((bound, t_ze))
}

/// Two-sided bounds for regular backward orbits, by petal type and
/// hyperbolic step. Returns `(lower, upper, constants)`.
pub fn backward_bounds(
    m: &SemigroupModel,
    z: Cx,
    petal: &Petal,
    eps: f64,
    t: f64,
) -> Result<(f64, f64, Constants), RateError> {
    require_nonelliptic(m, "backward_bounds")?;
    if !(t > 1.0) {
        return Err(RateError::Param(format!("bounds are stated for t > 1, got {t}")));
    }
    check_petal_matches(m, z, petal)?;
    let mut constants = Constants::new();
    match petal.ptype {
        PetalType::Parabolic => {
            let lower_coeff = lower_coeff_parabolic(m, z, petal)?;
            constants.insert("lower_coeff".into(), lower_coeff);
            constants.insert("alpha".into(), petal.alpha);
            let lower = lower_coeff / t;
            let upper = match m.classification() {
                Classification::ParabolicZero => {
                    let c = upper_coeff_zero_step(m, z)?;
                    constants.insert("upper_coeff".into(), c);
                    c / t.sqrt()
                }
                Classification::ParabolicPositive => {
                    let c = upper_coeff_positive_step(m, z)?;
                    constants.insert("upper_coeff".into(), c);
                    c / t
                }
                other => {
                    return Err(RateError::Type(format!(
                        "parabolic petal in a {other} semigroup"
                    )))
                }
            };
            Ok((lower, upper, constants))
        }
        PetalType::Hyperbolic => {
            let nu = petal.nu.expect("hyperbolic petal has nu");
            let h = m.koenigs(z)?;
            let s = (nu * (h.im - petal.alpha)).sin();
            let lower_coeff = (1.0 - z.norm()) / (1.0 + z.norm()) * s * s;
            let lower = lower_coeff * (nu * t).exp();
            let (upper, t_ze) = backward_upper_hyperbolic(m, z, petal, eps, t)?;
            constants.insert("nu".into(), nu);
            constants.insert("alpha".into(), petal.alpha);
            constants.insert("epsilon".into(), eps);
            constants.insert("lower_coeff".into(), lower_coeff);
            constants.insert("t_z_eps".into(), t_ze);
            constants.insert("h_offset".into(), (h - m.h0()).norm());
            Ok((lower, upper, constants))
        }
    }
}

/// Case selector for non-regular backward orbit upper bounds.
#[derive(Debug, Clone)]
pub enum NonRegularCase<'a> {
    /// On the boundary of a parabolic petal, zero hyperbolic step.
    ParabolicZeroBoundary,
    /// On the boundary of a parabolic petal, positive hyperbolic step.
    ParabolicPositiveBoundary,
    /// On the boundary of the given hyperbolic petal.
    HyperbolicBoundary(&'a Petal),
    /// Off every petal boundary (super-repelling landing); the caller
    /// supplies the geometry pair `(T, d_T)` since no catalog entry hosts
    /// such an orbit.
    OffPetal { t_cap: f64, d_cap: f64 },
}

/// Upper bounds for non-regular backward orbits. Cases (a) and (b) are
/// bit-identical to the corresponding regular-orbit upper evaluators; case
/// (c) reuses the hyperbolic-petal constant `16 e^{-(nu+eps) t_{z,eps}}`;
/// case (d) is `16 e^{pi T / d_T} e^{-eps t}`, valid only when
/// `d_T < pi / eps`.
pub fn nonregular_upper(
    m: &SemigroupModel,
    z: Cx,
    case: NonRegularCase<'_>,
    eps: f64,
    t: f64,
) -> Result<f64, RateError> {
    require_nonelliptic(m, "nonregular_upper")?;
    if !(t > 1.0) {
        return Err(RateError::Param(format!("bounds are stated for t > 1, got {t}")));
    }
    match case {
        NonRegularCase::ParabolicZeroBoundary => Ok(upper_coeff_zero_step(m, z)? / t.sqrt()),
        NonRegularCase::ParabolicPositiveBoundary => Ok(upper_coeff_positive_step(m, z)? / t),
        NonRegularCase::HyperbolicBoundary(petal) => {
            Ok(backward_upper_hyperbolic(m, z, petal, eps, t)?.0)
        }
        NonRegularCase::OffPetal { t_cap, d_cap } => {
            if !(eps > 0.0) {
                return Err(RateError::Epsilon(format!("eps must be positive, got {eps}")));
            }
            if !(d_cap > 0.0) || d_cap >= PI / eps {
                return Err(RateError::Geometry(format!(
                    "need d_T < pi/eps = {}, got {d_cap}",
                    PI / eps
                )));
            }
            Ok((16f64.ln() + PI * t_cap / d_cap - eps * t).exp())
        }
    }
}

/// Two-sided elliptic forward bounds:
/// `(1 -+ |tau|) |tau - z| / |1 - conj(tau) z| * e^{-Re(lambda) e^{+-2d} t}`
/// with `d` the hyperbolic distance from `tau` to `z`.
pub fn elliptic_bounds(m: &SemigroupModel, z: Cx, t: f64) -> Result<(f64, f64), RateError> {
    if !m.is_elliptic() {
        return Err(RateError::Type(format!(
            "elliptic_bounds needs the elliptic entry, got {}",
            m.id()
        )));
    }
    if !(t >= 0.0) {
        return Err(RateError::Param(format!("t must be nonnegative, got {t}")));
    }
    let tau = m.tau();
    let factor = (tau - z).norm() / (Cx::new(1.0, 0.0) - tau.conj() * z).norm();
    let d = hyp_dist_disk(tau, z)?;
    let re_lambda = m.spectral().re;
    let lower = (1.0 - tau.norm()) * factor * (-re_lambda * (2.0 * d).exp() * t).exp();
    let upper = (1.0 + tau.norm()) * factor * (-re_lambda * (-2.0 * d).exp() * t).exp();
    Ok((lower, upper))
}

/// Prepared constants for the elliptic backward bounds of the lifted route.
#[derive(Debug, Clone)]
pub struct EllipticBackwardData {
    pub nu: f64,
    pub eps: f64,
    /// First grid time with `|log gamma(T)| < 1`.
    pub t_start: f64,
    pub c1: f64,
    pub c2: f64,
    pub constants: Constants,
}

impl EllipticBackwardData {
    pub fn eval(&self, t: f64) -> (f64, f64) {
        (
            self.c1 * (self.nu * t).exp(),
            self.c2 * ((self.nu + self.eps) * t).exp(),
        )
    }
}

/// Elliptic backward bounds via the lifting:
/// `c1 = (3-e)/2 * (1-|zeta|)/(1+|zeta|) * sin^2(nu (Im h^(zeta) - alpha))`,
/// `c2 = 8(e-1) ((log|gamma(T)| + 1)^2 + pi^2) e^{-(nu+eps)(T + t_hat)}`,
/// where `zeta = (log gamma(T) + 1)/(log gamma(T) - 1)` and `t_hat` is the
/// hyperbolic-petal time threshold of the lifted comb domain (the factor
/// `e^{-(nu+eps) t_hat}` comes from applying the regular-orbit upper bound
/// to the lifted semigroup).
pub fn elliptic_backward_bounds(
    m: &SemigroupModel,
    z: Cx,
    eps: f64,
) -> Result<EllipticBackwardData, RateError> {
    let Kind::EllipticExplicit { lambda } = m.kind() else {
        return Err(RateError::Type(format!(
            "elliptic_backward_bounds needs the elliptic entry, got {}",
            m.id()
        )));
    };
    m.petal_for(z).map_err(|e| RateError::Petal(e.to_string()))?;
    let lift = lift_elliptic(m)?;
    let nu = lift.nu();
    if !(eps > 0.0 && eps < -nu) {
        return Err(RateError::Epsilon(format!("eps must lie in (0, {}), got {eps}", -nu)));
    }

    // T: first unit-grid time at which the orbit enters |log gamma| < 1.
    let mut t_start = None;
    for u in 0..=400 {
        let g = m.backward(z, u as f64)?;
        if g.ln().norm() < 1.0 {
            t_start = Some(u as f64);
            break;
        }
    }
    let Some(t_start) = t_start else {
        return Err(RateError::Data(
            "backward orbit did not reach |log gamma| < 1 within t <= 400".into(),
        ));
    };

    let gamma_t = m.backward(z, t_start)?;
    let lg = gamma_t.ln();
    let zeta = (lg + 1.0) / (lg - 1.0);
    let h_hat_zeta = lift.koenigs_hat(zeta)?;
    let alpha_hat = lift.alpha_hat();
    let s = (nu * (h_hat_zeta.im - alpha_hat)).sin();
    let c1 = (3.0 - E) / 2.0 * (1.0 - zeta.norm()) / (1.0 + zeta.norm()) * s * s;

    // Hyperbolic-petal threshold for the lifted comb.
    let comb = lift.comb();
    let target = -PI / (nu + eps);
    let gap_ok = |t: f64| comb.petal_gap_width(h_hat_zeta.re - t) <= target;
    let t_gap = if gap_ok(0.0) {
        0.0
    } else {
        let mut lo = 0.0;
        let mut hi = 1e6;
        if !gap_ok(hi) {
            return Err(RateError::Geometry("lifted petal gap never narrows enough".into()));
        }
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if gap_ok(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    };
    let h_hat_0 = lift.koenigs_hat(Cx::new(0.0, 0.0))?;
    let t_hat = t_gap.max((h_hat_zeta - h_hat_0).norm());

    let poly = (gamma_t.norm().ln() + 1.0).powi(2) + PI * PI;
    let c2 = 8.0 * (E - 1.0) * poly * (-(nu + eps) * (t_start + t_hat)).exp();
    let c2_display = 8.0 * (E - 1.0) * poly * (-(nu + eps) * t_start).exp();

    let mut constants = Constants::new();
    constants.insert("nu".into(), nu);
    constants.insert("epsilon".into(), eps);
    constants.insert("lambda".into(), lambda);
    constants.insert("T".into(), t_start);
    constants.insert("t_hat".into(), t_hat);
    constants.insert("zeta_abs".into(), zeta.norm());
    constants.insert("im_h_hat_zeta".into(), h_hat_zeta.im);
    constants.insert("alpha_hat".into(), alpha_hat);
    constants.insert("c1".into(), c1);
    constants.insert("c2".into(), c2);
    constants.insert("c2_display".into(), c2_display);
    constants.insert("log_gamma_T_abs".into(), lg.norm());
    Ok(EllipticBackwardData {
        nu,
        eps,
        t_start,
        c1,
        c2,
        constants,
    })
}
