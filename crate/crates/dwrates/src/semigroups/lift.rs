//! Elliptic-to-non-elliptic lifting.
//!
//! For the elliptic catalog entry (Denjoy-Wolff point 0, repelling boundary
//! point 1) there is a non-elliptic semigroup `psi_t` on the right half-plane
//! with `e^{-psi_t(w)} = phi_t(e^{-w})`. Writing `h(e^{-w}) = 1/sinh(w/2)^2`
//! gives the closed form used here: `sinh(psi_t(w)/2) = e^{lambda t/2}
//! sinh(w/2)`, solved by the root of modulus greater than one of
//! `g^2 - 2vg - 1 = 0` with `g = e^{psi_t(w)/2}`.
//!
//! The lifted Koenigs domain is the comb
//! `C \ U_j { Re <= 0, Im = (2j+1) pi/lambda }`; the petal strip through the
//! origin has width `2 pi / lambda`, so the repelling spectral value at the
//! conjugated fixed point `-1` is `nu = -lambda/2`.

use super::domain::Geometry;
use super::model::{Kind, SemigroupModel};
use super::SgError;
use crate::geom::Cx;
use std::f64::consts::{LN_2, PI, TAU};

/// Evaluators for the lifted semigroup `psi_t` on the right half-plane and
/// its Cayley conjugate on the disk.
#[derive(Debug, Clone, Copy)]
pub struct LiftedSemigroup {
    lambda: f64,
}

/// Builds the lift for an elliptic catalog entry (tau = 0, sigma = 1).
pub fn lift_elliptic(model: &SemigroupModel) -> Result<LiftedSemigroup, SgError> {
    match model.kind() {
        Kind::EllipticExplicit { lambda } => Ok(LiftedSemigroup { lambda }),
        other => Err(SgError::Param(format!(
            "lift requires the elliptic-explicit entry, got {other:?}"
        ))),
    }
}

impl LiftedSemigroup {
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Repelling spectral value of the conjugated semigroup at -1.
    pub fn nu(&self) -> f64 {
        -self.lambda / 2.0
    }

    /// Lower boundary level of the petal strip of the lifted Koenigs domain.
    pub fn alpha_hat(&self) -> f64 {
        -PI / self.lambda
    }

    /// Lifted Koenigs domain geometry.
    pub fn comb(&self) -> Geometry {
        Geometry::Comb {
            lambda: self.lambda,
        }
    }

    fn reduce(&self, w: Cx) -> Result<(Cx, f64), SgError> {
        if !(w.re > 0.0) {
            return Err(SgError::Domain(format!(
                "{w} is not in the open right half-plane"
            )));
        }
        let k = (w.im / (2.0 * TAU)).round();
        let w0 = Cx::new(w.re, w.im - 2.0 * TAU * k);
        if (w0.im.abs() - TAU).abs() < 1e-9 {
            return Err(SgError::Branch(format!(
                "{w} sits on the sinh branch line Im = 2 pi (mod 4 pi)"
            )));
        }
        Ok((w0, k))
    }

    /// `psi_t(w)`, continuous in `t` with `psi_0 = id`.
    pub fn psi(&self, w: Cx, t: f64) -> Result<Cx, SgError> {
        if !(t >= 0.0) {
            return Err(SgError::Param(format!("t must be nonnegative, got {t}")));
        }
        let (w0, k) = self.reduce(w)?;
        let v = (w0 / 2.0).sinh() * (self.lambda * t / 2.0).exp();
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(SgError::Branch("lift evaluation overflowed".into()));
        }
        let psi0 = if v.norm() >= 1e8 {
            // g = v + sqrt(v^2+1) = 2v (1 + O(v^-2)).
            2.0 * (v.ln() + LN_2)
        } else {
            let s = (v * v + 1.0).sqrt();
            let g1 = v + s;
            let g2 = v - s;
            let g = if g1.norm() >= g2.norm() { g1 } else { g2 };
            if (g.norm() - 1.0).abs() < 1e-12 {
                return Err(SgError::Branch(format!(
                    "root selection tie while lifting at w={w}, t={t}"
                )));
            }
            2.0 * g.ln()
        };
        Ok(psi0 + Cx::new(0.0, 2.0 * TAU * k))
    }

    /// Cayley conjugate `phi_hat_t = C^{-1} o psi_t o C` on the disk.
    pub fn phi_hat(&self, x: Cx, t: f64) -> Result<Cx, SgError> {
        let den = Cx::new(1.0, 0.0) - x;
        if den.norm() == 0.0 {
            return Err(SgError::Branch("Cayley pole at x = 1".into()));
        }
        let w = (Cx::new(1.0, 0.0) + x) / den;
        let p = self.psi(w, t)?;
        Ok((p - 1.0) / (p + 1.0))
    }

    /// Koenigs function of the lifted semigroup,
    /// `H(w) = (2/lambda) log sinh(w/2)` continued across the comb levels.
    pub fn koenigs_hat_halfplane(&self, w: Cx) -> Result<Cx, SgError> {
        let (w0, k) = self.reduce(w)?;
        let s = (w0 / 2.0).sinh();
        if s.re <= 0.0 && s.im.abs() < 1e-14 {
            return Err(SgError::Branch(format!("sinh({w}/2) fell on the log cut")));
        }
        Ok(2.0 / self.lambda * s.ln() + Cx::new(0.0, 2.0 * TAU * k / self.lambda))
    }

    /// Koenigs function of the conjugated disk semigroup.
    pub fn koenigs_hat(&self, x: Cx) -> Result<Cx, SgError> {
        let den = Cx::new(1.0, 0.0) - x;
        if den.norm() == 0.0 {
            return Err(SgError::Branch("Cayley pole at x = 1".into()));
        }
        self.koenigs_hat_halfplane((Cx::new(1.0, 0.0) + x) / den)
    }

    /// `|e^{-psi_t(w)} - phi_t(e^{-w})|`, the lifting identity residual
    /// (the two sides follow independent evaluation routes).
    pub fn residual(&self, model: &SemigroupModel, w: Cx, t: f64) -> Result<f64, SgError> {
        let lhs = (-self.psi(w, t)?).exp();
        let rhs = model.phi((-w).exp(), t)?;
        Ok((lhs - rhs).norm())
    }
}
