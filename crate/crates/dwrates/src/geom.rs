//! Complex primitives, Möbius maps, and hyperbolic distances.
//!
//! Distances follow the density `|dz| / (1 - |z|^2)` on the unit disk, so
//! `d(0, r) = artanh r = (1/2) log((1+r)/(1-r))` and the right half-plane
//! density is `1 / (2 Re w)`.

use crate::quad::adaptive_simpson;
use crate::semigroups::SemigroupModel;
use thiserror::Error;

/// Complex scalar used throughout the crate.
pub type Cx = num_complex::Complex64;

/// Tolerance used to classify points as sitting on a branch cut or slit.
pub const SLIT_MARGIN: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum GeomError {
    #[error("non-finite complex input")]
    NonFinite,
    #[error("Möbius map evaluated at its pole")]
    Pole,
    #[error("point outside the domain: {0}")]
    Domain(String),
    #[error("integration path leaves the domain near {0}")]
    Path(Cx),
    #[error("degenerate Möbius coefficients (ad - bc = 0)")]
    Degenerate,
}

pub(crate) fn check_finite(z: Cx) -> Result<(), GeomError> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(GeomError::NonFinite)
    }
}

/// Möbius map `w -> (aw + b) / (cw + d)` with `ad - bc != 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoebiusMap {
    pub a: Cx,
    pub b: Cx,
    pub c: Cx,
    pub d: Cx,
}

impl MoebiusMap {
    pub fn new(a: Cx, b: Cx, c: Cx, d: Cx) -> Result<Self, GeomError> {
        for v in [a, b, c, d] {
            check_finite(v)?;
        }
        if (a * d - b * c).norm() == 0.0 {
            return Err(GeomError::Degenerate);
        }
        Ok(Self { a, b, c, d })
    }

    /// Cayley transform `C(z) = (1 + z) / (1 - z)` mapping the disk onto the
    /// right half-plane.
    pub fn cayley() -> Self {
        Self {
            a: Cx::new(1.0, 0.0),
            b: Cx::new(1.0, 0.0),
            c: Cx::new(-1.0, 0.0),
            d: Cx::new(1.0, 0.0),
        }
    }

    /// Disk involution `Psi(z) = (tau - z) / (1 - conj(tau) z)` swapping
    /// `tau` and the origin; it is its own inverse.
    pub fn disk_automorphism(tau: Cx) -> Self {
        Self {
            a: Cx::new(-1.0, 0.0),
            b: tau,
            c: -tau.conj(),
            d: Cx::new(1.0, 0.0),
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn apply(&self, z: Cx) -> Result<Cx, GeomError> {
        mobius_apply(self, z)
    }
}

/// Evaluates `(az + b) / (cz + d)`, rejecting the pole `cz + d = 0`.
pub fn mobius_apply(m: &MoebiusMap, z: Cx) -> Result<Cx, GeomError> {
    check_finite(z)?;
    let den = m.c * z + m.d;
    if den.norm() == 0.0 {
        return Err(GeomError::Pole);
    }
    Ok((m.a * z + m.b) / den)
}

fn require_in_disk(z: Cx) -> Result<(), GeomError> {
    check_finite(z)?;
    if z.norm() < 1.0 {
        Ok(())
    } else {
        Err(GeomError::Domain(format!("{z} is not in the open unit disk")))
    }
}

/// Hyperbolic distance in the unit disk,
/// `d(z1, z2) = artanh |(z1 - z2) / (1 - conj(z1) z2)|`.
pub fn hyp_dist_disk(z1: Cx, z2: Cx) -> Result<f64, GeomError> {
    require_in_disk(z1)?;
    require_in_disk(z2)?;
    let num = (z1 - z2).norm();
    let den = (Cx::new(1.0, 0.0) - z1.conj() * z2).norm();
    Ok((num / den).atanh())
}

/// Hyperbolic distance in the right half-plane,
/// `(1/2) log((|w1 + conj(w2)| + |w1 - w2|) / (|w1 + conj(w2)| - |w1 - w2|))`.
pub fn hyp_dist_right_halfplane(w1: Cx, w2: Cx) -> Result<f64, GeomError> {
    check_finite(w1)?;
    check_finite(w2)?;
    if w1.re <= 0.0 || w2.re <= 0.0 {
        return Err(GeomError::Domain(
            "point outside the open right half-plane".into(),
        ));
    }
    let s = (w1 + w2.conj()).norm();
    let d = (w1 - w2).norm();
    Ok(0.5 * ((s + d) / (s - d)).ln())
}

/// Hyperbolic distance in the Koenigs domain of `model`: both points are
/// pulled back through the closed-form inverse Koenigs chain and measured in
/// the disk. Independent of the choice of Riemann map.
pub fn hyp_dist_domain(model: &SemigroupModel, w1: Cx, w2: Cx) -> Result<f64, GeomError> {
    let z1 = model
        .koenigs_inv(w1)
        .map_err(|e| GeomError::Domain(e.to_string()))?;
    let z2 = model
        .koenigs_inv(w2)
        .map_err(|e| GeomError::Domain(e.to_string()))?;
    hyp_dist_disk(z1, z2)
}

/// Euclidean distance from `w` to the boundary of the catalog Koenigs domain.
pub fn delta_boundary(model: &SemigroupModel, w: Cx) -> Result<f64, GeomError> {
    check_finite(w)?;
    if !model.domain().contains(w) {
        return Err(GeomError::Domain(format!("{w} is outside the Koenigs domain")));
    }
    Ok(model.domain().delta(w))
}

/// Two-sided quasi-hyperbolic bounds for `d_Omega(w1, w2)`:
/// the lower bound `(1/4) log(1 + |w1-w2| / min(delta(w1), delta(w2)))` and
/// the upper bound `int |dw| / delta(w)` along the straight segment.
///
/// The segment must stay inside the domain (checked by sampling); supply a
/// polyline via [`distance_lemma_bounds_polyline`] otherwise.
pub fn distance_lemma_bounds(
    model: &SemigroupModel,
    w1: Cx,
    w2: Cx,
) -> Result<(f64, f64), GeomError> {
    let d1 = delta_boundary(model, w1)?;
    let d2 = delta_boundary(model, w2)?;
    if w1 == w2 {
        return Ok((0.0, 0.0));
    }
    let lower = 0.25 * (1.0 + (w1 - w2).norm() / d1.min(d2)).ln();
    let upper = segment_quasihyperbolic(model, w1, w2)?;
    Ok((lower, upper))
}

/// Polyline overload: the upper bound integrates piecewise, the lower bound
/// uses the polyline endpoints.
pub fn distance_lemma_bounds_polyline(
    model: &SemigroupModel,
    pts: &[Cx],
) -> Result<(f64, f64), GeomError> {
    if pts.len() < 2 {
        return Err(GeomError::Domain("polyline needs at least two points".into()));
    }
    let w1 = pts[0];
    let w2 = *pts.last().unwrap();
    let d1 = delta_boundary(model, w1)?;
    let d2 = delta_boundary(model, w2)?;
    let lower = if w1 == w2 {
        0.0
    } else {
        0.25 * (1.0 + (w1 - w2).norm() / d1.min(d2)).ln()
    };
    let mut upper = 0.0;
    for seg in pts.windows(2) {
        upper += segment_quasihyperbolic(model, seg[0], seg[1])?;
    }
    Ok((lower, upper))
}

fn segment_quasihyperbolic(model: &SemigroupModel, w1: Cx, w2: Cx) -> Result<f64, GeomError> {
    let dir = w2 - w1;
    let descriptor = model.domain();
    // Path precondition: sample the segment before integrating.
    const SAMPLES: usize = 129;
    for k in 0..=SAMPLES {
        let w = w1 + dir * (k as f64 / SAMPLES as f64);
        if !descriptor.contains(w) {
            return Err(GeomError::Path(w));
        }
    }
    let len = dir.norm();
    if len == 0.0 {
        return Ok(0.0);
    }
    // A crossing between the coarse samples shows up as a 1/delta blow-up;
    // the adaptive refinement drives samples into it and trips this flag.
    let escaped = std::cell::Cell::new(None);
    let f = |s: f64| {
        let w = w1 + dir * s;
        let d = descriptor.delta(w);
        if !descriptor.contains(w) || d <= 1e-9 * (1.0 + w.norm()) {
            escaped.set(Some(w));
        }
        len / d.max(f64::MIN_POSITIVE)
    };
    let value = adaptive_simpson(&f, 0.0, 1.0, 1e-9, 40);
    if let Some(w) = escaped.get() {
        return Err(GeomError::Path(w));
    }
    Ok(value)
}
