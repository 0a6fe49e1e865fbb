//! Closed-form harmonic measures and boundary-set plumbing.

use super::HmError;
use crate::geom::Cx;
use std::f64::consts::{PI, TAU};

/// A finite union of arcs/segments on a domain boundary.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundarySet {
    /// Arc `{ e^{i theta} : theta0 <= theta <= theta1 }` of the unit circle.
    DiskArc { theta0: f64, theta1: f64 },
    /// Horizontal boundary ray starting at `from`, running to `+inf` or
    /// `-inf` in the real direction.
    BoundaryRay { from: Cx, toward_positive: bool },
    /// Radial slit `{ s e^{i angle} : r <= s < 1 }` of the unit disk.
    RadialSlit { r: f64, angle: f64 },
    /// Vertical segment `{ x + i y : y0 <= y <= y1 }`.
    VerticalSegment { x: f64, y0: f64, y1: f64 },
    /// Piecewise-linear boundary portion.
    Polyline { points: Vec<Cx> },
}

fn dist_point_segment(w: Cx, a: Cx, b: Cx) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (w - a).norm();
    }
    let t = (((w - a).re * ab.re) + ((w - a).im * ab.im)) / len2;
    (w - (a + ab * t.clamp(0.0, 1.0))).norm()
}

impl BoundarySet {
    /// Euclidean distance from `w` to the set (used to fatten `E` by the
    /// absorption width when scoring walks).
    pub fn dist_to(&self, w: Cx) -> f64 {
        match self {
            BoundarySet::DiskArc { theta0, theta1 } => {
                let a = w.arg().rem_euclid(TAU);
                let lo = theta0.rem_euclid(TAU);
                let span = theta1 - theta0;
                let rel = (a - lo).rem_euclid(TAU);
                if span >= TAU || rel <= span {
                    (w.norm() - 1.0).abs()
                } else {
                    let p0 = Cx::from_polar(1.0, *theta0);
                    let p1 = Cx::from_polar(1.0, *theta1);
                    (w - p0).norm().min((w - p1).norm())
                }
            }
            BoundarySet::BoundaryRay {
                from,
                toward_positive,
            } => {
                let v = w - from;
                let along = if *toward_positive { v.re } else { -v.re };
                if along >= 0.0 {
                    v.im.abs()
                } else {
                    v.norm()
                }
            }
            BoundarySet::RadialSlit { r, angle } => {
                dist_point_segment(w, Cx::from_polar(*r, *angle), Cx::from_polar(1.0, *angle))
            }
            BoundarySet::VerticalSegment { x, y0, y1 } => {
                dist_point_segment(w, Cx::new(*x, *y0), Cx::new(*x, *y1))
            }
            BoundarySet::Polyline { points } => points
                .windows(2)
                .map(|s| dist_point_segment(w, s[0], s[1]))
                .fold(f64::INFINITY, f64::min),
        }
    }
}

/// Arc of the unit circle with the given diameter, centered on angle 0.
pub fn arc_of_diameter(d: f64) -> Result<BoundarySet, HmError> {
    if !(d > 0.0 && d <= 2.0) {
        return Err(HmError::Domain(format!("diameter must lie in (0, 2], got {d}")));
    }
    let half = (d / 2.0).asin();
    Ok(BoundarySet::DiskArc {
        theta0: -half,
        theta1: half,
    })
}

/// Domains with exact formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExactDomain {
    /// Unit disk (for a circle arc) or slit disk (for a radial slit `E`).
    Disk,
    /// Upper half-plane.
    HalfPlane,
}

/// Closed-form harmonic measure for the supported configurations:
///
/// * disk arc at the origin: `omega = |E| / (2 pi)`;
/// * radial slit `[r, 1) e^{i angle}` in the slit disk, base point on the
///   opposite ray: `omega = 1 - (4/pi) arctan sqrt((r - x)/(1 - r x))` with
///   `x` the signed position of `z` on the slit axis; at `x = 0` this is
///   `(2/pi) arcsin((1-r)/(1+r))`;
/// * horizontal boundary ray of the upper half-plane:
///   `omega = arg(z - a)/pi` (toward `-inf`) or `1 - arg(z - a)/pi`.
pub fn hm_exact(domain: ExactDomain, z: Cx, e: &BoundarySet) -> Result<f64, HmError> {
    match (domain, e) {
        (ExactDomain::Disk, BoundarySet::DiskArc { theta0, theta1 }) => {
            if z.norm() > 1e-13 {
                return Err(HmError::UnsupportedConfig(
                    "disk-arc formula requires z = 0".into(),
                ));
            }
            let span = theta1 - theta0;
            if !(span >= 0.0 && span <= TAU) {
                return Err(HmError::Domain(format!("arc span {span} not in [0, 2 pi]")));
            }
            Ok(span / TAU)
        }
        (ExactDomain::Disk, BoundarySet::RadialSlit { r, angle }) => {
            if !(*r > 0.0 && *r < 1.0) {
                return Err(HmError::Domain(format!("slit inner radius {r} not in (0,1)")));
            }
            // Rotate the slit onto the positive real axis.
            let zr = z * Cx::from_polar(1.0, -angle);
            if zr.im.abs() > 1e-12 || zr.re > *r || zr.re <= -1.0 {
                return Err(HmError::UnsupportedConfig(
                    "slit-disk formula requires a base point on the slit axis in (-1, r]".into(),
                ));
            }
            let x = zr.re;
            Ok(1.0 - (4.0 / PI) * ((r - x) / (1.0 - r * x)).sqrt().atan())
        }
        (ExactDomain::HalfPlane, BoundarySet::BoundaryRay { from, toward_positive }) => {
            if from.im.abs() > 1e-13 {
                return Err(HmError::UnsupportedConfig(
                    "ray must lie on the real axis".into(),
                ));
            }
            if z.im <= 0.0 {
                return Err(HmError::Domain(format!("{z} is not in the upper half-plane")));
            }
            let a = (z - from).arg();
            Ok(if *toward_positive { 1.0 - a / PI } else { a / PI })
        }
        (d, e) => Err(HmError::UnsupportedConfig(format!("{d:?} with {e:?}"))),
    }
}

/// Diameter-to-harmonic-measure lower bound: a compact connected set of
/// diameter `d` in the closed disk has harmonic measure at the origin at
/// least that of a circle arc of the same diameter,
/// `(1/pi) arcsin(d/2)`. Callers use the contrapositive
/// `d <= 2 sin(pi omega) <= 2 pi omega`.
pub fn diameter_lower_bound(d: f64) -> Result<f64, HmError> {
    if !(d > 0.0 && d <= 2.0) {
        return Err(HmError::Domain(format!("diameter must lie in (0, 2], got {d}")));
    }
    Ok((d / 2.0).asin() / PI)
}
