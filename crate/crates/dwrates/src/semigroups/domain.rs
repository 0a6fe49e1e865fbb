//! Koenigs domain geometry: containment, boundary distance, cross-sections,
//! and petal gap widths, all in closed form per catalog kind.

use crate::geom::{Cx, SLIT_MARGIN};

/// The geometry of a catalog Koenigs domain.
///
/// Coordinates are the unnormalized catalog `h`-coordinates. Points within
/// [`SLIT_MARGIN`] of a slit are classified as outside (conservative).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Geometry {
    /// `{ Im w > 0 }`.
    UpperHalfPlane,
    /// `{ 0 < Im w < width }`.
    Strip { width: f64 },
    /// `C \ (-inf, end]` (slit along the real axis).
    SlitPlane { end: f64 },
    /// `{ -theta < arg w < pi }`, opening `pi + theta`.
    Sector { theta: f64 },
    /// Upper half-plane minus the segment `i(0, 1]`.
    SlitHalfplane,
    /// `{ 0 < Im w < pi }` minus the half-line `{ Re w <= 0, Im w = pi/2 }`.
    SlitStrip,
    /// Comb: the plane minus the half-lines
    /// `{ Re w <= 0, Im w = (2j+1) pi / lambda }`, `j` integer
    /// (Koenigs domain of the lifted elliptic catalog entry).
    Comb { lambda: f64 },
}

/// Alias used in signatures that mirror the domain-descriptor role.
pub type DomainDescriptor = Geometry;

fn dist_to_halfline_left(w: Cx, x_end: f64, level: f64) -> f64 {
    // Half-line { Re <= x_end, Im = level }.
    let dy = w.im - level;
    if w.re <= x_end {
        dy.abs()
    } else {
        (w.re - x_end).hypot(dy)
    }
}

fn dist_to_segment(w: Cx, a: Cx, b: Cx) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (w - a).norm();
    }
    let t = ((w - a).re * ab.re + (w - a).im * ab.im) / len2;
    let t = t.clamp(0.0, 1.0);
    (w - (a + ab * t)).norm()
}

fn dist_to_ray_at_angle(w: Cx, angle: f64) -> f64 {
    // Ray { r e^{i angle} : r >= 0 }; rotate it onto [0, inf).
    let v = w * Cx::from_polar(1.0, -angle);
    if v.re >= 0.0 {
        v.im.abs()
    } else {
        v.norm()
    }
}

fn project_to_ray_at_angle(w: Cx, angle: f64) -> Cx {
    let v = w * Cx::from_polar(1.0, -angle);
    let r = v.re.max(0.0);
    Cx::from_polar(1.0, angle) * r
}

impl Geometry {
    /// Strict containment, with points within [`SLIT_MARGIN`] of slits and
    /// cuts classified as outside.
    pub fn contains(&self, w: Cx) -> bool {
        if !w.re.is_finite() || !w.im.is_finite() {
            return false;
        }
        match *self {
            Geometry::UpperHalfPlane => w.im > 0.0,
            Geometry::Strip { width } => w.im > 0.0 && w.im < width,
            Geometry::SlitPlane { end } => dist_to_halfline_left(w, end, 0.0) > SLIT_MARGIN,
            Geometry::Sector { theta } => {
                dist_to_ray_at_angle(w, std::f64::consts::PI) > SLIT_MARGIN
                    && dist_to_ray_at_angle(w, -theta) > SLIT_MARGIN
                    && {
                        let a = w.arg();
                        a > -theta && a < std::f64::consts::PI
                    }
            }
            Geometry::SlitHalfplane => {
                w.im > 0.0 && dist_to_segment(w, Cx::new(0.0, 0.0), Cx::new(0.0, 1.0)) > SLIT_MARGIN
            }
            Geometry::SlitStrip => {
                w.im > 0.0
                    && w.im < std::f64::consts::PI
                    && dist_to_halfline_left(w, 0.0, std::f64::consts::FRAC_PI_2) > SLIT_MARGIN
            }
            Geometry::Comb { lambda } => {
                let spacing = 2.0 * std::f64::consts::PI / lambda;
                let offset = std::f64::consts::PI / lambda;
                // Nearest slit levels are (2j+1) pi / lambda around Im w.
                let j = ((w.im - offset) / spacing).round();
                let mut ok = true;
                for k in [j - 1.0, j, j + 1.0] {
                    let level = offset + spacing * k;
                    if dist_to_halfline_left(w, 0.0, level) <= SLIT_MARGIN {
                        ok = false;
                    }
                }
                ok
            }
        }
    }

    /// Exact Euclidean distance to the domain boundary.
    pub fn delta(&self, w: Cx) -> f64 {
        match *self {
            Geometry::UpperHalfPlane => w.im,
            Geometry::Strip { width } => w.im.min(width - w.im),
            Geometry::SlitPlane { end } => dist_to_halfline_left(w, end, 0.0),
            Geometry::Sector { theta } => dist_to_ray_at_angle(w, std::f64::consts::PI)
                .min(dist_to_ray_at_angle(w, -theta)),
            Geometry::SlitHalfplane => w
                .im
                .min(dist_to_segment(w, Cx::new(0.0, 0.0), Cx::new(0.0, 1.0))),
            Geometry::SlitStrip => w
                .im
                .min(std::f64::consts::PI - w.im)
                .min(dist_to_halfline_left(w, 0.0, std::f64::consts::FRAC_PI_2)),
            Geometry::Comb { lambda } => {
                let spacing = 2.0 * std::f64::consts::PI / lambda;
                let offset = std::f64::consts::PI / lambda;
                let j = ((w.im - offset) / spacing).round();
                let mut d = f64::INFINITY;
                for k in [j - 1.0, j, j + 1.0] {
                    let level = offset + spacing * k;
                    d = d.min(dist_to_halfline_left(w, 0.0, level));
                }
                d
            }
        }
    }

    /// Nearest boundary point (used by walk-on-spheres scoring).
    pub fn nearest_boundary(&self, w: Cx) -> Cx {
        match *self {
            Geometry::UpperHalfPlane => Cx::new(w.re, 0.0),
            Geometry::Strip { width } => {
                if w.im < width - w.im {
                    Cx::new(w.re, 0.0)
                } else {
                    Cx::new(w.re, width)
                }
            }
            Geometry::SlitPlane { end } => {
                if w.re <= end {
                    Cx::new(w.re, 0.0)
                } else {
                    Cx::new(end, 0.0)
                }
            }
            Geometry::Sector { theta } => {
                let p1 = project_to_ray_at_angle(w, std::f64::consts::PI);
                let p2 = project_to_ray_at_angle(w, -theta);
                if (w - p1).norm() <= (w - p2).norm() {
                    p1
                } else {
                    p2
                }
            }
            Geometry::SlitHalfplane => {
                let on_line = Cx::new(w.re, 0.0);
                let on_slit = Cx::new(0.0, w.im.clamp(0.0, 1.0));
                if (w - on_line).norm() <= (w - on_slit).norm() {
                    on_line
                } else {
                    on_slit
                }
            }
            Geometry::SlitStrip => {
                let pi = std::f64::consts::PI;
                let cands = [
                    Cx::new(w.re, 0.0),
                    Cx::new(w.re, pi),
                    Cx::new(w.re.min(0.0), pi / 2.0),
                ];
                *cands
                    .iter()
                    .min_by(|p, q| {
                        (w - **p)
                            .norm()
                            .partial_cmp(&(w - **q).norm())
                            .unwrap()
                    })
                    .unwrap()
            }
            Geometry::Comb { lambda } => {
                let spacing = 2.0 * std::f64::consts::PI / lambda;
                let offset = std::f64::consts::PI / lambda;
                let j = ((w.im - offset) / spacing).round();
                let mut best = Cx::new(w.re.min(0.0), offset + spacing * j);
                for k in [j - 1.0, j, j + 1.0] {
                    let p = Cx::new(w.re.min(0.0), offset + spacing * k);
                    if (w - p).norm() < (w - best).norm() {
                        best = p;
                    }
                }
                best
            }
        }
    }

    /// Length of the component of `{ Re w = x }` intersected with the domain
    /// that contains height `y_ref` (infinite sections return infinity).
    pub fn cross_section_width(&self, x: f64, y_ref: f64) -> f64 {
        match *self {
            Geometry::UpperHalfPlane | Geometry::SlitPlane { .. } | Geometry::Sector { .. } => {
                f64::INFINITY
            }
            Geometry::Strip { width } => width,
            Geometry::SlitHalfplane => {
                if x.abs() > 0.0 || y_ref > 1.0 {
                    f64::INFINITY
                } else {
                    1.0
                }
            }
            Geometry::SlitStrip => {
                if x > 0.0 {
                    std::f64::consts::PI
                } else {
                    std::f64::consts::FRAC_PI_2
                }
            }
            Geometry::Comb { lambda } => {
                if x > 0.0 {
                    f64::INFINITY
                } else {
                    2.0 * std::f64::consts::PI / lambda
                }
            }
        }
    }

    /// Vertical gap between the boundary components above and below a
    /// hyperbolic petal strip, measured on the line `{ Re w = x }`
    /// (infinite when the line misses one of them).
    pub fn petal_gap_width(&self, x: f64) -> f64 {
        match *self {
            Geometry::Strip { width } => width,
            Geometry::SlitStrip => {
                if x <= 0.0 {
                    std::f64::consts::FRAC_PI_2
                } else {
                    std::f64::consts::PI
                }
            }
            Geometry::Comb { lambda } => {
                if x <= 0.0 {
                    2.0 * std::f64::consts::PI / lambda
                } else {
                    f64::INFINITY
                }
            }
            _ => f64::INFINITY,
        }
    }

    /// Width of the smallest horizontal strip containing the domain.
    pub fn minimal_strip_width(&self) -> Option<f64> {
        match *self {
            Geometry::Strip { width } => Some(width),
            Geometry::SlitStrip => Some(std::f64::consts::PI),
            _ => None,
        }
    }

    /// Whether the domain fits inside some horizontal half-plane.
    pub fn in_horizontal_halfplane(&self) -> bool {
        matches!(
            self,
            Geometry::UpperHalfPlane
                | Geometry::Strip { .. }
                | Geometry::SlitHalfplane
                | Geometry::SlitStrip
        )
    }

    /// Discretized-boundary oracle for `delta`, used by tests.
    pub fn brute_force_delta(&self, w: Cx, samples: usize) -> f64 {
        // Sample each boundary piece within a window around w.
        let reach = 4.0 * (w.norm() + 2.0);
        let mut best = f64::INFINITY;
        let mut scan = |a: Cx, b: Cx| {
            let n = samples.max(2);
            for k in 0..=n {
                let p = a + (b - a) * (k as f64 / n as f64);
                best = best.min((w - p).norm());
            }
        };
        match *self {
            Geometry::UpperHalfPlane => scan(Cx::new(w.re - reach, 0.0), Cx::new(w.re + reach, 0.0)),
            Geometry::Strip { width } => {
                scan(Cx::new(w.re - reach, 0.0), Cx::new(w.re + reach, 0.0));
                scan(Cx::new(w.re - reach, width), Cx::new(w.re + reach, width));
            }
            Geometry::SlitPlane { end } => {
                scan(Cx::new(end - reach, 0.0), Cx::new(end, 0.0));
            }
            Geometry::Sector { theta } => {
                scan(Cx::new(-reach, 0.0), Cx::new(0.0, 0.0));
                scan(Cx::new(0.0, 0.0), Cx::from_polar(reach, -theta));
            }
            Geometry::SlitHalfplane => {
                scan(Cx::new(w.re - reach, 0.0), Cx::new(w.re + reach, 0.0));
                scan(Cx::new(0.0, 0.0), Cx::new(0.0, 1.0));
            }
            Geometry::SlitStrip => {
                let pi = std::f64::consts::PI;
                scan(Cx::new(w.re - reach, 0.0), Cx::new(w.re + reach, 0.0));
                scan(Cx::new(w.re - reach, pi), Cx::new(w.re + reach, pi));
                scan(Cx::new(-reach, pi / 2.0), Cx::new(0.0, pi / 2.0));
            }
            Geometry::Comb { lambda } => {
                let spacing = 2.0 * std::f64::consts::PI / lambda;
                let offset = std::f64::consts::PI / lambda;
                let j = ((w.im - offset) / spacing).round();
                for k in [j - 1.0, j, j + 1.0] {
                    let level = offset + spacing * k;
                    scan(Cx::new(-reach, level), Cx::new(0.0, level));
                }
            }
        }
        best
    }
}
