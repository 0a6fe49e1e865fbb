//! Walk-on-spheres Monte Carlo estimator for harmonic measure.
//!
//! Each walk jumps to a uniform point on the circle of radius
//! `delta(x)` until it enters the `eps` absorption shell, then scores 1 when
//! the nearest boundary point lies in `E` fattened by `eps`. Slit sides are
//! not distinguished: the harmonic measure of a slit counts both sides.
//!
//! Walks are batched in fixed-size chunks, each driven by its own ChaCha
//! stream derived from the seed, so results are identical for any worker
//! count (and in particular deterministic for a single worker).

use super::exact::BoundarySet;
use super::HmError;
use crate::geom::Cx;
use crate::par::{default_workers, map_indexed};
use crate::semigroups::SemigroupModel;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CHUNK: u64 = 4096;

/// Monte Carlo harmonic-measure estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HMEstimate {
    /// Mean score in `[0, 1]`.
    pub value: f64,
    /// Sample standard deviation divided by `sqrt(samples)`.
    pub stderr: f64,
    pub samples: u64,
    /// Absorption shell width.
    pub shell_eps: f64,
}

/// Domains the walker understands.
#[derive(Debug, Clone, Copy)]
pub enum WosDomain<'a> {
    Disk,
    /// Unit disk minus the radial slit `[r, 1) e^{i angle}`.
    SlitDisk { r: f64, angle: f64 },
    HalfPlane,
    /// Upper half-plane minus the horizontal ray from `from` toward `+inf`.
    HalfPlaneRay { from: Cx },
    /// A catalog Koenigs domain.
    Catalog(&'a SemigroupModel),
}

fn dist_point_segment(w: Cx, a: Cx, b: Cx) -> (f64, Cx) {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return ((w - a).norm(), a);
    }
    let t = (((w - a).re * ab.re) + ((w - a).im * ab.im)) / len2;
    let p = a + ab * t.clamp(0.0, 1.0);
    ((w - p).norm(), p)
}

impl WosDomain<'_> {
    fn delta(&self, w: Cx) -> f64 {
        match self {
            WosDomain::Disk => 1.0 - w.norm(),
            WosDomain::SlitDisk { r, angle } => {
                let (d, _) =
                    dist_point_segment(w, Cx::from_polar(*r, *angle), Cx::from_polar(1.0, *angle));
                (1.0 - w.norm()).min(d)
            }
            WosDomain::HalfPlane => w.im,
            WosDomain::HalfPlaneRay { from } => {
                let v = w - from;
                let ray = if v.re >= 0.0 { v.im.abs() } else { v.norm() };
                w.im.min(ray)
            }
            WosDomain::Catalog(m) => m.domain().delta(w),
        }
    }

    fn nearest_boundary(&self, w: Cx) -> Cx {
        match self {
            WosDomain::Disk => {
                if w.norm() == 0.0 {
                    Cx::new(1.0, 0.0)
                } else {
                    w / w.norm()
                }
            }
            WosDomain::SlitDisk { r, angle } => {
                let (d, p) =
                    dist_point_segment(w, Cx::from_polar(*r, *angle), Cx::from_polar(1.0, *angle));
                if 1.0 - w.norm() <= d {
                    w / w.norm()
                } else {
                    p
                }
            }
            WosDomain::HalfPlane => Cx::new(w.re, 0.0),
            WosDomain::HalfPlaneRay { from } => {
                let v = w - from;
                let on_ray = if v.re >= 0.0 {
                    Cx::new(w.re, from.im)
                } else {
                    *from
                };
                if w.im <= (w - on_ray).norm() {
                    Cx::new(w.re, 0.0)
                } else {
                    on_ray
                }
            }
            WosDomain::Catalog(m) => m.domain().nearest_boundary(w),
        }
    }
}

/// Estimator parameters. Defaults: `n = 2e5`, `eps = 1e-4`, seed 0, worker
/// count from `DWRATES_WORKERS` (1 when unset).
#[derive(Debug, Clone, Copy)]
pub struct WosParams {
    pub n: u64,
    pub eps: f64,
    pub seed: u64,
    pub max_steps: u64,
    pub workers: usize,
}

impl Default for WosParams {
    fn default() -> Self {
        Self {
            n: 200_000,
            eps: 1e-4,
            seed: 0,
            max_steps: 1_000_000,
            workers: default_workers(),
        }
    }
}

impl WosParams {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }
}

/// Walk-on-spheres estimate of `omega(z, E, domain)`.
pub fn hm_wos(
    domain: WosDomain<'_>,
    z: Cx,
    e: &BoundarySet,
    params: WosParams,
) -> Result<HMEstimate, HmError> {
    if !(params.eps > 0.0) {
        return Err(HmError::Domain(format!("eps must be positive, got {}", params.eps)));
    }
    if params.n < 2 {
        return Err(HmError::Domain("need at least 2 samples".into()));
    }
    if domain.delta(z) <= 0.0 {
        return Err(HmError::Domain(format!("start point {z} is not inside the domain")));
    }
    let chunks = params.n.div_ceil(CHUNK);
    let results: Vec<Result<u64, HmError>> = map_indexed(chunks as usize, params.workers, |c| {
        let c = c as u64;
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        rng.set_stream(c);
        let walks = CHUNK.min(params.n - c * CHUNK);
        let mut hits = 0u64;
        for _ in 0..walks {
            if walk(&domain, z, e, &params, &mut rng)? {
                hits += 1;
            }
        }
        Ok(hits)
    });
    let mut hits = 0u64;
    for r in results {
        hits += r?;
    }
    let n = params.n as f64;
    let p = hits as f64 / n;
    let stderr = (p * (1.0 - p) / (n - 1.0)).sqrt();
    Ok(HMEstimate {
        value: p,
        stderr,
        samples: params.n,
        shell_eps: params.eps,
    })
}

fn walk(
    domain: &WosDomain<'_>,
    z: Cx,
    e: &BoundarySet,
    params: &WosParams,
    rng: &mut ChaCha8Rng,
) -> Result<bool, HmError> {
    let mut x = z;
    for _ in 0..params.max_steps {
        let d = domain.delta(x);
        if d <= params.eps {
            let nb = domain.nearest_boundary(x);
            return Ok(e.dist_to(nb) <= params.eps);
        }
        let angle = rng.gen::<f64>() * std::f64::consts::TAU;
        x += Cx::from_polar(d, angle);
    }
    Err(HmError::Convergence {
        max_steps: params.max_steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hmeasure::{hm_exact, ExactDomain};

    fn quick(n: u64, seed: u64) -> WosParams {
        WosParams {
            n,
            seed,
            ..WosParams::default()
        }
    }

    #[test]
    fn whole_boundary_has_measure_one() {
        let e = BoundarySet::DiskArc {
            theta0: 0.0,
            theta1: std::f64::consts::TAU,
        };
        let est = hm_wos(WosDomain::Disk, Cx::new(0.1, 0.2), &e, quick(2000, 1)).unwrap();
        assert_eq!(est.value, 1.0);
        assert_eq!(est.stderr, 0.0);
    }

    #[test]
    fn slit_disk_agrees_with_exact() {
        let e = BoundarySet::RadialSlit {
            r: 1.0 / 3.0,
            angle: 0.0,
        };
        let est = hm_wos(WosDomain::SlitDisk { r: 1.0 / 3.0, angle: 0.0 },
            Cx::new(0.0, 0.0), &e, quick(40_000, 7)).unwrap();
        let exact = hm_exact(ExactDomain::Disk, Cx::new(0.0, 0.0), &e).unwrap();
        assert!(
            (est.value - exact).abs() < (4.0 * est.stderr).max(0.01),
            "wos {} vs exact {exact} (stderr {})",
            est.value,
            est.stderr
        );
    }

    #[test]
    fn deterministic_for_fixed_seed_any_worker_count() {
        let e = BoundarySet::RadialSlit { r: 0.5, angle: 0.0 };
        let d = WosDomain::SlitDisk { r: 0.5, angle: 0.0 };
        let mut p1 = quick(20_000, 42);
        p1.workers = 1;
        let mut p4 = quick(20_000, 42);
        p4.workers = 4;
        let a = hm_wos(d, Cx::new(0.0, 0.0), &e, p1).unwrap();
        let b = hm_wos(d, Cx::new(0.0, 0.0), &e, p4).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
    }

    #[test]
    fn rejects_outside_start_and_bad_eps() {
        let e = BoundarySet::DiskArc { theta0: 0.0, theta1: 1.0 };
        assert!(hm_wos(WosDomain::Disk, Cx::new(2.0, 0.0), &e, quick(100, 0)).is_err());
        let mut p = quick(100, 0);
        p.eps = 0.0;
        assert!(hm_wos(WosDomain::Disk, Cx::new(0.0, 0.0), &e, p).is_err());
    }
}
