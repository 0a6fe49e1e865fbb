//! Orbit sampling and cancellation-safe distances to landing points.
//!
//! Subtracting the landing point from a computed orbit point loses all
//! precision once the orbit is within machine epsilon of it, and the raw
//! Koenigs chains overflow for exponentially large `h`-values. The
//! `forward_dist`/`backward_dist` evaluators below use per-kind closed forms
//! that stay exact for arbitrarily large times.

use super::chain::{sqrt_branch, Prim, SqrtBranch};
use super::model::{sqrt_right, Kind, SemigroupModel};
use super::SgError;
use crate::geom::Cx;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

impl std::fmt::Display for Direction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Direction::Forward => f.write_str("forward"),
            Direction::Backward => f.write_str("backward"),
        }
    }
}

/// A sampled orbit with its landing point and stable landing distances.
#[derive(Debug, Clone)]
pub struct OrbitSeries {
    pub direction: Direction,
    pub start: Cx,
    pub times: Vec<f64>,
    pub points: Vec<Cx>,
    /// `|point - landing|` evaluated by the cancellation-safe closed forms.
    pub dists: Vec<f64>,
    pub landing: Cx,
    pub escape_time: f64,
}

fn cayley(z: Cx) -> Result<Cx, SgError> {
    let den = Cx::new(1.0, 0.0) - z;
    if den.norm() == 0.0 {
        return Err(SgError::Branch("Cayley transform pole at z = 1".into()));
    }
    Ok((Cx::new(1.0, 0.0) + z) / den)
}

/// `2 / |1 - i u|`, the disk distance to 1 of the Cayley pullback of `-i u`.
fn two_over_one_minus_iu(u: Cx) -> f64 {
    2.0 / (Cx::new(1.0, 0.0) - Cx::new(0.0, 1.0) * u).norm()
}

impl SemigroupModel {
    /// Stable `|phi_t(z) - tau|`.
    pub fn forward_dist(&self, z: Cx, t: f64) -> Result<f64, SgError> {
        if !(t >= 0.0) {
            return Err(SgError::Param(format!("t must be nonnegative, got {t}")));
        }
        match self.kind() {
            Kind::HyperbolicGroup { lambda } => {
                let a = cayley(z)?;
                let x = lambda * t;
                if x > 690.0 {
                    Ok(((2.0 / a.norm()).ln() - x).exp())
                } else {
                    Ok(2.0 / (a * x.exp() + 1.0).norm())
                }
            }
            Kind::ParabolicGroup => {
                let a = cayley(z)?;
                Ok(2.0 / (a - Cx::new(0.0, t) + 1.0).norm())
            }
            Kind::Koebe => {
                let h = self.koenigs(z)?;
                Ok(2.0 / (sqrt_right(h + t)? + 1.0).norm())
            }
            Kind::Sector { theta } => {
                let h = self.koenigs(z)?;
                let beta = (std::f64::consts::PI + theta) / std::f64::consts::PI;
                let v = Cx::from_polar(1.0, theta) * (h + t);
                let u = Prim::PowSector { beta }.eval_inv(v)?;
                Ok(two_over_one_minus_iu(u))
            }
            Kind::SlitHalfplane => {
                let w = self.koenigs(z)? + t;
                let u = sqrt_branch(w * w + 1.0, SqrtBranch::UpperHalf)?;
                Ok(two_over_one_minus_iu(u))
            }
            Kind::SlitStrip => {
                let w = self.koenigs(z)? + t;
                if w.re > 30.0 {
                    // u = e^w k with k = sqrt(1 + e^{-2w}); factor out e^w.
                    let q = (-w).exp();
                    let k = (Cx::new(1.0, 0.0) + (w * -2.0).exp()).sqrt();
                    let denom = (k * (q / k - Cx::new(0.0, 1.0))).norm();
                    Ok(2.0 * (-w.re).exp() / denom)
                } else {
                    let v = w.exp();
                    let u = sqrt_branch(v * v + 1.0, SqrtBranch::UpperHalf)?;
                    Ok(two_over_one_minus_iu(u))
                }
            }
            Kind::EllipticExplicit { lambda } => {
                let w = self.koenigs(z)? * (-lambda * t).exp();
                let s = sqrt_right(w + 1.0)?;
                let d = (s + 1.0).norm();
                Ok(w.norm() / (d * d))
            }
        }
    }

    /// Stable `|backward(z, t) - sigma|` for `z` in a petal.
    pub fn backward_dist(&self, z: Cx, t: f64) -> Result<f64, SgError> {
        if !(t >= 0.0) {
            return Err(SgError::Param(format!("t must be nonnegative, got {t}")));
        }
        let petal = self.petal_for(z)?;
        let sigma = petal.sigma;
        match self.kind() {
            Kind::HyperbolicGroup { lambda } => {
                // sigma = -1; gamma + 1 = 2q/(q+1), q = C(z) e^{-lambda t}.
                let a = cayley(z)?;
                let x = lambda * t;
                if x > 690.0 {
                    Ok(((2.0 * a.norm()).ln() - x).exp())
                } else {
                    let q = a * (-x).exp();
                    Ok(2.0 * q.norm() / (q + 1.0).norm())
                }
            }
            Kind::ParabolicGroup => {
                let a = cayley(z)?;
                Ok(2.0 / (a + Cx::new(0.0, t) + 1.0).norm())
            }
            Kind::Koebe => {
                let h = self.koenigs(z)?;
                Ok(2.0 / (sqrt_right(h - t)? + 1.0).norm())
            }
            Kind::Sector { theta } => {
                let h = self.koenigs(z)?;
                let beta = (std::f64::consts::PI + theta) / std::f64::consts::PI;
                let v = Cx::from_polar(1.0, theta) * (h - t);
                let u = Prim::PowSector { beta }.eval_inv(v)?;
                Ok(two_over_one_minus_iu(u))
            }
            Kind::SlitHalfplane => {
                let w = self.koenigs(z)? - t;
                let u = sqrt_branch(w * w + 1.0, SqrtBranch::UpperHalf)?;
                Ok(two_over_one_minus_iu(u))
            }
            Kind::SlitStrip => {
                // gamma - sigma in terms of eta = sqrt(1 + e^{2(h-t)}) - 1,
                // which stays exact as the exponential underflows.
                let w = self.koenigs(z)? - t;
                let p = (w * 2.0).exp();
                let s = (Cx::new(1.0, 0.0) + p).sqrt();
                let eta = p / (s + 1.0);
                let lower_petal = sigma.im < 0.0;
                if lower_petal {
                    let c = Cx::new(1.0, -1.0);
                    Ok((eta * c).norm() / (c - Cx::new(0.0, 1.0) * eta).norm())
                } else {
                    let c = Cx::new(1.0, 1.0);
                    Ok((eta * c).norm() / (c + Cx::new(0.0, 1.0) * eta).norm())
                }
            }
            Kind::EllipticExplicit { lambda } => {
                let big = self.koenigs(z)? * (lambda * t).exp();
                let s = sqrt_right(big + 1.0)?;
                Ok(2.0 / (s + 1.0).norm())
            }
        }
    }

    /// Samples an orbit on an ascending time grid and confirms the landing
    /// point from the petal/Denjoy-Wolff metadata by a decreasing-distance
    /// check on the tail.
    pub fn orbit_sample(
        &self,
        z: Cx,
        times: &[f64],
        direction: Direction,
    ) -> Result<OrbitSeries, SgError> {
        if times.is_empty() {
            return Err(SgError::Param("empty time grid".into()));
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(SgError::Param("time grid must be strictly ascending".into()));
        }
        let escape_time = self.escape_time(z)?;
        let landing = match direction {
            Direction::Forward => self.tau(),
            Direction::Backward => {
                let last = *times.last().unwrap();
                if last >= escape_time {
                    return Err(SgError::Escape {
                        t: last,
                        escape: escape_time,
                    });
                }
                self.petal_for(z)?.sigma
            }
        };
        let mut points = Vec::with_capacity(times.len());
        let mut dists = Vec::with_capacity(times.len());
        for &t in times {
            let (p, d) = match direction {
                Direction::Forward => (self.phi(z, t)?, self.forward_dist(z, t)?),
                Direction::Backward => (self.backward(z, t)?, self.backward_dist(z, t)?),
            };
            points.push(p);
            dists.push(d);
        }
        // The metadata landing point is exact; the samples only confirm it.
        let tail = dists.len().saturating_sub(4);
        for w in dists[tail..].windows(2) {
            if w[1] > w[0] * (1.0 + 1e-9) {
                return Err(SgError::Landing(format!(
                    "distance to {landing} not decreasing on the tail ({} -> {})",
                    w[0], w[1]
                )));
            }
        }
        Ok(OrbitSeries {
            direction,
            start: z,
            times: times.to_vec(),
            points,
            dists,
            landing,
            escape_time,
        })
    }
}

/// Log-spaced grid helper shared by tests and the CLI.
pub fn log_grid(t_min: f64, t_max: f64, count: usize) -> Vec<f64> {
    assert!(t_min > 0.0 && t_max > t_min && count >= 2);
    let (a, b) = (t_min.ln(), t_max.ln());
    (0..count)
        .map(|k| (a + (b - a) * k as f64 / (count - 1) as f64).exp())
        .collect()
}

/// Linear grid helper.
pub fn linear_grid(t_min: f64, t_max: f64, count: usize) -> Vec<f64> {
    assert!(t_max > t_min && count >= 2);
    (0..count)
        .map(|k| t_min + (t_max - t_min) * k as f64 / (count - 1) as f64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::model::default_catalog;
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cx(re: f64, im: f64) -> Cx {
        Cx::new(re, im)
    }

    fn random_disk_point(rng: &mut ChaCha8Rng, rmax: f64) -> Cx {
        let r = rmax * rng.gen::<f64>().sqrt();
        let a = rng.gen::<f64>() * std::f64::consts::TAU;
        Cx::from_polar(r, a)
    }

    #[test]
    fn semigroup_law_and_koenigs_residual() {
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        for m in default_catalog() {
            for _ in 0..100 {
                let z = random_disk_point(&mut rng, 0.85);
                let s = rng.gen_range(0.0..10.0);
                let t = rng.gen_range(0.0..10.0);
                let a = m.phi(m.phi(z, s).unwrap(), t).unwrap();
                let b = m.phi(z, s + t).unwrap();
                assert!((a - b).norm() < 1e-9, "{} z={z} s={s} t={t}", m.id());
                assert!(a.norm() < 1.0);

                let h = m.koenigs(z).unwrap();
                let hp = m.koenigs(b).unwrap();
                // Representing the orbit point as an f64 disk point floors
                // the achievable residual at |h'(b)| * eps; only hyperbolic
                // entries with orbit points ~e^{-lambda(s+t)} from the
                // boundary ever exceed the 1e-9 target.
                let (_, dhb) = m.koenigs_d(b).unwrap();
                let tol = 1e-9f64.max(64.0 * f64::EPSILON * dhb.norm());
                if m.is_elliptic() {
                    let want = h * (-(m.lambda()) * (s + t)).exp();
                    assert!((hp - want).norm() < tol);
                } else {
                    assert!((hp - h - (s + t)).norm() < tol, "{}", m.id());
                }
            }
        }
    }

    #[test]
    fn forward_orbits_converge_to_denjoy_wolff() {
        for m in default_catalog() {
            let z = cx(0.2, 0.3);
            let mut prev = f64::INFINITY;
            for k in 5..10 {
                let t = (2.0f64).powi(k);
                let d = m.forward_dist(z, t).unwrap();
                assert!(d < prev, "{}: not decreasing at t=2^{k}", m.id());
                prev = d;
            }
        }
    }

    #[test]
    fn stable_distances_match_generic_subtraction() {
        // In the overlap window both routes carry full precision.
        let mut rng = ChaCha8Rng::seed_from_u64(55);
        for m in default_catalog() {
            for _ in 0..25 {
                let z = random_disk_point(&mut rng, 0.8);
                let t = rng.gen_range(0.5..8.0);
                let d = m.forward_dist(z, t).unwrap();
                let generic = (m.phi(z, t).unwrap() - m.tau()).norm();
                assert!(
                    (d - generic).abs() < 1e-9 * (1.0 + generic),
                    "{} forward z={z} t={t}: {d} vs {generic}",
                    m.id()
                );
                if m.petal_for(z).is_ok() && t < m.escape_time(z).unwrap() {
                    let sigma = m.petal_for(z).unwrap().sigma;
                    let d = m.backward_dist(z, t).unwrap();
                    let generic = (m.backward(z, t).unwrap() - sigma).norm();
                    assert!(
                        (d - generic).abs() < 1e-9 * (1.0 + generic),
                        "{} backward z={z} t={t}: {d} vs {generic}",
                        m.id()
                    );
                }
            }
        }
    }

    #[test]
    fn forward_dist_survives_huge_times() {
        for m in default_catalog() {
            let d = m.forward_dist(cx(0.1, 0.2), 1e4).unwrap();
            assert!(d.is_finite() && d >= 0.0, "{}", m.id());
        }
        // Slit strip decays like e^{-t}; check the asymptotic branch agrees
        // with the direct one at the switch point.
        let ss = default_catalog().remove(5);
        assert_eq!(ss.id(), "slit-strip");
        let z = cx(0.3, 0.2);
        let d1 = ss.forward_dist(z, 29.0).unwrap();
        let d2 = ss.forward_dist(z, 31.0).unwrap();
        let ratio = d1 / d2;
        assert!((ratio.ln() - 2.0).abs() < 1e-3, "ratio {ratio}");
    }

    #[test]
    fn backward_landing_points() {
        let koebe = default_catalog().remove(2);
        assert_eq!(koebe.id(), "koebe");
        let series = koebe
            .orbit_sample(
                cx(0.0, 0.4),
                &log_grid(1.0, 1e6, 24),
                Direction::Backward,
            )
            .unwrap();
        assert_eq!(series.landing, cx(1.0, 0.0));
        assert!(series.dists.last().unwrap() < &1e-2);

        let ss = default_catalog().remove(5);
        let z = ss.koenigs_inv(cx(0.4, 0.8)).unwrap(); // lower petal
        let series = ss
            .orbit_sample(z, &log_grid(1.0, 50.0, 16), Direction::Backward)
            .unwrap();
        assert_eq!(series.landing, cx(0.0, -1.0));

        let upper = ss.koenigs_inv(cx(0.4, 2.4)).unwrap();
        assert_eq!(ss.petal_for(upper).unwrap().sigma, cx(0.0, 1.0));
    }

    #[test]
    fn slit_strip_backward_dist_tracks_exponential_decay() {
        let ss = default_catalog().remove(5);
        let z = ss.koenigs_inv(cx(0.3, 0.7)).unwrap();
        // Beyond t ~ 18 the naive subtraction collapses to zero; the stable
        // form must keep the e^{-2t} law all the way down.
        let d30 = ss.backward_dist(z, 30.0).unwrap();
        let d50 = ss.backward_dist(z, 50.0).unwrap();
        assert!(d50 > 0.0);
        let slope = (d50.ln() - d30.ln()) / 20.0;
        assert!((slope + 2.0).abs() < 1e-6, "slope {slope}");
    }

    #[test]
    fn orbit_sample_rejects_escaping_grids() {
        let koebe = default_catalog().remove(2);
        let r = koebe.orbit_sample(cx(0.0, 0.0), &[0.5, 2.0], Direction::Backward);
        assert!(matches!(r, Err(SgError::Escape { .. })));
    }
}
