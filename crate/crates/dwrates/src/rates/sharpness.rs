//! Sharpness experiments: empirical limits against their exact targets.

use super::RateError;
use crate::geom::Cx;
use crate::semigroups::{parse_id, SemigroupModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SharpnessId {
    /// `sqrt(t) |gamma_z(t) - 1| -> 2` for the Koebe backward orbit.
    KoebeBackward,
    /// `e^t |phi_t(0) - 1| -> 2` for the hyperbolic group (lambda = 1).
    HyperbolicGroupLimit,
    /// `t |phi_t(0) - 1| -> 2` for the parabolic group.
    ParabolicGroupLimit,
    /// Upper-bound ratio of the elliptic entry tends to 1 as `z -> 1`
    /// along `(0, 1)`.
    EllipticNearSigma,
}

impl std::str::FromStr for SharpnessId {
    type Err = RateError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "koebe-backward" => Ok(Self::KoebeBackward),
            "hyperbolic-group-limit" => Ok(Self::HyperbolicGroupLimit),
            "parabolic-group-limit" => Ok(Self::ParabolicGroupLimit),
            "elliptic-near-sigma" => Ok(Self::EllipticNearSigma),
            other => Err(RateError::Param(format!("unknown sharpness id `{other}`"))),
        }
    }
}

impl std::fmt::Display for SharpnessId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SharpnessId::KoebeBackward => "koebe-backward",
            SharpnessId::HyperbolicGroupLimit => "hyperbolic-group-limit",
            SharpnessId::ParabolicGroupLimit => "parabolic-group-limit",
            SharpnessId::EllipticNearSigma => "elliptic-near-sigma",
        };
        f.write_str(s)
    }
}

/// Result of a sharpness experiment: the sampled quantity along its
/// parameter, the empirical limit, and the distance to the exact target.
#[derive(Debug, Clone)]
pub struct SharpnessReport {
    pub id: SharpnessId,
    /// `(parameter, value)` samples; the parameter is `t` except for the
    /// elliptic experiment, where it is `z` on `(0, 1)`.
    pub samples: Vec<(f64, f64)>,
    pub limit_estimate: f64,
    pub target: f64,
    pub error: f64,
}

/// Runs one sharpness experiment by its id.
pub fn sharpness_suite(id: SharpnessId) -> Result<SharpnessReport, RateError> {
    let (samples, target) = match id {
        SharpnessId::KoebeBackward => {
            let m = SemigroupModel::new(parse_id("koebe")?)?;
            let z = Cx::new(0.0, 0.4);
            let mut samples = Vec::new();
            for k in 0..=8 {
                let t = 10f64.powi(k);
                samples.push((t, t.sqrt() * m.backward_dist(z, t)?));
            }
            (samples, 2.0)
        }
        SharpnessId::HyperbolicGroupLimit => {
            let m = SemigroupModel::new(parse_id("hyperbolic-group:lambda=1")?)?;
            let z = Cx::new(0.0, 0.0);
            let samples = (1..=6)
                .map(|k| {
                    let t = 5.0 * k as f64;
                    Ok((t, t.exp() * m.forward_dist(z, t)?))
                })
                .collect::<Result<Vec<_>, RateError>>()?;
            (samples, 2.0)
        }
        SharpnessId::ParabolicGroupLimit => {
            let m = SemigroupModel::new(parse_id("parabolic-group")?)?;
            let z = Cx::new(0.0, 0.0);
            let samples = (0..=4)
                .map(|k| {
                    let t = 10f64.powi(k);
                    Ok((t, t * m.forward_dist(z, t)?))
                })
                .collect::<Result<Vec<_>, RateError>>()?;
            (samples, 2.0)
        }
        SharpnessId::EllipticNearSigma => {
            let m = SemigroupModel::new(parse_id("elliptic-explicit:lambda=1")?)?;
            let t = 1.0;
            let lambda = m.lambda();
            let mut samples = Vec::new();
            for k in 2..=20 {
                let x = 1.0 - (2f64).powi(-k);
                let z = Cx::new(x, 0.0);
                let measured = m.phi(z, t)?.norm();
                let envelope = x * (-lambda * (1.0 - x) / (1.0 + x) * t).exp();
                samples.push((x, measured / envelope));
            }
            (samples, 1.0)
        }
    };
    let limit_estimate = samples.last().expect("nonempty").1;
    Ok(SharpnessReport {
        id,
        error: (limit_estimate - target).abs(),
        samples,
        limit_estimate,
        target,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn koebe_backward_limit_two() {
        let rep = sharpness_suite(SharpnessId::KoebeBackward).unwrap();
        assert!(rep.error < 1e-3, "error {}", rep.error);
        // Convergent from both ends of the grid.
        assert!(rep.samples.first().unwrap().1 > 1.0);
    }

    #[test]
    fn group_limits() {
        let rep = sharpness_suite(SharpnessId::HyperbolicGroupLimit).unwrap();
        assert!(rep.error < 1e-6, "error {}", rep.error);
        let rep = sharpness_suite(SharpnessId::ParabolicGroupLimit).unwrap();
        assert!(rep.error < 1e-3, "error {}", rep.error);
    }

    #[test]
    fn elliptic_ratio_tends_to_one() {
        let rep = sharpness_suite(SharpnessId::EllipticNearSigma).unwrap();
        assert!(rep.error < 1e-4, "error {}", rep.error);
        let first = (rep.samples.first().unwrap().1 - 1.0).abs();
        assert!(rep.error < first, "ratio not improving toward z -> 1");
    }

    #[test]
    fn ids_round_trip() {
        for s in [
            "koebe-backward",
            "hyperbolic-group-limit",
            "parabolic-group-limit",
            "elliptic-near-sigma",
        ] {
            let id: SharpnessId = s.parse().unwrap();
            assert_eq!(id.to_string(), s);
        }
        assert!("nope".parse::<SharpnessId>().is_err());
    }
}
