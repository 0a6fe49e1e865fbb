//! Empirical rate-exponent fitting.

use super::RateError;
use crate::semigroups::OrbitSeries;

/// Result of a rate-exponent fit: the endpoint estimate
/// `log|gamma(t_max) - landing| / t_max`, the slope of `log dist` over the
/// last four samples, and a divergence flag for slopes that keep falling
/// (super-repelling landings decay faster than every exponential).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateFit {
    pub exponent: f64,
    pub tail_slope: f64,
    pub diverging: bool,
}

fn slope(ts: &[f64], logs: &[f64]) -> f64 {
    let n = ts.len() as f64;
    let mt = ts.iter().sum::<f64>() / n;
    let ml = logs.iter().sum::<f64>() / n;
    let num: f64 = ts.iter().zip(logs).map(|(t, l)| (t - mt) * (l - ml)).sum();
    let den: f64 = ts.iter().map(|t| (t - mt) * (t - mt)).sum();
    num / den
}

/// Fits the empirical convergence exponent of a sampled orbit. Needs at
/// least 8 samples reaching `t_max >= 50`.
pub fn rate_exponent_fit(series: &OrbitSeries) -> Result<RateFit, RateError> {
    let n = series.times.len();
    if n < 8 {
        return Err(RateError::Data(format!("need at least 8 samples, got {n}")));
    }
    let t_max = *series.times.last().unwrap();
    if t_max < 50.0 {
        return Err(RateError::Data(format!("need t_max >= 50, got {t_max}")));
    }
    let d_last = *series.dists.last().unwrap();
    if !(d_last > 0.0) {
        return Err(RateError::Data(
            "distance underflowed to zero at t_max; shorten the grid".into(),
        ));
    }
    let logs: Vec<f64> = series.dists.iter().map(|d| d.max(f64::MIN_POSITIVE).ln()).collect();
    let exponent = logs[n - 1] / t_max;
    let tail_slope = slope(&series.times[n - 4..], &logs[n - 4..]);
    let prev_slope = slope(&series.times[n - 8..n - 4], &logs[n - 8..n - 4]);
    let diverging = tail_slope < prev_slope - 0.5;
    Ok(RateFit {
        exponent,
        tail_slope,
        diverging,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroups::{log_grid, parse_id, Direction, SemigroupModel};
    use crate::Cx;

    fn model(id: &str) -> SemigroupModel {
        SemigroupModel::new(parse_id(id).unwrap()).unwrap()
    }

    #[test]
    fn elliptic_forward_exponent_is_minus_re_lambda() {
        let m = model("elliptic-explicit:lambda=1");
        let series = m
            .orbit_sample(Cx::new(0.5, 0.0), &log_grid(1.0, 200.0, 32), Direction::Forward)
            .unwrap();
        let fit = rate_exponent_fit(&series).unwrap();
        assert!((fit.exponent + 1.0).abs() < 0.05, "exponent {}", fit.exponent);
        assert!((fit.tail_slope + 1.0).abs() < 0.01);
        assert!(!fit.diverging);
    }

    #[test]
    fn koebe_backward_exponent_vanishes() {
        let m = model("koebe");
        let series = m
            .orbit_sample(Cx::new(0.0, 0.4), &log_grid(1.0, 1e6, 32), Direction::Backward)
            .unwrap();
        let fit = rate_exponent_fit(&series).unwrap();
        assert!(fit.exponent.abs() < 0.01, "exponent {}", fit.exponent);
    }

    #[test]
    fn hyperbolic_group_exponent() {
        let m = model("hyperbolic-group:lambda=1");
        let series = m
            .orbit_sample(Cx::new(0.0, 0.0), &log_grid(1.0, 200.0, 32), Direction::Forward)
            .unwrap();
        let fit = rate_exponent_fit(&series).unwrap();
        assert!((fit.exponent + 1.0).abs() < 0.01, "exponent {}", fit.exponent);
    }

    #[test]
    fn short_series_is_rejected() {
        let m = model("koebe");
        let series = m
            .orbit_sample(Cx::new(0.0, 0.0), &log_grid(0.1, 100.0, 4), Direction::Forward)
            .unwrap();
        assert!(matches!(rate_exponent_fit(&series), Err(RateError::Data(_))));
        let series = m
            .orbit_sample(Cx::new(0.0, 0.0), &log_grid(0.1, 20.0, 16), Direction::Forward)
            .unwrap();
        assert!(matches!(rate_exponent_fit(&series), Err(RateError::Data(_))));
    }

    #[test]
    fn superexponential_decay_is_flagged() {
        // Synthetic series with log dist = -t^2 / 20.
        let times: Vec<f64> = (1..=12).map(|k| 10.0 * k as f64).collect();
        let dists: Vec<f64> = times.iter().map(|t| (-t * t / 20.0).exp()).collect();
        let series = crate::semigroups::OrbitSeries {
            direction: Direction::Backward,
            start: Cx::new(0.0, 0.0),
            points: vec![Cx::new(0.0, 0.0); times.len()],
            dists,
            times,
            landing: Cx::new(1.0, 0.0),
            escape_time: f64::INFINITY,
        };
        let fit = rate_exponent_fit(&series).unwrap();
        assert!(fit.diverging);
    }
}
