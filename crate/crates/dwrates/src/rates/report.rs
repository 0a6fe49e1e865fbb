//! Pointwise bound verification against computed orbits.

use super::bounds::{
    backward_bounds, elliptic_backward_bounds, elliptic_bounds, forward_lower, forward_upper,
    Constants,
};
use super::RateError;
use crate::geom::Cx;
use crate::par::{default_workers, map_indexed};
use crate::semigroups::{Direction, SemigroupModel};

/// Comparison slack for the ok flags.
pub const OK_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundRow {
    pub t: f64,
    pub measured: f64,
    pub lower: f64,
    pub upper: f64,
    pub ok_lower: bool,
    pub ok_upper: bool,
}

/// Per-orbit verification report: measured distances against the
/// lower/upper bounds, with every constant used recorded.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub semigroup: String,
    pub z: Cx,
    pub direction: Direction,
    pub epsilon: f64,
    pub shift: Cx,
    pub rows: Vec<BoundRow>,
    pub constants: Constants,
    pub pass: bool,
}

impl BoundReport {
    /// CSV rows `t,measured,lower,upper,ok_lower,ok_upper` with 17
    /// significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,measured,lower,upper,ok_lower,ok_upper\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{:.16e},{:.16e},{:.16e},{:.16e},{},{}\n",
                r.t, r.measured, r.lower, r.upper, r.ok_lower, r.ok_upper
            ));
        }
        out
    }

    /// Times of the rows that violated a bound.
    pub fn failures(&self) -> Vec<f64> {
        self.rows
            .iter()
            .filter(|r| !(r.ok_lower && r.ok_upper))
            .map(|r| r.t)
            .collect()
    }
}

fn make_row(t: f64, measured: f64, lower: f64, upper: f64) -> BoundRow {
    BoundRow {
        t,
        measured,
        lower,
        upper,
        ok_lower: measured >= lower - OK_SLACK,
        ok_upper: measured <= upper + OK_SLACK,
    }
}

/// Verifies the applicable theorem bounds along a time grid; rows are
/// independent and evaluated in parallel, assembled in time order.
pub fn verify_orbit_bounds(
    m: &SemigroupModel,
    z: Cx,
    direction: Direction,
    epsilon: f64,
    times: &[f64],
) -> Result<BoundReport, RateError> {
    verify_orbit_bounds_with_workers(m, z, direction, epsilon, times, default_workers())
}

pub fn verify_orbit_bounds_with_workers(
    m: &SemigroupModel,
    z: Cx,
    direction: Direction,
    epsilon: f64,
    times: &[f64],
    workers: usize,
) -> Result<BoundReport, RateError> {
    if times.is_empty() {
        return Err(RateError::Param("empty time grid".into()));
    }
    if epsilon < 0.0 {
        return Err(RateError::Epsilon(format!("epsilon must be >= 0, got {epsilon}")));
    }

    let mut constants = Constants::new();
    // Per-row bound evaluators, reduced to scalar closures up front.
    let (lower_fn, upper_fn): (Box<dyn Fn(f64) -> f64 + Sync>, Box<dyn Fn(f64) -> f64 + Sync>) =
        match (direction, m.is_elliptic()) {
            (Direction::Forward, false) => {
                let lower: Box<dyn Fn(f64) -> f64 + Sync> = if epsilon > 0.0 {
                    let (_, consts) = forward_lower(m, z, epsilon, times[0])?;
                    let log_c = consts["log_c"];
                    let rate = m.lambda() + epsilon;
                    constants = consts;
                    Box::new(move |t| (log_c - rate * t).exp())
                } else {
                    Box::new(|_| 0.0)
                };
                let mc = m.clone();
                let upper = Box::new(move |t| forward_upper(&mc, z, t).unwrap_or(f64::INFINITY));
                (lower, upper)
            }
            (Direction::Forward, true) => {
                let mc = m.clone();
                let mc2 = m.clone();
                (
                    Box::new(move |t| elliptic_bounds(&mc, z, t).map(|b| b.0).unwrap_or(0.0)),
                    Box::new(move |t| {
                        elliptic_bounds(&mc2, z, t).map(|b| b.1).unwrap_or(f64::INFINITY)
                    }),
                )
            }
            (Direction::Backward, false) => {
                let petal = m.petal_for(z)?.clone();
                let (_, _, consts) = backward_bounds(m, z, &petal, epsilon, times[0].max(1.5))?;
                constants = consts;
                let mc = m.clone();
                let mc2 = m.clone();
                let p2 = petal.clone();
                (
                    Box::new(move |t| {
                        backward_bounds(&mc, z, &petal, epsilon, t).map(|b| b.0).unwrap_or(0.0)
                    }),
                    Box::new(move |t| {
                        backward_bounds(&mc2, z, &p2, epsilon, t)
                            .map(|b| b.1)
                            .unwrap_or(f64::INFINITY)
                    }),
                )
            }
            (Direction::Backward, true) => {
                let data = elliptic_backward_bounds(m, z, epsilon)?;
                constants = data.constants.clone();
                let d2 = data.clone();
                (
                    Box::new(move |t| data.eval(t).0),
                    Box::new(move |t| d2.eval(t).1),
                )
            }
        };

    let rows: Vec<Result<BoundRow, RateError>> = map_indexed(times.len(), workers, |i| {
        let t = times[i];
        let measured = match direction {
            Direction::Forward => m.forward_dist(z, t)?,
            Direction::Backward => m.backward_dist(z, t)?,
        };
        Ok(make_row(t, measured, lower_fn(t), upper_fn(t)))
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>, _>>()?;
    let pass = rows.iter().all(|r| r.ok_lower && r.ok_upper);
    Ok(BoundReport {
        semigroup: m.id(),
        z,
        direction,
        epsilon,
        shift: m.shift(),
        rows,
        constants,
        pass,
    })
}
