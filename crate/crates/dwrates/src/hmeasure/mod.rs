//! Harmonic measure and extremal length.
//!
//! Exact formulas cover the three configurations used by the rate proofs
//! (slit disk, half-plane boundary ray, disk arc); everything else goes
//! through the walk-on-spheres Monte Carlo estimator. The extremal-length
//! side carries the rectangle rule, the serial rule, the Beurling estimate,
//! and the strip-module integral.

mod exact;
mod extremal;
mod wos;

pub use exact::{arc_of_diameter, diameter_lower_bound, hm_exact, BoundarySet, ExactDomain};
pub use extremal::{beurling_upper, extremal_rectangle, serial_lower_bound, strip_module};
pub use wos::{hm_wos, HMEstimate, WosDomain, WosParams};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HmError {
    #[error("no exact formula for this (domain, boundary set) pair: {0}")]
    UnsupportedConfig(String),
    #[error("invalid input: {0}")]
    Domain(String),
    #[error("walk exceeded {max_steps} steps without reaching the absorption shell")]
    Convergence { max_steps: u64 },
}
