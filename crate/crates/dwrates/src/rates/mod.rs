//! Convergence-rate bound evaluators, orbit verification, exponent fitting,
//! and sharpness experiments.

mod bounds;
mod envelope;
mod fit;
mod report;
mod sharpness;

pub use bounds::{
    backward_bounds, elliptic_backward_bounds, elliptic_bounds, forward_lower, forward_upper,
    nonregular_upper, Constants, EllipticBackwardData, NonRegularCase,
};
pub use envelope::{envelope_forward_lower, envelope_nonregular, EnvelopeValue};
pub use fit::{rate_exponent_fit, RateFit};
pub use report::{verify_orbit_bounds, verify_orbit_bounds_with_workers, BoundReport, BoundRow};
pub use sharpness::{sharpness_suite, SharpnessId, SharpnessReport};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum RateError {
    #[error("wrong semigroup type: {0}")]
    Type(String),
    #[error("starting point is not in the required petal: {0}")]
    Petal(String),
    #[error("epsilon out of range: {0}")]
    Epsilon(String),
    #[error("geometry constraint violated: {0}")]
    Geometry(String),
    #[error("shape check failed: {0}")]
    Shape(String),
    #[error("insufficient data: {0}")]
    Data(String),
    #[error("invalid input: {0}")]
    Param(String),
    #[error(transparent)]
    Semigroup(#[from] crate::semigroups::SgError),
    #[error(transparent)]
    Geom(#[from] crate::geom::GeomError),
    #[error(transparent)]
    Hm(#[from] crate::hmeasure::HmError),
}
