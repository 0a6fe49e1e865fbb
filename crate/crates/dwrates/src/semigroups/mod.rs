//! The closed-form semigroup catalog.
//!
//! Each catalog entry packages a Koenigs map `h` (stored as a composition of
//! branch-checked primitives), its closed-form inverse, the Koenigs domain
//! geometry, the Denjoy-Wolff point, classification, and petal metadata.
//! Forward orbits evaluate `h^{-1}(h(z) + t)` (non-elliptic) or
//! `h^{-1}(e^{-lambda t} h(z))` (elliptic); backward orbits run the rays the
//! other way while they stay inside the domain.

mod chain;
mod domain;
mod lift;
mod model;
mod orbit;

pub use domain::{DomainDescriptor, Geometry};
pub use lift::{lift_elliptic, LiftedSemigroup};
pub use model::{
    default_catalog, parse_id, Classification, Kind, Petal, PetalType, SemigroupModel,
};
pub use orbit::{linear_grid, log_grid, Direction, OrbitSeries};

use crate::geom::Cx;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SgError {
    #[error("invalid catalog parameter: {0}")]
    Param(String),
    #[error("point outside the domain: {0}")]
    Domain(String),
    #[error("branch violation: {0}")]
    Branch(String),
    #[error("backward orbit escapes at t = {escape}, requested t = {t}")]
    Escape { t: f64, escape: f64 },
    #[error("point {0} is not contained in a petal")]
    Petal(Cx),
    #[error("landing check failed: {0}")]
    Landing(String),
    #[error(transparent)]
    Geom(#[from] crate::geom::GeomError),
}
