//! Numerical laboratory for one-parameter semigroups of holomorphic
//! self-maps of the unit disk.
//!
//! The crate has four layers:
//!
//! * [`geom`] — complex/Möbius primitives and hyperbolic distances in the
//!   disk, the right half-plane, and the catalog Koenigs domains, together
//!   with the two-sided quasi-hyperbolic distance bounds.
//! * [`semigroups`] — the closed-form semigroup catalog: Koenigs maps and
//!   inverses with explicit branch handling, forward/backward orbit
//!   evaluation, infinitesimal generators, classification, petal metadata,
//!   and the elliptic-to-non-elliptic lifting.
//! * [`hmeasure`] — harmonic measure (exact formulas plus a walk-on-spheres
//!   Monte Carlo estimator) and extremal-length machinery (rectangle rule,
//!   serial rule, Beurling estimate, strip-module integral).
//! * [`rates`] — evaluators for the explicit convergence-rate bounds of all
//!   semigroup types and orbit directions, pointwise verification against
//!   computed orbits, empirical rate-exponent fitting, and sharpness
//!   experiments.
//!
//! Monte Carlo sample budgets and bound-report rows are data-parallel; the
//! default `parallel` feature runs them on a rayon pool, and disabling it
//! falls back to sequential loops with identical results for a fixed seed
//! and a single worker.

pub mod geom;
pub mod hmeasure;
pub mod par;
pub mod quad;
pub mod rates;
pub mod semigroups;

pub use geom::{Cx, GeomError, MoebiusMap};
pub use semigroups::{
    Classification, Direction, Kind, OrbitSeries, Petal, PetalType, SemigroupModel, SgError,
};
